// Copyright 2026 The lindgrain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace lindgrain {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument violated a documented precondition (shape, sign, Hermiticity).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The requested operation is not defined for the given spectral model.
class UnsupportedModelError : public Error {
 public:
  using Error::Error;
};

/// A computation failed to meet its numerical contract (trace drift,
/// no physical steady state, quadrature failure).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace lindgrain
