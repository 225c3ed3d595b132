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

// Shared fixtures for the lindgrain tests: fixed-seed random matrices.

#include <random>

#include "lindgrain/linalg.hpp"

namespace lindgrain::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20260415ULL);
  return gen;
}

inline double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng()); }

inline ComplexMatrix random_matrix(Eigen::Index rows, Eigen::Index cols) {
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(uniform(-1, 1), uniform(-1, 1));
  }
  return m;
}

inline ComplexMatrix random_hermitian(Eigen::Index d) {
  const ComplexMatrix a = random_matrix(d, d);
  return 0.5 * (a + a.adjoint());
}

inline ComplexMatrix random_density(Eigen::Index d) {
  const ComplexMatrix a = random_matrix(d, d);
  ComplexMatrix rho = a * a.adjoint();
  return rho / rho.trace();
}

}  // namespace lindgrain::testing
