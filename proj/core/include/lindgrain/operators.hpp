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

// Fixed single-qubit operators and superoperator builders.
//
// Qubit basis order is (e, g): sigma_z = diag(1, -1), sigma_plus = |e><g|.
// Superoperators act on column-stacked vec(rho).

#include "lindgrain/linalg.hpp"

namespace lindgrain::ops {

ComplexMatrix identity(Eigen::Index d);
ComplexMatrix sigma_plus();
ComplexMatrix sigma_minus();
ComplexMatrix sigma_x();
ComplexMatrix sigma_z();

/// |a><b| for basis vectors given as columns.
ComplexMatrix outer(const ComplexVector& a, const ComplexVector& b);

/// rho -> A rho
ComplexMatrix spre(const ComplexMatrix& a);
/// rho -> rho B
ComplexMatrix spost(const ComplexMatrix& b);
/// rho -> A rho B
ComplexMatrix sandwich(const ComplexMatrix& a, const ComplexMatrix& b);
/// rho -> -i [H, rho]
ComplexMatrix commutator_generator(const ComplexMatrix& h);
/// rho -> A rho B - 1/2 {C, rho}
ComplexMatrix sandwich_minus_anticommutator(const ComplexMatrix& a, const ComplexMatrix& b,
                                            const ComplexMatrix& c);
/// rho -> rate (A rho A^dag - 1/2 {A^dag A, rho})
ComplexMatrix lindblad_term(double rate, const ComplexMatrix& a);

/// Apply a superoperator matrix to rho.
ComplexMatrix apply(const ComplexMatrix& super, const ComplexMatrix& rho);

/// Partial traces of a bipartite operator on dims (d1, d2).
ComplexMatrix trace_out_second(const ComplexMatrix& m, Eigen::Index d1, Eigen::Index d2);
ComplexMatrix trace_out_first(const ComplexMatrix& m, Eigen::Index d1, Eigen::Index d2);

}  // namespace lindgrain::ops
