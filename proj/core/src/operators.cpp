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

#include "lindgrain/operators.hpp"

#include "lindgrain/error.hpp"

namespace lindgrain::ops {

ComplexMatrix identity(Eigen::Index d) { return ComplexMatrix::Identity(d, d); }

ComplexMatrix sigma_plus() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

ComplexMatrix sigma_minus() { return sigma_plus().adjoint(); }

ComplexMatrix sigma_x() { return sigma_plus() + sigma_minus(); }

ComplexMatrix sigma_z() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

ComplexMatrix outer(const ComplexVector& a, const ComplexVector& b) { return a * b.adjoint(); }

ComplexMatrix spre(const ComplexMatrix& a) { return kron(identity(a.rows()), a); }

ComplexMatrix spost(const ComplexMatrix& b) { return kron(b.transpose(), identity(b.rows())); }

ComplexMatrix sandwich(const ComplexMatrix& a, const ComplexMatrix& b) {
  return kron(b.transpose(), a);
}

ComplexMatrix commutator_generator(const ComplexMatrix& h) {
  return -kI * (spre(h) - spost(h));
}

ComplexMatrix sandwich_minus_anticommutator(const ComplexMatrix& a, const ComplexMatrix& b,
                                            const ComplexMatrix& c) {
  return sandwich(a, b) - 0.5 * (spre(c) + spost(c));
}

ComplexMatrix lindblad_term(double rate, const ComplexMatrix& a) {
  return rate * sandwich_minus_anticommutator(a, a.adjoint(), a.adjoint() * a);
}

ComplexMatrix apply(const ComplexMatrix& super, const ComplexMatrix& rho) {
  if (super.cols() != rho.size()) throw PreconditionError("apply: dimension mismatch");
  return unvec(super * vec(rho), rho.rows());
}

ComplexMatrix trace_out_second(const ComplexMatrix& m, Eigen::Index d1, Eigen::Index d2) {
  if (m.rows() != d1 * d2 || m.cols() != d1 * d2) {
    throw PreconditionError("trace_out_second: dimension mismatch");
  }
  ComplexMatrix out = ComplexMatrix::Zero(d1, d1);
  for (Eigen::Index a = 0; a < d1; ++a)
    for (Eigen::Index b = 0; b < d1; ++b)
      for (Eigen::Index k = 0; k < d2; ++k) out(a, b) += m(a * d2 + k, b * d2 + k);
  return out;
}

ComplexMatrix trace_out_first(const ComplexMatrix& m, Eigen::Index d1, Eigen::Index d2) {
  if (m.rows() != d1 * d2 || m.cols() != d1 * d2) {
    throw PreconditionError("trace_out_first: dimension mismatch");
  }
  ComplexMatrix out = ComplexMatrix::Zero(d2, d2);
  for (Eigen::Index a = 0; a < d2; ++a)
    for (Eigen::Index b = 0; b < d2; ++b)
      for (Eigen::Index k = 0; k < d1; ++k) out(a, b) += m(k * d2 + a, k * d2 + b);
  return out;
}

}  // namespace lindgrain::ops
