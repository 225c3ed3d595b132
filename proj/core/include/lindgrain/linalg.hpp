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

// Dense complex linear algebra for small open-system problems (d <= 8,
// superoperators up to 64 x 64). Everything here is pure and reentrant.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace lindgrain {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Largest absolute entry; zero for an empty matrix.
double max_abs(const ComplexMatrix& m);

/// True when every entry is finite.
bool all_finite(const ComplexMatrix& m);

/// ||M - M^dag||_max.
double hermiticity_defect(const ComplexMatrix& m);

/// Square complex matrix with M = M^dag to within 1e-12 * ||M||_max.
///
/// Construction validates the invariant and symmetrizes away the residual
/// so downstream eigen-solvers see an exactly Hermitian matrix.
class HermitianOperator {
 public:
  HermitianOperator() = default;
  explicit HermitianOperator(ComplexMatrix m);

  static constexpr double kRelativeTolerance = 1e-12;

  const ComplexMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  ComplexMatrix m_;
};

/// Tolerances used when validating a density matrix.
struct DensityTolerance {
  double trace = 1e-10;
  double positivity = 1e-10;
};

/// Hermitian, unit-trace, positive semidefinite operator.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  explicit DensityMatrix(ComplexMatrix rho, DensityTolerance tol = {});

  const ComplexMatrix& matrix() const { return rho_; }
  Eigen::Index dim() const { return rho_.rows(); }
  double min_eigenvalue() const;

 private:
  ComplexMatrix rho_;
};

struct EigenSystem {
  RealVector values;     // ascending
  ComplexMatrix vectors;  // columns are orthonormal eigenvectors
};

EigenSystem hermitian_eig(const HermitianOperator& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Orthonormal right singular vectors of `l` whose singular value is <= tol.
/// An empty result means the kernel is trivial at this tolerance.
std::vector<ComplexVector> null_space(const ComplexMatrix& l, double tol);

double psd_min_eig(const HermitianOperator& m);

/// exp(L t) v by Pade scaling-and-squaring.
ComplexVector matexp_apply(const ComplexMatrix& l, const ComplexVector& v, double t);

/// exp(L t) as a dense matrix.
ComplexMatrix matexp(const ComplexMatrix& l, double t);

/// Column-stacking vectorization: vec(A rho B) = (B^T kron A) vec(rho).
ComplexVector vec(const ComplexMatrix& rho);
ComplexMatrix unvec(const ComplexVector& v, Eigen::Index dim);

/// exp(i H t) for Hermitian H, via its eigen-decomposition.
ComplexMatrix unitary_propagator(const HermitianOperator& h, double t);

/// Spectral norm (largest singular value).
double spectral_norm(const ComplexMatrix& m);

}  // namespace lindgrain
