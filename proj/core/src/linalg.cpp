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

#include "lindgrain/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "lindgrain/error.hpp"

namespace lindgrain {

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool all_finite(const ComplexMatrix& m) { return m.allFinite(); }

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  return max_abs(m - m.adjoint());
}

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw PreconditionError(std::string(what) + ": matrix must be square and non-empty, got " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

}  // namespace

HermitianOperator::HermitianOperator(ComplexMatrix m) : m_(std::move(m)) {
  require_square(m_, "HermitianOperator");
  if (!all_finite(m_)) throw PreconditionError("HermitianOperator: non-finite entry");
  const double scale = max_abs(m_);
  const double defect = hermiticity_defect(m_);
  if (defect > kRelativeTolerance * scale) {
    throw PreconditionError("HermitianOperator: ||M - M^dag||_max = " + std::to_string(defect) +
                            " exceeds tolerance");
  }
  m_ = (0.5 * (m_ + m_.adjoint())).eval();
}

DensityMatrix::DensityMatrix(ComplexMatrix rho, DensityTolerance tol) : rho_(std::move(rho)) {
  require_square(rho_, "DensityMatrix");
  if (!all_finite(rho_)) throw PreconditionError("DensityMatrix: non-finite entry");
  const double scale = std::max(1.0, max_abs(rho_));
  if (hermiticity_defect(rho_) > 1e-10 * scale) {
    throw PreconditionError("DensityMatrix: not Hermitian");
  }
  rho_ = (0.5 * (rho_ + rho_.adjoint())).eval();
  const double tr = rho_.trace().real();
  if (std::abs(tr - 1.0) > tol.trace) {
    throw PreconditionError("DensityMatrix: trace " + std::to_string(tr) + " differs from 1");
  }
  const double lmin = min_eigenvalue();
  if (lmin < -tol.positivity) {
    throw PreconditionError("DensityMatrix: minimum eigenvalue " + std::to_string(lmin) +
                            " is negative");
  }
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho_, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

EigenSystem hermitian_eig(const HermitianOperator& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m.matrix());
  if (es.info() != Eigen::Success) throw NumericalError("hermitian_eig: solver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

std::vector<ComplexVector> null_space(const ComplexMatrix& l, double tol) {
  require_square(l, "null_space");
  Eigen::JacobiSVD<ComplexMatrix> svd(l, Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  std::vector<ComplexVector> out;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) <= tol) out.emplace_back(svd.matrixV().col(k));
  }
  return out;
}

double psd_min_eig(const HermitianOperator& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

ComplexMatrix matexp(const ComplexMatrix& l, double t) {
  require_square(l, "matexp");
  if (!all_finite(l) || !std::isfinite(t)) throw PreconditionError("matexp: non-finite input");
  if (t < 0) throw PreconditionError("matexp: t must be >= 0");
  return (l * Complex(t, 0.0)).exp();
}

ComplexVector matexp_apply(const ComplexMatrix& l, const ComplexVector& v, double t) {
  if (v.size() != l.cols()) throw PreconditionError("matexp_apply: dimension mismatch");
  if (!v.allFinite()) throw PreconditionError("matexp_apply: non-finite vector");
  return matexp(l, t) * v;
}

ComplexVector vec(const ComplexMatrix& rho) {
  return Eigen::Map<const ComplexVector>(rho.data(), rho.size());
}

ComplexMatrix unvec(const ComplexVector& v, Eigen::Index dim) {
  if (v.size() != dim * dim) throw PreconditionError("unvec: length is not dim^2");
  return Eigen::Map<const ComplexMatrix>(v.data(), dim, dim);
}

ComplexMatrix unitary_propagator(const HermitianOperator& h, double t) {
  const EigenSystem es = hermitian_eig(h);
  ComplexVector phase(es.values.size());
  for (Eigen::Index k = 0; k < phase.size(); ++k) phase(k) = std::exp(kI * es.values(k) * t);
  return es.vectors * phase.asDiagonal() * es.vectors.adjoint();
}

double spectral_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

}  // namespace lindgrain
