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

#include "lindgrain/lindblad.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "lindgrain/error.hpp"
#include "lindgrain/operators.hpp"
#include "quadrature.hpp"

namespace lindgrain {

Superoperator Superoperator::zero(Eigen::Index d) {
  return {d, ComplexMatrix::Zero(d * d, d * d)};
}

ComplexMatrix Superoperator::apply(const ComplexMatrix& rho) const {
  if (rho.rows() != dim || rho.cols() != dim) throw PreconditionError("Superoperator::apply: dimension mismatch");
  return unvec(matrix * vec(rho), dim);
}

Superoperator Superoperator::operator+(const Superoperator& other) const {
  if (other.dim != dim) throw PreconditionError("Superoperator: dimension mismatch");
  return {dim, matrix + other.matrix};
}

Superoperator Superoperator::operator-(const Superoperator& other) const {
  if (other.dim != dim) throw PreconditionError("Superoperator: dimension mismatch");
  return {dim, matrix - other.matrix};
}

double trace_preservation_defect(const Superoperator& s) {
  const ComplexVector id = vec(ops::identity(s.dim));
  return (id.adjoint() * s.matrix).cwiseAbs().maxCoeff();
}

double hermiticity_preservation_defect(const Superoperator& s, const ComplexMatrix& rho) {
  return max_abs(s.apply(rho.adjoint()) - s.apply(rho).adjoint());
}

void SystemModel::validate() const {
  std::set<std::string> labels;
  for (const Coupling& c : couplings) {
    if (c.x.dim() != h.dim()) {
      throw PreconditionError("coupling '" + c.bath.label + "' has dimension " +
                              std::to_string(c.x.dim()) + ", H_S has " + std::to_string(h.dim()));
    }
    if (!labels.insert(c.bath.label).second) {
      throw PreconditionError("duplicate bath label '" + c.bath.label + "'");
    }
    c.bath.validate();
  }
  if (const auto* ex = std::get_if<ExactMode>(&mode); ex && !(ex->dt > 0)) {
    throw PreconditionError("exact mode needs dt > 0");
  }
  if (const auto* ps = std::get_if<PartialSecularMode>(&mode); ps && !(ps->omega_cut >= 0)) {
    throw PreconditionError("partial-secular mode needs omega_cut >= 0");
  }
  if (include_lamb_shift && !std::holds_alternative<ExactMode>(mode)) {
    throw PreconditionError("the energy shift needs a finite coarse-graining window (exact mode)");
  }
}

const Coupling& SystemModel::coupling(const std::string& label) const {
  for (const Coupling& c : couplings) {
    if (c.bath.label == label) return c;
  }
  throw PreconditionError("no reservoir labelled '" + label + "'");
}

Superoperator dissipator_from_gamma(const BohrDecomposition& d, const GammaMatrix& g) {
  if (g.indices != d.indices) throw PreconditionError("dissipator_from_gamma: gamma indices do not match decomposition");
  const Eigen::Index dim = d.dim();
  Superoperator out = Superoperator::zero(dim);
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Complex gij = g.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (gij == Complex(0.0)) continue;
      const ComplexMatrix& xm = d.operators[i];
      const ComplexMatrix xn_dag = d.operators[j].adjoint();
      out.matrix += gij * ops::sandwich_minus_anticommutator(xm, xn_dag, xn_dag * xm);
    }
  }
  return out;
}

HermitianOperator lamb_shift(const BohrDecomposition& d, const BathSpec& bath, double dt) {
  if (!bath.is_ohmic()) {
    throw UnsupportedModelError("lamb_shift: a flat spectrum has no integrable correlation function");
  }
  if (!(dt > 0.0)) throw PreconditionError("lamb_shift: dt must be > 0");
  // Delta H = -(i/2dt) sum_mn (c_mn X_m X_n - d_mn X_n X_m) with
  //   c_mn = int_0^dt G(tau) K_mn(tau) dtau,  d_mn = same with conj(G),
  //   K_mn = e^{i sum dt/2 + i (wm - wn) tau/2} (dt - tau) sinc(sum (dt - tau)/2),
  // from the double time integral over t1 < t2 of the traced commutator.
  std::vector<double> w(d.frequencies);
  std::vector<ComplexMatrix> x(d.operators);
  if (d.has_zero_frequency) {
    w.push_back(0.0);
    x.push_back(d.x0);
  }
  const double cutoff = bath.ohmic_params().cutoff;
  double fastest = 1e-300;
  for (double v : w) fastest = std::max(fastest, 2.0 * std::abs(v));
  const auto pts = detail::breakpoints(dt, 1.0 / cutoff, 4.0 * std::numbers::pi / fastest);
  // G on a shared node set would save time, but the panels are adaptive.
  ComplexMatrix dh = ComplexMatrix::Zero(d.dim(), d.dim());
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = 0; j < w.size(); ++j) {
      const double sum = w[i] + w[j];
      const double half_diff = 0.5 * (w[i] - w[j]);
      auto kernel = [&](double tau) {
        return std::exp(Complex(0.0, 0.5 * sum * dt + half_diff * tau)) * (dt - tau) *
               detail::sinc(0.5 * sum * (dt - tau));
      };
      auto part = [&](bool imag_g, bool imag_k) {
        return detail::integrate_panels(
            [&](double tau) {
              const Complex g = correlation_function(tau, bath);
              const Complex k = kernel(tau);
              return (imag_g ? g.imag() : g.real()) * (imag_k ? k.imag() : k.real());
            },
            pts, 1e-11);
      };
      const Complex ir(part(false, false), part(false, true));  // int Re G K
      const Complex ii(part(true, false), part(true, true));    // int Im G K
      const Complex c = ir + kI * ii;
      const Complex dd = ir - kI * ii;
      dh += c * (x[i] * x[j]) - dd * (x[j] * x[i]);
    }
  }
  dh *= -kI / (2.0 * dt);
  const double defect = hermiticity_defect(dh);
  if (defect > 1e-8 * std::max(1.0, max_abs(dh))) {
    throw NumericalError("lamb_shift: quadrature left a Hermiticity defect of " + std::to_string(defect));
  }
  return HermitianOperator((0.5 * (dh + dh.adjoint())).eval());
}

std::vector<ReservoirTerm> reservoir_terms(const SystemModel& model) {
  model.validate();
  std::vector<ReservoirTerm> out;
  for (const Coupling& c : model.couplings) {
    BohrDecomposition dec = bohr_decompose(model.h, c.x, model.freq_tol);
    GammaMatrix g = build_gamma_matrix(dec, c.bath, model.mode, model.gamma_options);
    Superoperator diss = dissipator_from_gamma(dec, g);
    out.push_back({c.bath.label, std::move(dec), std::move(g), std::move(diss)});
  }
  return out;
}

Superoperator assemble_liouvillian(const SystemModel& model, const std::vector<ReservoirTerm>& terms) {
  ComplexMatrix h = model.h.matrix();
  if (model.include_lamb_shift) {
    const double dt = std::get<ExactMode>(model.mode).dt;
    for (std::size_t k = 0; k < terms.size(); ++k) {
      h += lamb_shift(terms[k].decomposition, model.couplings[k].bath, dt).matrix();
    }
  }
  Superoperator l{model.dim(), ops::commutator_generator(h)};
  for (const ReservoirTerm& t : terms) l = l + t.dissipator;
  return l;
}

Superoperator assemble_liouvillian(const SystemModel& model) {
  return assemble_liouvillian(model, reservoir_terms(model));
}

CanonicalCheck lindblad_canonical_check(const Superoperator& s) {
  const double scale = std::max(1.0, max_abs(s.matrix));
  if (trace_preservation_defect(s) > 1e-8 * scale) {
    throw PreconditionError("lindblad_canonical_check: generator is not trace preserving");
  }
  const Eigen::Index d = s.dim;
  // Choi matrix C = sum_ij E_ij (x) L(E_ij), indexed (i,a),(j,b) -> C[i*d+a, j*d+b].
  ComplexMatrix choi = ComplexMatrix::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(d, d);
      e(i, j) = 1.0;
      choi.block(i * d, j * d, d, d) = s.apply(e);
    }
  }
  choi = (0.5 * (choi + choi.adjoint())).eval();
  // Unitary and anticommutator parts only touch the |Omega> direction, so
  // the Kossakowski content lives on its orthogonal complement.
  ComplexVector omega = ComplexVector::Zero(d * d);
  for (Eigen::Index i = 0; i < d; ++i) omega(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  ComplexMatrix q = ComplexMatrix::Identity(d * d, d * d) - omega * omega.adjoint();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> qe(q);
  // Eigenvalues of q are 0 (once) and 1; keep the eigenvalue-1 vectors.
  const ComplexMatrix basis = qe.eigenvectors().rightCols(d * d - 1);
  const ComplexMatrix reduced = basis.adjoint() * choi * basis;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es((0.5 * (reduced + reduced.adjoint())).eval(),
                                                  Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues()(0);
  return {lmin >= -1e-10, lmin};
}

}  // namespace lindgrain
