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

#include "lindgrain/models.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lindgrain/error.hpp"
#include "lindgrain/operators.hpp"

namespace lindgrain::models {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

GammaOptions flatten_at(double omega_s, bool flattened) {
  GammaOptions o;
  if (flattened) o.flatten_frequency = omega_s;
  return o;
}

}  // namespace

void TwoQubitParams::validate() const {
  require(omega_s > 0, "two-qubit: omega_s must be > 0");
  require(omega >= 0, "two-qubit: Omega must be >= 0");
  require(omega < omega_s, "two-qubit: Omega must be < omega_s");
  require(gamma_h >= 0 && gamma_c >= 0, "two-qubit: rates must be >= 0");
  require(gamma_h > 0 || gamma_c > 0, "two-qubit: at least one rate must be > 0");
  require(T_h >= 0 && T_c >= 0, "two-qubit: temperatures must be >= 0");
}

void TunnellingParams::validate() const {
  require(omega_s > 0, "tunnelling: omega_s must be > 0");
  require(omega >= 0, "tunnelling: Omega must be >= 0");
  require(gamma > 0, "tunnelling: gamma must be > 0");
  require(T_l >= 0 && T_r >= 0, "tunnelling: temperatures must be >= 0");
}

ComplexMatrix two_qubit_hamiltonian(const TwoQubitParams& p) {
  using namespace ops;
  const ComplexMatrix id = identity(2);
  return 0.5 * p.omega_s * (kron(sigma_z(), id) + kron(id, sigma_z())) +
         p.omega * (kron(sigma_plus(), sigma_minus()) + kron(sigma_minus(), sigma_plus()));
}

ComplexMatrix two_qubit_eigenbasis() {
  const double r = 1.0 / std::sqrt(2.0);
  ComplexMatrix v = ComplexMatrix::Zero(4, 4);
  // product index: ee=0, eg=1, ge=2, gg=3
  v(0, 0) = 1.0;
  v(1, 1) = r;
  v(2, 1) = r;
  v(1, 2) = r;
  v(2, 2) = -r;
  v(3, 3) = 1.0;
  return v;
}

SystemModel build_two_qubit(const TwoQubitParams& p, const CoarseGraining& mode, bool flattened) {
  p.validate();
  const ComplexMatrix id = ops::identity(2);
  SystemModel m{HermitianOperator(two_qubit_hamiltonian(p)), {}, mode, flatten_at(p.omega_s, flattened), false, std::nullopt};
  if (p.gamma_h > 0) {
    m.couplings.push_back({HermitianOperator(kron(ops::sigma_x(), id)), BathSpec::flat(p.T_h, p.gamma_h, kHot)});
  }
  if (p.gamma_c > 0) {
    m.couplings.push_back({HermitianOperator(kron(id, ops::sigma_x())), BathSpec::flat(p.T_c, p.gamma_c, kCold)});
  }
  m.validate();
  return m;
}

TwoQubitAnalytics two_qubit_analytics(const TwoQubitParams& p, bool flattened) {
  p.validate();
  TwoQubitAnalytics a;
  const double ws = p.omega_s;
  const double om = p.omega;
  if (om > ws / 5) a.warnings.push_back("Omega > omega_s/5: flattened-occupation closed forms are out of regime");

  // Single-reservoir quantities: gamma = gamma_c, T = T_c.
  if (p.gamma_h != 0) a.warnings.push_back("single-reservoir formulas assume gamma_h = 0; evaluated with gamma_c, T_c");
  const double T = p.T_c;
  const double g = p.gamma_c;
  const std::array<double, 4> energy{ws, om, -om, -ws};
  if (T > 0) {
    a.Z = 2.0 * (std::cosh(ws / T) + std::cosh(om / T));
    a.Z0 = 2.0 * (std::cosh(ws / T) + 1.0);
    double norm = 0;
    for (int k = 0; k < 4; ++k) norm += std::exp(-(energy[k] + ws) / T);
    for (int k = 0; k < 4; ++k) a.gibbs_populations[k] = std::exp(-(energy[k] + ws) / T) / norm;
  } else {
    a.Z = a.Z0 = INFINITY;
    a.gibbs_populations = {0, 0, 0, 1};
  }
  if (g > 0) {
    const double n = occupation(ws, T);
    const double np = flattened ? n : occupation(ws + om, T);
    const double nm = flattened ? n : occupation(ws - om, T);
    const double s = np + nm + 1;
    const double dd = (2 * nm + 1) * (2 * np + 1);
    const double R = 16 * om * om / (s * g * g) + s;
    a.p0 = (1 - (2 * n + 1) * s / dd) / (R - (2 * n + 1) * (2 * n + 1) * s / dd);
    a.imag_factor = -4 * om / (s * g);
    const double h = n + 0.5;
    a.steady_populations = {
        a.gibbs_populations[0] + a.p0 * (-1 / (4 * s) + h * (np + nm + 0.5) / dd),
        a.gibbs_populations[1] + a.p0 * (1 / (4 * s) + h * (nm - np + 0.5) / dd),
        a.gibbs_populations[2] + a.p0 * (1 / (4 * s) + h * (np - nm + 0.5) / dd),
        a.gibbs_populations[3] + a.p0 * (-1 / (4 * s) - h * (np + nm + 1.5) / dd)};
  } else {
    a.warnings.push_back("gamma_c = 0: single-reservoir steady-state formulas not evaluated");
    a.steady_populations = a.gibbs_populations;
  }
  // <e|rho_n|e> = (e^{-wS/T} + cosh(Omega/T) + p0 (Z0 - (-1)^n Z)/2) / Z,
  // written relative to the Gibbs weights to stay finite as T -> 0.
  a.secular_reduced_excited = a.gibbs_populations[0] + 0.5 * (a.gibbs_populations[1] + a.gibbs_populations[2]);
  if (T > 0) {
    for (int q = 1; q <= 2; ++q) {
      const double sign = q % 2 == 0 ? 1.0 : -1.0;
      a.reduced_excited[q - 1] = a.secular_reduced_excited + 0.5 * a.p0 * (a.Z0 / a.Z - sign);
    }
  } else {
    a.reduced_excited = {a.secular_reduced_excited, a.secular_reduced_excited};
  }

  // Both damped, flattened occupations.
  const double nh = occupation(ws, p.T_h);
  const double nc = occupation(ws, p.T_c);
  const double gh = p.gamma_h;
  const double gc = p.gamma_c;
  const double gbar = 0.5 * (gh + gc);
  const double nbar = (gh * nh + gc * nc) / (2 * gbar);
  a.j_sec = 2 * gc * gh * ws * (nh - nc) / ((gh + gc) * (2 * nbar + 1));
  const double base = (2 * nc + 1) * (2 * nh + 1) * gh * gc;
  const double quarter = 0.25 * ((2 * nh + 1) * gh - (2 * nc + 1) * gc) * (gh - gc);
  const double four = 4 * om * om;
  a.j_parsec = four == 0 ? 0.0 : a.j_sec * four / (base + quarter + four);
  a.j_parsec_without_quarter_term = four == 0 ? 0.0 : a.j_sec * four / (base + four);
  return a;
}

Superoperator two_qubit_local_dissipator(const TwoQubitParams& p) {
  p.validate();
  const ComplexMatrix id = ops::identity(2);
  const double n = occupation(p.omega_s, p.T_c);
  const ComplexMatrix s2m = kron(id, ops::sigma_minus());
  return {4, ops::lindblad_term(p.gamma_c * (n + 1), s2m) + ops::lindblad_term(p.gamma_c * n, s2m.adjoint())};
}

Superoperator two_qubit_secular_collapsed_dissipator(const TwoQubitParams& p, double rate_scale) {
  p.validate();
  const ComplexMatrix id = ops::identity(2);
  const double n = occupation(p.omega_s, p.T_c);
  const double down = rate_scale * p.gamma_c * (n + 1);
  const double up = rate_scale * p.gamma_c * n;
  const ComplexMatrix s2m = kron(id, ops::sigma_minus());
  const ComplexMatrix s2z = kron(id, ops::sigma_z());
  const ComplexMatrix s1m = kron(ops::sigma_minus(), id);
  const ComplexMatrix s1p = s1m.adjoint();
  ComplexMatrix l = ops::lindblad_term(down, s2m) + ops::lindblad_term(up, s2m.adjoint());
  l += down * ops::sandwich_minus_anticommutator(s2z * s1m, s1p * s2z, s1p * s1m);
  l += up * ops::sandwich_minus_anticommutator(s2z * s1p, s1m * s2z, s1m * s1p);
  return {4, l};
}

ComplexMatrix tunnelling_hamiltonian(const TunnellingParams& p) {
  const ComplexMatrix hop = (ComplexMatrix(2, 2) << 0, 1, 1, 0).finished();  // |l><r| + |r><l|
  return 0.5 * p.omega_s * kron(ops::sigma_z(), ops::identity(2)) + 0.5 * p.omega * kron(ops::identity(2), hop);
}

ComplexMatrix tunnelling_eigenbasis() {
  const double r = 1.0 / std::sqrt(2.0);
  ComplexVector plus(2), minus(2), e(2), g(2);
  plus << r, r;
  minus << r, -r;
  e << 1, 0;
  g << 0, 1;
  ComplexMatrix v(4, 4);
  v.col(0) = kron(e, plus);
  v.col(1) = kron(e, minus);
  v.col(2) = kron(g, plus);
  v.col(3) = kron(g, minus);
  return v;
}

ComplexMatrix position_sigma_plus() {
  // |+><-| with |+-> = (|l> +- |r>)/sqrt2
  return (ComplexMatrix(2, 2) << 0.5, -0.5, 0.5, -0.5).finished();
}

ComplexMatrix projector_left() { return (ComplexMatrix(2, 2) << 1, 0, 0, 0).finished(); }

ComplexMatrix projector_right() { return (ComplexMatrix(2, 2) << 0, 0, 0, 1).finished(); }

SystemModel build_tunnelling(const TunnellingParams& p, const CoarseGraining& mode, bool flattened) {
  p.validate();
  SystemModel m{HermitianOperator(tunnelling_hamiltonian(p)), {}, mode, flatten_at(p.omega_s, flattened), false, std::nullopt};
  m.couplings.push_back(
      {HermitianOperator(kron(ops::sigma_x(), projector_left())), BathSpec::flat(p.T_l, p.gamma, kLeft)});
  m.couplings.push_back(
      {HermitianOperator(kron(ops::sigma_x(), projector_right())), BathSpec::flat(p.T_r, p.gamma, kRight)});
  m.validate();
  return m;
}

TunnellingAnalytics tunnelling_analytics(const TunnellingParams& p) {
  p.validate();
  TunnellingAnalytics a;
  if (p.omega > p.omega_s / 5) a.warnings.push_back("Omega > omega_s/5: closed forms are out of regime");
  const double nl = occupation(p.omega_s, p.T_l);
  const double nr = occupation(p.omega_s, p.T_r);
  a.j_secular = p.omega_s * p.gamma * (nl - nr) / (2 * (nl + nr + 1));
  a.omega_tilde = std::sqrt(2.0) * p.omega / p.gamma;
  const double w2 = a.omega_tilde * a.omega_tilde;
  a.j_parsec = a.j_secular * w2 / (1 + (2 * nl + 1) * (2 * nr + 1) + w2);
  return a;
}

}  // namespace lindgrain::models
