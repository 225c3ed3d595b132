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

// Explicit sigma / Sigma term lists for the tunnelling-qubit dissipators.

#include <cmath>
#include <utility>

#include "lindgrain/models.hpp"
#include "lindgrain/operators.hpp"

namespace lindgrain::models {

namespace {

struct TunnellingOps {
  ComplexMatrix sm, sp, Sp, Sm, Pl, Pr;
  TunnellingOps() {
    const ComplexMatrix id = ops::identity(2);
    sm = kron(ops::sigma_minus(), id);
    sp = kron(ops::sigma_plus(), id);
    Sp = kron(id, position_sigma_plus());
    Sm = Sp.adjoint();
    Pl = kron(id, projector_left());
    Pr = kron(id, projector_right());
  }
};

// rate [A rho B - 1/2 {C, rho}]
ComplexMatrix term(double rate, const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c) {
  return rate * ops::sandwich_minus_anticommutator(a, b, c);
}

// The six secular lines shared by the full-secular and term-list forms.
// `rate(w, emit)` supplies the coefficient of each line; `sign` flips Sigma.
template <class Rate>
ComplexMatrix secular_lines(const TunnellingOps& o, double ws, double om, double sign, Rate rate,
                            double first_line_frequency) {
  const ComplexMatrix Sm = sign * o.Sm;
  const ComplexMatrix Sp = sign * o.Sp;
  ComplexMatrix d = ComplexMatrix::Zero(16, 16);
  d += term(rate(first_line_frequency, true), o.sm * Sm, Sp * o.sp, Sp * o.sp * o.sm * Sm);
  d += term(rate(ws, true), o.sm, o.sp, o.sp * o.sm);
  d += term(rate(ws - om, true), o.sm * Sp, Sm * o.sp, Sm * o.sp * o.sm * Sp);
  d += term(rate(ws - om, false), o.sp * Sm, Sp * o.sm, Sp * o.sm * o.sp * Sm);
  d += term(rate(ws, false), o.sp, o.sm, o.sm * o.sp);
  d += term(rate(ws + om, false), o.sp * Sp, Sm * o.sm, Sm * o.sm * o.sp * Sp);
  return d;
}

}  // namespace

Superoperator tunnelling_secular_dissipator(const TunnellingParams& p, Transcription t) {
  p.validate();
  const TunnellingOps o;
  const double ws = p.omega_s;
  const double om = p.omega;
  const double first = t == Transcription::kPrinted ? ws : ws + om;
  ComplexMatrix d = ComplexMatrix::Zero(16, 16);
  for (const auto& [temp, sign] : {std::pair{p.T_l, 1.0}, std::pair{p.T_r, -1.0}}) {
    const double T = temp;
    const auto rate = [&](double w, bool emit) { return 0.25 * p.gamma * (occupation(w, T) + (emit ? 1.0 : 0.0)); };
    d += secular_lines(o, ws, om, sign, rate, first);
  }
  return {4, d};
}

Superoperator tunnelling_local_dissipator(const TunnellingParams& p) {
  p.validate();
  const TunnellingOps o;
  ComplexMatrix d = ComplexMatrix::Zero(16, 16);
  for (const auto& [T, P] : {std::pair{p.T_l, o.Pl}, std::pair{p.T_r, o.Pr}}) {
    const double n = occupation(p.omega_s, T);
    d += term(p.gamma * (n + 1), o.sm * P, P * o.sp, o.sp * o.sm * P);
    d += term(p.gamma * n, o.sp * P, P * o.sm, o.sm * o.sp * P);
  }
  return {4, d};
}

Superoperator appendix_c_secular_part(const TunnellingParams& p) {
  p.validate();
  const TunnellingOps o;
  const auto nbar = [&](double w) { return 0.5 * (occupation(w, p.T_l) + occupation(w, p.T_r)); };
  const auto rate = [&](double w, bool emit) { return 0.5 * p.gamma * (nbar(w) + (emit ? 1.0 : 0.0)); };
  return {4, secular_lines(o, p.omega_s, p.omega, 1.0, rate, p.omega_s + p.omega)};
}

Superoperator appendix_c_dissipator(const TunnellingParams& p, Transcription t) {
  p.validate();
  const TunnellingOps o;
  const double ws = p.omega_s;
  const double g = p.gamma;
  const auto nbar = [&](double w) { return 0.5 * (occupation(w, p.T_l) + occupation(w, p.T_r)); };
  const auto dn = [&](double w) { return occupation(w, p.T_l) - occupation(w, p.T_r); };
  const auto& sm = o.sm;
  const auto& sp = o.sp;
  const auto& Sm = o.Sm;
  const auto& Sp = o.Sp;

  ComplexMatrix d = appendix_c_secular_part(p).matrix;

  // D_coh1
  d += 0.5 * g * (nbar(ws) + 1) * (ops::sandwich(sm * Sm, Sm * sp) + ops::sandwich(sm * Sp, Sp * sp));
  d += 0.5 * g * nbar(ws) * (ops::sandwich(sp * Sp, Sp * sm) + ops::sandwich(sp * Sm, Sm * sm));
  const double a = dn(ws + 0.5 * p.omega);
  const double b = dn(ws - 0.5 * p.omega);
  if (t == Transcription::kPrinted) {
    // As printed, D_coh1 ends with the first two D_coh2 lines again.
    d += term(0.25 * g * a, sm * Sm, sp, sp * sm * Sm);
    d += term(0.25 * g * a, sm, Sp * sp, Sp * sp * sm);
  }

  // D_coh2
  d += term(0.25 * g * a, sm * Sm, sp, sp * sm * Sm);
  d += term(0.25 * g * a, sm, Sp * sp, Sp * sp * sm);
  d += term(0.25 * g * b, sm, Sm * sp, sp * Sm * sm);
  d += term(0.25 * g * b, sm * Sp, sp, sp * sm * Sp);
  d += term(0.25 * g * b, sp, Sp * sm, Sp * sm * sp);
  d += term(0.25 * g * b, sp * Sm, sm, sm * sp * Sm);
  d += term(0.25 * g * a, sp * Sp, sm, sm * sp * Sp);
  d += term(0.25 * g * a, sp, Sm * sm, Sm * sm * sp);
  return {4, d};
}

}  // namespace lindgrain::models
