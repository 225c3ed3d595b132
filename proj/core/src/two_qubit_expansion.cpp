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

// Explicit L_ab term list for the two-qubit partial-secular dissipator.

#include <cmath>
#include <map>

#include "lindgrain/models.hpp"
#include "lindgrain/operators.hpp"

namespace lindgrain::models {

namespace {

class TermBuilder {
 public:
  TermBuilder() : basis_(two_qubit_eigenbasis()) {
    const char names[] = {'u', '+', '-', 'l'};
    for (int k = 0; k < 4; ++k) index_[names[k]] = k;
  }

  ComplexMatrix L(char a, char b) const {
    return basis_.col(index_.at(a)) * basis_.col(index_.at(b)).adjoint();
  }
  // rho -> L_ab rho L_cd
  ComplexMatrix S(char a, char b, char c, char d) const { return ops::sandwich(L(a, b), L(c, d)); }
  // rho -> {M, rho}
  static ComplexMatrix A(const ComplexMatrix& m) { return ops::spre(m) + ops::spost(m); }

 private:
  ComplexMatrix basis_;
  std::map<char, int> index_;
};

}  // namespace

Superoperator appendix_b_dissipator(const TwoQubitParams& p, Transcription t) {
  p.validate();
  const TermBuilder b;
  const double ws = p.omega_s;
  const double om = p.omega;
  const double gh = p.gamma_h;
  const double gc = p.gamma_c;
  const double gb = 0.5 * (gh + gc);
  const auto nbar = [&](double w) {
    return (gh * occupation(w, p.T_h) + gc * occupation(w, p.T_c)) / (2 * gb);
  };
  const auto dn = [&](double w) { return (gh * occupation(w, p.T_h) - gc * occupation(w, p.T_c)) / gb; };
  const double dg = (gh - gc) / gb;
  const double up = ws + om;
  const double lo = ws - om;
  const auto S = [&](char a, char bb, char c, char d) { return b.S(a, bb, c, d); };
  const auto L = [&](char a, char bb) { return b.L(a, bb); };
  const auto A = TermBuilder::A;

  ComplexMatrix d = ComplexMatrix::Zero(16, 16);
  if (t == Transcription::kPrinted) {
    // D_sec
    d += (nbar(up) + 1) * gb * (S('l', '+', '+', 'l') + S('-', 'u', 'u', '-') - 0.5 * A(L('u', 'u') + L('+', '+')));
    d += (nbar(lo) + 1) * gb * (S('u', '+', '+', 'u') + S('-', 'l', 'l', '-') - 0.5 * A(L('+', '+') + L('l', 'l')));
    d += nbar(lo) * gb * (S('+', 'u', 'u', '+') + S('l', '-', '-', 'l') - 0.5 * A(L('-', '-') + L('u', 'u')));
    d += nbar(up) * gb * (S('+', 'l', 'l', '+') + S('u', '-', '-', 'u') - 0.5 * A(L('-', '-') + L('l', 'l')));
    d += 0.5 * dn(up) * gb *
         (S('u', '+', 'l', '-') + S('-', 'l', '+', 'u') - S('l', '+', 'u', '-') - S('-', 'u', '+', 'l'));
    d += 0.5 * dn(lo) * gb *
         (S('+', 'u', '-', 'l') + S('l', '-', 'u', '+') - S('+', 'l', '-', 'u') - S('u', '-', 'l', '+'));
    // D_nonsec
    d += (nbar(ws) + 1) * gb *
         (S('l', '+', 'u', '+') + S('+', 'u', '+', 'l') - S('-', 'u', '-', 'l') - S('l', '-', 'u', '-'));
    d += nbar(ws) * gb * (S('+', 'l', '+', 'u') + S('u', '+', 'l', '+') - S('u', '-', 'l', '-') - S('-', 'l', '-', 'u'));
    d += 0.5 * dn(ws) * gb *
         (S('l', '+', '-', 'l') + S('l', '-', '+', 'l') + S('+', 'l', 'l', '-') + S('-', 'l', 'l', '+') -
          S('u', '+', '-', 'u') - S('u', '-', '+', 'u') - S('+', 'u', 'u', '-') - S('-', 'u', 'u', '+'));
    return {4, d};
  }

  // Corrected list, obtained by expanding sum_p gamma_p-weighted X_m rho X_n^dag
  // with X_1 = (L_u+ - s L_-l)/sqrt2, X_2 = (L_+l + s L_u-)/sqrt2 and s = +1
  // (cold, qubit 2) or -1 (hot, qubit 1). Terms even in s carry nbar,
  // odd terms carry Delta n (absorption) or Delta n + Delta gamma (emission).
  // Secular block, emission then absorption.
  d += (nbar(up) + 1) * gb * (S('l', '+', '+', 'l') + S('-', 'u', 'u', '-') - 0.5 * A(L('+', '+') + L('u', 'u')));
  d += (nbar(lo) + 1) * gb * (S('+', 'u', 'u', '+') + S('l', '-', '-', 'l') - 0.5 * A(L('-', '-') + L('u', 'u')));
  d += nbar(up) * gb * (S('+', 'l', 'l', '+') + S('u', '-', '-', 'u') - 0.5 * A(L('-', '-') + L('l', 'l')));
  d += nbar(lo) * gb * (S('u', '+', '+', 'u') + S('-', 'l', 'l', '-') - 0.5 * A(L('+', '+') + L('l', 'l')));
  const auto emit = [&](double w) { return -0.5 * (dn(w) + dg) * gb; };
  const auto absorb = [&](double w) { return -0.5 * dn(w) * gb; };
  d += emit(up) * (S('l', '+', 'u', '-') + S('-', 'u', '+', 'l'));
  d -= emit(lo) * (S('l', '-', 'u', '+') + S('+', 'u', '-', 'l'));
  d += absorb(up) * (S('+', 'l', '-', 'u') + S('u', '-', 'l', '+'));
  d -= absorb(lo) * (S('-', 'l', '+', 'u') + S('u', '+', 'l', '-'));
  // Cross-frequency block (omega_1, omega_2 pairs at omega_s).
  d += (nbar(ws) + 1) * gb * (S('l', '+', 'u', '+') + S('+', 'u', '+', 'l') - S('l', '-', 'u', '-') - S('-', 'u', '-', 'l'));
  d += nbar(ws) * gb * (S('+', 'l', '+', 'u') + S('u', '+', 'l', '+') - S('u', '-', 'l', '-') - S('-', 'l', '-', 'u'));
  d += emit(ws) * (-S('l', '-', '+', 'l') - S('l', '+', '-', 'l') + S('-', 'u', 'u', '+') + S('+', 'u', 'u', '-') +
                   0.5 * A(L('-', '+') + L('+', '-')));
  d += absorb(ws) * (-S('-', 'l', 'l', '+') - S('+', 'l', 'l', '-') + S('u', '-', '+', 'u') + S('u', '+', '-', 'u') -
                     0.5 * A(L('-', '+') + L('+', '-')));
  return {4, d};
}

}  // namespace lindgrain::models
