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

// The coupled-qubit and tunnelling-qubit reference systems.
//
// Two-qubit model: product basis qubit1 (x) qubit2, each ordered (e, g);
// eigenbasis (u, +, -, l) with |+-> = (|eg> +- |ge>)/sqrt2. Qubit 1 couples
// through sigma_1x to the "hot" bath, qubit 2 through sigma_2x to "cold".
//
// Tunnelling model: product basis qubit (e, g) (x) position (l, r);
// eigenbasis (e+, e-, g+, g-) with |+-> = (|l> +- |r>)/sqrt2. Couplings
// sigma_x P_l ("left") and sigma_x P_r ("right").
//
// Heat currents follow the difference convention J = Tr[H_S (D_h - D_c) rho].
// At steady state J_h = -J_c, so J = 2 J_h; the closed forms below match
// this convention exactly.

#include <array>
#include <string>
#include <vector>

#include "lindgrain/bath.hpp"
#include "lindgrain/lindblad.hpp"

namespace lindgrain::models {

inline constexpr const char* kHot = "hot";
inline constexpr const char* kCold = "cold";
inline constexpr const char* kLeft = "left";
inline constexpr const char* kRight = "right";

struct TwoQubitParams {
  double omega_s = 1.0;
  double omega = 0.1;
  double gamma_h = 0.0;
  double gamma_c = 0.01;
  double T_h = 1.0;
  double T_c = 1.0;
  void validate() const;
};

struct TunnellingParams {
  double omega_s = 1.0;
  double omega = 0.05;
  double gamma = 0.01;
  double T_l = 1.0;
  double T_r = 1.0;
  void validate() const;
};

// Two-qubit model ----------------------------------------------------------

ComplexMatrix two_qubit_hamiltonian(const TwoQubitParams& p);
/// Columns (u, +, -, l) in the product basis.
ComplexMatrix two_qubit_eigenbasis();

/// Zero-rate couplings are omitted. flattened evaluates every occupation
/// at omega_s.
SystemModel build_two_qubit(const TwoQubitParams& p, const CoarseGraining& mode, bool flattened = false);

struct TwoQubitAnalytics {
  double Z = 0.0;   // Z(Omega) = 2[cosh(wS/T) + cosh(Omega/T)]
  double Z0 = 0.0;  // Z(0)
  std::array<double, 4> gibbs_populations{};  // (u, +, -, l)
  /// Single reservoir (gamma = gamma_c, T = T_c), partial secular.
  double p0 = 0.0;
  /// rho_{+-} - rho_{-+} = i * imag_factor * p0.
  double imag_factor = 0.0;
  std::array<double, 4> steady_populations{};
  /// <e|rho_n|e> for qubits n = 1, 2, partial secular.
  std::array<double, 2> reduced_excited{};
  /// <e|rho_n|e> for either qubit in the secular (Gibbs) state.
  double secular_reduced_excited = 0.0;
  /// Both damped, flattened occupations at omega_s.
  double j_sec = 0.0;
  /// J_sec times the printed 4 Omega^2 ratio (includes the 1/4 term).
  double j_parsec = 0.0;
  /// J_sec * 4 Omega^2 / ((2n_c+1)(2n_h+1) gamma_h gamma_c + 4 Omega^2),
  /// which is what the partial-secular equation actually yields.
  double j_parsec_without_quarter_term = 0.0;
  std::vector<std::string> warnings;
};

/// flattened sets n_+- = n(omega_s) inside the single-reservoir formulas.
TwoQubitAnalytics two_qubit_analytics(const TwoQubitParams& p, bool flattened = false);

/// Local qubit-2 dissipator gamma_c(n+1) D[sigma_2-] + gamma_c n D[sigma_2+], n = n(wS, T_c).
Superoperator two_qubit_local_dissipator(const TwoQubitParams& p);

/// Collapsed secular dissipator as printed: the local qubit-2 terms plus
/// sigma_2z sigma_1-+ jumps with the same rates. rate_scale multiplies every rate.
Superoperator two_qubit_secular_collapsed_dissipator(const TwoQubitParams& p, double rate_scale = 1.0);

// Tunnelling model ---------------------------------------------------------

ComplexMatrix tunnelling_hamiltonian(const TunnellingParams& p);
/// Columns (e+, e-, g+, g-) in the product basis.
ComplexMatrix tunnelling_eigenbasis();
/// Position-space operators on (l, r).
ComplexMatrix position_sigma_plus();  // |+><-|
ComplexMatrix projector_left();
ComplexMatrix projector_right();

SystemModel build_tunnelling(const TunnellingParams& p, const CoarseGraining& mode, bool flattened = false);

struct TunnellingAnalytics {
  double j_secular = 0.0;
  double j_parsec = 0.0;
  /// Dimensionless tunnelling rate sqrt(2) Omega / gamma, fitted against
  /// the computed partial-secular current.
  double omega_tilde = 0.0;
  std::string omega_tilde_definition = "sqrt(2)*Omega/gamma";
  std::vector<std::string> warnings;
};

TunnellingAnalytics tunnelling_analytics(const TunnellingParams& p);

/// Full-secular two-reservoir dissipator transcribed term by term.
/// kPrinted keeps n_l(omega_s) on the sigma_- Sigma_- line as printed;
/// kCorrected uses n_l(omega_s + Omega) there.
enum class Transcription { kPrinted, kCorrected };

Superoperator tunnelling_secular_dissipator(const TunnellingParams& p, Transcription t = Transcription::kCorrected);

/// Small-Omega local form: gamma(n_p+1) D[sigma_- P_p] + gamma n_p D[sigma_+ P_p], p = l, r.
Superoperator tunnelling_local_dissipator(const TunnellingParams& p);

// Explicit term-list dissipators ------------------------------------------

/// Two-qubit partial-secular dissipator written with L_ab = |a><b|.
/// kCorrected applies the three errata recorded in the model notes.
Superoperator appendix_b_dissipator(const TwoQubitParams& p, Transcription t = Transcription::kCorrected);

/// Tunnelling partial-secular dissipator D_sec + D_coh1 + D_coh2.
/// kCorrected drops the two Delta-n lines repeated at the end of D_coh1.
Superoperator appendix_c_dissipator(const TunnellingParams& p, Transcription t = Transcription::kCorrected);

/// D_sec part of the tunnelling term list only.
Superoperator appendix_c_secular_part(const TunnellingParams& p);

}  // namespace lindgrain::models
