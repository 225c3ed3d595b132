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

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lindgrain/bohr.hpp"
#include "lindgrain/linalg.hpp"

namespace lindgrain {

/// Frequency-independent rate: 2 pi g^2 = gamma.
struct FlatSpectrum {};

/// g^2(w) = eta w exp(-w / cutoff) / 2 pi.
struct OhmicSpectrum {
  double eta = 1.0;
  double cutoff = 1.0;
};

using SpectralModel = std::variant<FlatSpectrum, OhmicSpectrum>;

struct BathSpec {
  double temperature = 0.0;
  double rate = 0.0;  // flat rate gamma; nominal for Ohmic baths
  SpectralModel model = FlatSpectrum{};
  std::string label;

  static BathSpec flat(double temperature, double rate, std::string label = {});
  static BathSpec ohmic(double temperature, double eta, double cutoff, std::string label = {});

  bool is_ohmic() const { return std::holds_alternative<OhmicSpectrum>(model); }
  const OhmicSpectrum& ohmic_params() const;
  /// Throws PreconditionError when T < 0, rate <= 0 or cutoff <= 0.
  void validate() const;
};

struct ExactMode {
  double dt = 0.0;
};
struct FullSecularMode {};
struct PartialSecularMode {
  double omega_cut = 0.0;
};

using CoarseGraining = std::variant<ExactMode, FullSecularMode, PartialSecularMode>;

std::string mode_name(const CoarseGraining& mode);
inline bool is_limit_mode(const CoarseGraining& mode) {
  return !std::holds_alternative<ExactMode>(mode);
}

struct GammaOptions {
  /// When set, every occupation number is evaluated at this frequency
  /// (the "flattened occupation" regime of the closed forms).
  std::optional<double> flatten_frequency;
};

/// Hermitian rate matrix indexed like the BohrDecomposition it came from.
struct GammaMatrix {
  std::vector<int> indices;
  std::vector<double> frequencies;
  ComplexMatrix entries;
  CoarseGraining mode = FullSecularMode{};

  std::size_t size() const { return indices.size(); }
  Complex at(int m, int n) const;
  double min_eigenvalue() const;
};

/// Planck occupation 1/(e^{w/T} - 1); zero at T = 0.
double occupation(double omega, double temperature);

/// g^2(w).
double spectral_density(double omega, const BathSpec& bath);

/// 2 pi g^2(w): the golden-rule rate at frequency w.
double spectral_rate(double omega, const BathSpec& bath);

/// G(tau) = int_0^inf g^2(w) [(2n+1) cos(w tau) - i sin(w tau)] dw. Ohmic only.
Complex correlation_function(double tau, const BathSpec& bath);

/// Width of |G(tau) + G(-tau)|, first moment over zeroth, on [0, 50/cutoff].
double estimate_tau_c(const BathSpec& bath);

/// Finite-window rate gamma_mn(dt). Ohmic only.
Complex gamma_exact(double omega_m, double omega_n, double dt, const BathSpec& bath);

/// Limit-mode rate. Exact mode is rejected here; see build_gamma_matrix.
double gamma_limit(double omega_m, double omega_n, const BathSpec& bath,
                   const CoarseGraining& mode, const GammaOptions& options = {});

GammaMatrix build_gamma_matrix(const BohrDecomposition& d, const BathSpec& bath,
                               const CoarseGraining& mode, const GammaOptions& options = {});

/// (dt, |gamma_exact - gamma_limit|) for each dt.
std::vector<std::pair<double, double>> gamma_convergence_scan(double omega_m, double omega_n,
                                                              const BathSpec& bath,
                                                              const std::vector<double>& dt_list);

}  // namespace lindgrain
