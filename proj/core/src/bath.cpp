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

#include "lindgrain/bath.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>

#include "lindgrain/error.hpp"
#include "quadrature.hpp"

namespace lindgrain {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const OhmicSpectrum& require_ohmic(const BathSpec& bath, const char* what) {
  if (!bath.is_ohmic()) {
    throw UnsupportedModelError(std::string(what) +
                                ": a flat spectrum has no integrable correlation function; "
                                "use an Ohmic bath");
  }
  return bath.ohmic_params();
}

// w n(w), finite at w = 0.
double w_times_occupation(double w, double temperature) {
  if (w == 0.0) return temperature;
  return w / std::expm1(w / temperature);
}

// (eta/pi) int_0^inf w e^{-w/wc} n(w) cos(w tau) dw: the thermal part of
// Re G after writing coth(w/2T) = 1 + 2n(w).
double thermal_part(double tau, const OhmicSpectrum& s, double temperature) {
  const double kappa = 1.0 / s.cutoff + 1.0 / temperature;
  const double wmax = 60.0 / kappa;
  auto f = [&](double w) { return std::exp(-w / s.cutoff) * w_times_occupation(w, temperature); };
  const double periods = std::abs(tau) * wmax / kTwoPi;
  double value;
  if (periods <= 400.0) {
    auto g = [&](double w) { return f(w) * std::cos(w * tau); };
    // The first panels carry the exponential decay; two periods per panel after that.
    const int panels = std::max(8, static_cast<int>(std::ceil(periods / 2.0)));
    std::vector<double> pts;
    for (int k = 0; k <= panels; ++k) pts.push_back(wmax * k / panels);
    value = detail::integrate_fixed(g, pts);
  } else {
    thread_local boost::math::quadrature::ooura_fourier_cos<double> ooura(1e-12);
    value = ooura.integrate(f, std::abs(tau)).first;
  }
  return s.eta / std::numbers::pi * value;
}

void require_frequency(double w, const char* what) {
  if (!std::isfinite(w) || w == 0.0) {
    throw PreconditionError(std::string(what) +
                            ": zero-frequency channels have no limit-mode rate (n(0) diverges)");
  }
}

}  // namespace

BathSpec BathSpec::flat(double temperature, double rate, std::string label) {
  BathSpec b{temperature, rate, FlatSpectrum{}, std::move(label)};
  b.validate();
  return b;
}

BathSpec BathSpec::ohmic(double temperature, double eta, double cutoff, std::string label) {
  BathSpec b{temperature, eta, OhmicSpectrum{eta, cutoff}, std::move(label)};
  b.validate();
  return b;
}

const OhmicSpectrum& BathSpec::ohmic_params() const {
  if (const auto* o = std::get_if<OhmicSpectrum>(&model)) return *o;
  throw UnsupportedModelError("bath '" + label + "' is not Ohmic");
}

void BathSpec::validate() const {
  if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
    throw PreconditionError("bath '" + label + "': temperature must be finite and >= 0");
  }
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw PreconditionError("bath '" + label + "': rate must be finite and > 0");
  }
  if (const auto* o = std::get_if<OhmicSpectrum>(&model)) {
    if (!(o->eta > 0.0) || !(o->cutoff > 0.0)) {
      throw PreconditionError("bath '" + label + "': Ohmic eta and cutoff must be > 0");
    }
  }
}

std::string mode_name(const CoarseGraining& mode) {
  return std::visit(overloaded{[](const ExactMode&) { return std::string("exact"); },
                               [](const FullSecularMode&) { return std::string("full_secular"); },
                               [](const PartialSecularMode&) {
                                 return std::string("partial_secular");
                               }},
                    mode);
}

Complex GammaMatrix::at(int m, int n) const {
  const auto pos = [&](int k) {
    const auto it = std::find(indices.begin(), indices.end(), k);
    if (it == indices.end()) throw PreconditionError("GammaMatrix: unknown index " + std::to_string(k));
    return it - indices.begin();
  };
  return entries(pos(m), pos(n));
}

double GammaMatrix::min_eigenvalue() const {
  if (entries.size() == 0) return 0.0;
  return psd_min_eig(HermitianOperator(entries));
}

double occupation(double omega, double temperature) {
  if (!(omega > 0.0)) throw PreconditionError("occupation: omega must be > 0");
  if (temperature < 0.0) throw PreconditionError("occupation: temperature must be >= 0");
  if (temperature == 0.0) return 0.0;
  return 1.0 / std::expm1(omega / temperature);
}

double spectral_density(double omega, const BathSpec& bath) {
  if (omega < 0.0) throw PreconditionError("spectral_density: omega must be >= 0");
  return std::visit(
      overloaded{[&](const FlatSpectrum&) { return bath.rate / kTwoPi; },
                 [&](const OhmicSpectrum& s) { return s.eta * omega * std::exp(-omega / s.cutoff) / kTwoPi; }},
      bath.model);
}

double spectral_rate(double omega, const BathSpec& bath) {
  return kTwoPi * spectral_density(omega, bath);
}

Complex correlation_function(double tau, const BathSpec& bath) {
  const OhmicSpectrum& s = require_ohmic(bath, "correlation_function");
  if (!std::isfinite(tau)) throw PreconditionError("correlation_function: tau must be finite");
  // Vacuum part in closed form: (eta/2pi) / (1/wc + i tau)^2.
  const Complex z(1.0 / s.cutoff, tau);
  Complex g = s.eta / kTwoPi / (z * z);
  if (bath.temperature > 0.0) g += thermal_part(tau, s, bath.temperature);
  return g;
}

double estimate_tau_c(const BathSpec& bath) {
  const OhmicSpectrum& s = require_ohmic(bath, "estimate_tau_c");
  // The exponential cutoff leaves a 1/tau^2 tail in Re G, so the first
  // moment grows logarithmically with the window; the window is fixed at
  // 50/wc, by which |G| has fallen below 1e-3 G(0).
  const double a = 1.0 / s.cutoff;
  const double upper = 50.0 * a;
  const auto pts = detail::breakpoints(upper, 0.25 * a, upper);
  auto w = [&](double tau) { return std::abs(2.0 * correlation_function(tau, bath).real()); };
  const double num = detail::integrate_panels([&](double t) { return w(t) * t; }, pts, 1e-10);
  const double den = detail::integrate_panels(w, pts, 1e-10);
  if (!(den > 0.0)) throw NumericalError("estimate_tau_c: vanishing correlation weight");
  return num / den;
}

Complex gamma_exact(double omega_m, double omega_n, double dt, const BathSpec& bath) {
  const OhmicSpectrum& s = require_ohmic(bath, "gamma_exact");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw PreconditionError("gamma_exact: dt must be > 0");
  // gamma_mn = (1/dt) int int G(t2 - t1) e^{i wm t1 - i wn t2} over [0,dt]^2
  //          = e^{i wmn dt/2} int_0^dt 2 Re[G(tau) e^{-i S tau}] (1 - tau/dt)
  //                                  sinc(wmn (dt - tau)/2) dtau,
  // with S = (wm + wn)/2 and wmn = wm - wn. The integrand is real.
  const double S = 0.5 * (omega_m + omega_n);
  const double wmn = omega_m - omega_n;
  auto f = [&](double tau) {
    const Complex g = correlation_function(tau, bath) * std::exp(Complex(0.0, -S * tau));
    return 2.0 * g.real() * (1.0 - tau / dt) * detail::sinc(0.5 * wmn * (dt - tau));
  };
  const double fastest = std::abs(S) + 0.5 * std::abs(wmn) + 1e-300;
  const auto pts = detail::breakpoints(dt, 1.0 / s.cutoff, 2.0 * kTwoPi / fastest);
  const double integral = detail::integrate_panels(f, pts, 1e-12);
  return std::exp(Complex(0.0, 0.5 * wmn * dt)) * integral;
}

double gamma_limit(double omega_m, double omega_n, const BathSpec& bath, const CoarseGraining& mode,
                   const GammaOptions& options) {
  require_frequency(omega_m, "gamma_limit");
  require_frequency(omega_n, "gamma_limit");
  if (std::holds_alternative<ExactMode>(mode)) {
    throw PreconditionError("gamma_limit: exact mode has no limit value; use gamma_exact");
  }
  const double T = bath.temperature;
  const auto occ = [&](double w) { return occupation(options.flatten_frequency.value_or(w), T); };
  if (omega_m == omega_n) {
    const double w = std::abs(omega_n);
    return spectral_rate(w, bath) * (occ(w) + (omega_n < 0 ? 1.0 : 0.0));
  }
  const auto* ps = std::get_if<PartialSecularMode>(&mode);
  if (ps == nullptr) return 0.0;
  if ((omega_m > 0) != (omega_n > 0)) return 0.0;
  if (std::abs(omega_m - omega_n) > ps->omega_cut) return 0.0;
  const double sum = omega_m + omega_n;
  const double wbar = 0.5 * std::abs(sum);
  return spectral_rate(wbar, bath) * (occ(wbar) + (sum < 0 ? 1.0 : 0.0));
}

GammaMatrix build_gamma_matrix(const BohrDecomposition& d, const BathSpec& bath,
                               const CoarseGraining& mode, const GammaOptions& options) {
  bath.validate();
  if (d.size() == 0) throw PreconditionError("build_gamma_matrix: decomposition has no eigenoperators");
  const Eigen::Index n = static_cast<Eigen::Index>(d.size());
  GammaMatrix g{d.indices, d.frequencies, ComplexMatrix::Zero(n, n), mode};
  if (const auto* ex = std::get_if<ExactMode>(&mode)) {
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i; j < n; ++j) {
        const Complex v = gamma_exact(d.frequencies[i], d.frequencies[j], ex->dt, bath);
        g.entries(i, j) = v;
        g.entries(j, i) = std::conj(v);
      }
      g.entries(i, i) = g.entries(i, i).real();
    }
    return g;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      g.entries(i, j) = gamma_limit(d.frequencies[i], d.frequencies[j], bath, mode, options);
    }
  }
  const double scale = max_abs(g.entries);
  const double lmin = g.min_eigenvalue();
  if (lmin < -1e-12 * scale) {
    throw NumericalError("build_gamma_matrix: limit-mode gamma matrix for bath '" + bath.label +
                         "' has min eigenvalue " + std::to_string(lmin) +
                         " (omega_cut pairs frequencies that do not form blocks, or an Ohmic rate breaks positivity)");
  }
  return g;
}

std::vector<std::pair<double, double>> gamma_convergence_scan(double omega_m, double omega_n,
                                                              const BathSpec& bath,
                                                              const std::vector<double>& dt_list) {
  const CoarseGraining limit_mode =
      omega_m == omega_n ? CoarseGraining{FullSecularMode{}}
                         : CoarseGraining{PartialSecularMode{std::numeric_limits<double>::infinity()}};
  const double limit = gamma_limit(omega_m, omega_n, bath, limit_mode);
  std::vector<std::pair<double, double>> out;
  out.reserve(dt_list.size());
  for (double dt : dt_list) {
    out.emplace_back(dt, std::abs(gamma_exact(omega_m, omega_n, dt, bath) - limit));
  }
  return out;
}

}  // namespace lindgrain
