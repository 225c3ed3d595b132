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

#include <cmath>
#include <algorithm>
#include <functional>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "lindgrain/bath.hpp"
#include "lindgrain/bohr.hpp"
#include "lindgrain/error.hpp"
#include "lindgrain/models.hpp"
#include "lindgrain/operators.hpp"
#include "support.hpp"

namespace lindgrain {
namespace {

constexpr double kPi = std::numbers::pi;

// Series oracle for the Ohmic exponential-cutoff correlation function:
// G = eta/2pi [ 1/(a + i tau)^2 + sum_k 1/(a + k/T + i tau)^2 + 1/(a + k/T - i tau)^2 ],
// a = 1/wc. Tail beyond K summed by the midpoint rule, error O(K^-3).
Complex series_correlation(double tau, double eta, double wc, double T) {
  const double a = 1.0 / wc;
  const Complex it(0.0, tau);
  Complex g = 1.0 / ((a + it) * (a + it));
  if (T > 0) {
    const int kmax = 20000;
    for (int k = 1; k <= kmax; ++k) {
      const double s = a + k / T;
      g += 1.0 / ((s + it) * (s + it)) + 1.0 / ((s - it) * (s - it));
    }
    const Complex zp = T * (a + it);
    const Complex zm = T * (a - it);
    g += T * T * (1.0 / (kmax + 0.5 + zp) + 1.0 / (kmax + 0.5 + zm));
  }
  return eta / (2 * kPi) * g;
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-12) {
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, tol);
}

// (1/dt) int_0^dt int_0^dt G(t2 - t1) e^{i wm t1 - i wn t2} dt1 dt2, T = 0.
Complex double_integral_gamma(double wm, double wn, double dt, double eta, double wc) {
  auto part = [&](bool imag) {
    auto outer = [&](double t2) {
      auto inner = [&](double t1) {
        const Complex v = series_correlation(t2 - t1, eta, wc, 0.0) * std::exp(Complex(0, wm * t1 - wn * t2));
        return imag ? v.imag() : v.real();
      };
      return integrate(inner, 0.0, t2) + integrate(inner, t2, dt);
    };
    double s = 0;
    for (int k = 0; k < 6; ++k) s += integrate(outer, dt * k / 6, dt * (k + 1) / 6);
    return s;
  };
  return Complex(part(false), part(true)) / dt;
}

// Frequency-domain form of the same double integral:
// int dw g^2(w) [ (n+1) I(wm + w) I*(wn + w) + n I(wm - w) I*(wn - w) ] / dt,
// with I(x) = int_0^dt e^{ixt} dt.
Complex frequency_domain_gamma(double wm, double wn, double dt, double eta, double wc, double T) {
  auto window = [&](double x) {
    if (std::abs(x) < 1e-12) return Complex(dt, 0.0);
    return (std::exp(Complex(0, x * dt)) - 1.0) / Complex(0, x);
  };
  auto integrand = [&](double w, bool imag) {
    const double g2 = eta * w * std::exp(-w / wc) / (2 * kPi);
    const double n = T > 0 ? 1.0 / std::expm1(w / T) : 0.0;
    const Complex v = g2 * ((n + 1) * window(wm + w) * std::conj(window(wn + w)) +
                            n * window(wm - w) * std::conj(window(wn - w))) / dt;
    return imag ? v.imag() : v.real();
  };
  double re = 0, im = 0;
  const double step = 0.25;
  for (double w0 = 0; w0 < 60 * wc; w0 += step) {
    // Each panel holds well under one oscillation; a fixed 30-point rule suffices.
    using boost::math::quadrature::gauss;
    re += gauss<double, 30>::integrate([&](double w) { return integrand(w, false); }, w0, w0 + step);
    im += gauss<double, 30>::integrate([&](double w) { return integrand(w, true); }, w0, w0 + step);
  }
  return {re, im};
}

TEST(Occupation, Examples) {
  EXPECT_EQ(occupation(1.0, 0.0), 0.0);
  EXPECT_EQ(occupation(5.0, 0.0), 0.0);
  EXPECT_NEAR(occupation(std::log(2.0), 1.0), 1.0, 1e-14);
  EXPECT_NEAR(occupation(1.0, 1.0), 0.58197670686932642439, 1e-15);
  EXPECT_THROW(occupation(0.0, 1.0), PreconditionError);
  EXPECT_THROW(occupation(1.0, -1.0), PreconditionError);
}

TEST(Occupation, GeometricSeries) {
  for (double x : {0.1, 0.3, 1.0, 2.5, 7.0, 20.0}) {
    double series = 0.0;
    for (int p = 0;; ++p) {
      const double term = std::exp(-(p + 1) * x);
      series += term;
      if (term < 1e-15 * series) break;
    }
    EXPECT_NEAR(occupation(x, 1.0), series, 1e-12 * std::max(1.0, series));
    EXPECT_NEAR(occupation(2 * x, 2.0), series, 1e-12 * std::max(1.0, series));
  }
}

TEST(SpectralDensity, Examples) {
  const BathSpec flat = BathSpec::flat(1.0, 0.01);
  for (double w : {0.1, 1.0, 10.0}) EXPECT_NEAR(spectral_density(w, flat), 0.01 / (2 * kPi), 1e-18);
  const BathSpec ohm = BathSpec::ohmic(0.0, 1.0, 10.0);
  EXPECT_EQ(spectral_density(0.0, ohm), 0.0);
  EXPECT_NEAR(spectral_density(10.0, ohm), 10.0 * std::exp(-1.0) / (2 * kPi), 1e-15);
  EXPECT_THROW(spectral_density(-1.0, ohm), PreconditionError);
}

TEST(BathSpec, Validation) {
  EXPECT_THROW(BathSpec::flat(-1.0, 0.01), PreconditionError);
  EXPECT_THROW(BathSpec::flat(1.0, 0.0), PreconditionError);
  EXPECT_THROW(BathSpec::ohmic(1.0, 1.0, 0.0), PreconditionError);
}

TEST(CorrelationFunction, FlatIsUnsupported) {
  EXPECT_THROW(correlation_function(0.1, BathSpec::flat(1.0, 0.01)), UnsupportedModelError);
  EXPECT_THROW(estimate_tau_c(BathSpec::flat(1.0, 0.01)), UnsupportedModelError);
}

TEST(CorrelationFunction, ZeroTemperatureOrigin) {
  const Complex g0 = correlation_function(0.0, BathSpec::ohmic(0.0, 1.0, 10.0));
  EXPECT_NEAR(g0.real(), 100.0 / (2 * kPi), 1e-10 * 100.0 / (2 * kPi));
  EXPECT_NEAR(g0.imag(), 0.0, 1e-12);
}

TEST(CorrelationFunction, Symmetry) {
  for (double T : {0.0, 1.0}) {
    const BathSpec b = BathSpec::ohmic(T, 1.0, 10.0);
    const Complex plus = correlation_function(0.3, b);
    const Complex minus = correlation_function(-0.3, b);
    EXPECT_LE(std::abs(minus - std::conj(plus)), 1e-10 * std::abs(correlation_function(0.0, b)));
  }
}

TEST(CorrelationFunction, MatchesSeriesOracle) {
  for (double T : {0.0, 0.5, 1.0, 5.0}) {
    const BathSpec b = BathSpec::ohmic(T, 0.7, 10.0);
    const double g0 = std::abs(series_correlation(0.0, 0.7, 10.0, T));
    for (double tau : {0.0, 0.01, 0.07, 0.3, 1.0, 4.0, 20.0}) {
      const Complex want = series_correlation(tau, 0.7, 10.0, T);
      EXPECT_LE(std::abs(correlation_function(tau, b) - want), 1e-9 * g0) << "T=" << T << " tau=" << tau;
    }
  }
}

TEST(CorrelationFunction, DecaysOnCorrelationTime) {
  for (double T : {0.0, 1.0}) {
    const BathSpec b = BathSpec::ohmic(T, 1.0, 10.0);
    EXPECT_LE(std::abs(correlation_function(5.0, b)), 1e-3 * std::abs(correlation_function(0.0, b)));
  }
}

TEST(EstimateTauC, OrderOfCutoff) {
  const double tau = estimate_tau_c(BathSpec::ohmic(0.0, 1.0, 10.0));
  EXPECT_GT(tau * 10.0, 0.01);
  EXPECT_LT(tau * 10.0, 10.0);
}

TEST(EstimateTauC, ShrinksWithCutoff) {
  EXPECT_GT(estimate_tau_c(BathSpec::ohmic(0.0, 1.0, 5.0)), estimate_tau_c(BathSpec::ohmic(0.0, 1.0, 50.0)));
}

TEST(EstimateTauC, HighTemperatureThermalTime) {
  const double tau = estimate_tau_c(BathSpec::ohmic(100.0, 1.0, 10.0));
  const double thermal = 1.0 / (2 * kPi * 100.0);
  EXPECT_LT(tau, 10 * thermal);
  EXPECT_GT(tau, 0.1 * thermal);
}

TEST(GammaExact, MatchesDoubleIntegral) {
  const BathSpec b = BathSpec::ohmic(0.0, 1.0, 10.0);
  const Complex got = gamma_exact(1.0, 1.2, 3.0, b);
  const Complex want = double_integral_gamma(1.0, 1.2, 3.0, 1.0, 10.0);
  EXPECT_LE(std::abs(got - want), 1e-7 * std::abs(want));
}

TEST(GammaExact, MatchesFrequencyDomainOracle) {
  struct Case {
    double wm, wn, dt, T;
  };
  for (const Case& c : {Case{1.0, 1.2, 3.0, 0.0}, Case{1.0, 1.2, 3.0, 1.0}, Case{-1.0, -0.8, 5.0, 0.5},
                        Case{1.0, 1.0, 20.0, 1.0}, Case{-0.9, -0.9, 8.0, 2.0}, Case{1.0, 0.9, 50.0, 1.0}}) {
    const BathSpec b = BathSpec::ohmic(c.T, 1.0, 10.0);
    const Complex got = gamma_exact(c.wm, c.wn, c.dt, b);
    const Complex want = frequency_domain_gamma(c.wm, c.wn, c.dt, 1.0, 10.0, c.T);
    EXPECT_LE(std::abs(got - want), 1e-7 * std::abs(want)) << c.wm << " " << c.wn << " " << c.dt << " " << c.T;
  }
}

TEST(GammaExact, Hermitian) {
  const BathSpec b = BathSpec::ohmic(0.5, 1.0, 10.0);
  for (auto [wm, wn] : {std::pair{1.0, 1.3}, std::pair{-1.0, -0.7}, std::pair{0.9, -1.1}}) {
    const Complex a = gamma_exact(wm, wn, 4.0, b);
    const Complex c = gamma_exact(wn, wm, 4.0, b);
    EXPECT_LE(std::abs(a - std::conj(c)), 1e-10 * std::abs(a));
  }
}

TEST(GammaExact, RejectsBadWindow) {
  const BathSpec b = BathSpec::ohmic(0.0, 1.0, 10.0);
  EXPECT_THROW(gamma_exact(1.0, 1.0, 0.0, b), PreconditionError);
  EXPECT_THROW(gamma_exact(1.0, 1.0, -2.0, b), PreconditionError);
  EXPECT_THROW(gamma_exact(1.0, 1.0, 2.0, BathSpec::flat(1.0, 0.1)), UnsupportedModelError);
}

TEST(GammaExact, ConvergesToLimit) {
  // Emission channel at T = 0, so the limit is nonzero.
  const BathSpec b = BathSpec::ohmic(0.0, 1.0, 10.0);
  const double limit = gamma_limit(-1.0, -1.0, b, FullSecularMode{});
  ASSERT_GT(limit, 0.0);
  const auto scan = gamma_convergence_scan(-1.0, -1.0, b, {2.0, 20.0});
  EXPECT_LT(scan[1].second, scan[0].second);
  // Residual is O(1/dt): a decade in dt buys roughly a decade in deviation.
  EXPECT_NEAR(scan[0].second / scan[1].second, 10.0, 3.0);
  EXPECT_LE(scan[1].second, 10.0 * estimate_tau_c(b) / 20.0 * limit);
}

TEST(GammaConvergenceScan, SlopeMinusOne) {
  const BathSpec b = BathSpec::ohmic(0.0, 1.0, 20.0);
  const std::vector<double> dts{1.0, 2.0, 5.0, 10.0};
  const auto scan = gamma_convergence_scan(1.0, 1.0, b, dts);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [dt, dev] : scan) {
    const double x = std::log(dt), y = std::log(dev);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(scan.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  EXPECT_NEAR(slope, -1.0, 0.3);
  EXPECT_LT(scan.back().second, scan.front().second);
}

TEST(GammaLimit, Examples) {
  const BathSpec cold = BathSpec::flat(0.0, 0.01);
  EXPECT_NEAR(gamma_limit(-1.0, -1.0, cold, FullSecularMode{}), 0.01, 1e-18);
  EXPECT_EQ(gamma_limit(1.0, 1.0, cold, FullSecularMode{}), 0.0);
  const BathSpec b = BathSpec::flat(1.0, 0.01);
  const double np = occupation(1.1, 1.0), nm = occupation(0.9, 1.0), n = occupation(1.0, 1.0);
  EXPECT_NEAR(gamma_limit(-1.1, -1.1, b, FullSecularMode{}), 0.01 * (np + 1), 1e-16);
  EXPECT_NEAR(gamma_limit(0.9, 0.9, b, FullSecularMode{}), 0.01 * nm, 1e-16);
  EXPECT_EQ(gamma_limit(0.9, 1.1, b, FullSecularMode{}), 0.0);
  EXPECT_NEAR(gamma_limit(0.9, 1.1, b, PartialSecularMode{1.0}), 0.01 * n, 1e-16);
  EXPECT_NEAR(gamma_limit(-0.9, -1.1, b, PartialSecularMode{1.0}), 0.01 * (n + 1), 1e-16);
  EXPECT_EQ(gamma_limit(0.9, -1.1, b, PartialSecularMode{10.0}), 0.0);
  EXPECT_EQ(gamma_limit(0.9, 1.1, b, PartialSecularMode{0.1}), 0.0);
  EXPECT_THROW(gamma_limit(0.0, 1.0, b, FullSecularMode{}), PreconditionError);
}

TEST(GammaLimit, DetailedBalance) {
  for (double T : {0.3, 1.0, 4.0}) {
    const BathSpec b = BathSpec::flat(T, 0.02);
    for (double w : {0.2, 1.0, 3.0}) {
      const double ratio = gamma_limit(-w, -w, b, FullSecularMode{}) / gamma_limit(w, w, b, FullSecularMode{});
      EXPECT_NEAR(ratio, std::exp(w / T), 1e-10 * std::exp(w / T));
    }
  }
}

TEST(GammaLimit, OhmicRateAtFrequency) {
  const BathSpec b = BathSpec::ohmic(1.0, 0.5, 10.0);
  const double rate = 0.5 * 1.3 * std::exp(-0.13);
  EXPECT_NEAR(gamma_limit(-1.3, -1.3, b, FullSecularMode{}), rate * (occupation(1.3, 1.0) + 1), 1e-14);
}

class TwoQubitGamma : public ::testing::Test {
 protected:
  void SetUp() override {
    p_.omega = 0.1;
    p_.gamma_c = 0.01;
    p_.T_c = 1.0;
    d_ = bohr_decompose(HermitianOperator(models::two_qubit_hamiltonian(p_)),
                        HermitianOperator(kron(ops::identity(2), ops::sigma_x())));
    np_ = occupation(1.1, 1.0);
    nm_ = occupation(0.9, 1.0);
    n_ = occupation(1.0, 1.0);
  }
  models::TwoQubitParams p_;
  BohrDecomposition d_;
  double np_ = 0, nm_ = 0, n_ = 0;
};

TEST_F(TwoQubitGamma, FullSecularDiagonal) {
  const GammaMatrix g = build_gamma_matrix(d_, BathSpec::flat(1.0, 0.01), FullSecularMode{});
  ComplexMatrix want = ComplexMatrix::Zero(4, 4);
  want.diagonal() << 0.01 * (np_ + 1), 0.01 * (nm_ + 1), 0.01 * nm_, 0.01 * np_;
  EXPECT_LE(max_abs(g.entries - want), 1e-15);
}

TEST_F(TwoQubitGamma, PartialSecularBlocks) {
  const GammaMatrix g = build_gamma_matrix(d_, BathSpec::flat(1.0, 0.01), PartialSecularMode{1.0});
  ComplexMatrix want = ComplexMatrix::Zero(4, 4);
  want.diagonal() << 0.01 * (np_ + 1), 0.01 * (nm_ + 1), 0.01 * nm_, 0.01 * np_;
  want(0, 1) = want(1, 0) = 0.01 * (n_ + 1);
  want(2, 3) = want(3, 2) = 0.01 * n_;
  EXPECT_LE(max_abs(g.entries - want), 1e-15);
  EXPECT_GE(g.min_eigenvalue(), 0.0);
  EXPECT_GE(psd_min_eig(HermitianOperator(g.entries)), 0.0);
}

TEST_F(TwoQubitGamma, ExactModeIsHermitian) {
  const GammaMatrix g = build_gamma_matrix(d_, BathSpec::ohmic(1.0, 0.01, 20.0), ExactMode{5.0});
  EXPECT_LE(hermiticity_defect(g.entries), 1e-12 * max_abs(g.entries));
}

// Random frequency blocks: clusters far apart, Omega_cut between the
// intra-cluster spread and the inter-cluster gap.
BohrDecomposition random_frequency_set(int clusters, int per_cluster) {
  BohrDecomposition d;
  std::vector<double> w;
  double centre = 0.5;
  for (int c = 0; c < clusters; ++c) {
    centre += testing::uniform(1.0, 2.0);
    for (int k = 0; k < per_cluster; ++k) w.push_back(centre + testing::uniform(-0.1, 0.1));
  }
  std::sort(w.begin(), w.end());
  const int n = static_cast<int>(w.size());
  for (int k = n - 1; k >= 0; --k) {
    d.indices.push_back(-(k + 1));
    d.frequencies.push_back(-w[static_cast<std::size_t>(k)]);
  }
  for (int k = 0; k < n; ++k) {
    d.indices.push_back(k + 1);
    d.frequencies.push_back(w[static_cast<std::size_t>(k)]);
  }
  d.operators.assign(d.indices.size(), ComplexMatrix::Zero(1, 1));
  d.x0 = ComplexMatrix::Zero(1, 1);
  return d;
}

TEST(GammaMatrix, RandomPartialSecularIsPsd) {
  for (int trial = 0; trial < 40; ++trial) {
    const BohrDecomposition d = random_frequency_set(1 + trial % 3, 1 + trial % 4);
    const BathSpec b = BathSpec::flat(testing::uniform(0.1, 10.0), 0.05);
    const GammaMatrix g = build_gamma_matrix(d, b, PartialSecularMode{0.25});
    EXPECT_GE(g.min_eigenvalue(), -1e-12 * max_abs(g.entries));
    EXPECT_LE(hermiticity_defect(g.entries), 1e-12 * max_abs(g.entries));
  }
}

TEST(GammaMatrix, ChainedPairingRejected) {
  // 1 ~ 1.2 ~ 1.4 under the cut, but 1 and 1.4 are not paired: no block
  // structure, and the resulting gamma has a negative eigenvalue.
  BohrDecomposition d;
  d.indices = {-3, -2, -1, 1, 2, 3};
  d.frequencies = {-1.4, -1.2, -1.0, 1.0, 1.2, 1.4};
  d.operators.assign(6, ComplexMatrix::Zero(1, 1));
  d.x0 = ComplexMatrix::Zero(1, 1);
  EXPECT_THROW(build_gamma_matrix(d, BathSpec::flat(1.0, 0.05), PartialSecularMode{0.25}), NumericalError);
  EXPECT_NO_THROW(build_gamma_matrix(d, BathSpec::flat(1.0, 0.05), PartialSecularMode{0.5}));
}

}  // namespace
}  // namespace lindgrain
