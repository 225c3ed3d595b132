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

#include "lindgrain/bohr.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lindgrain/error.hpp"

namespace lindgrain {

std::size_t BohrDecomposition::position(int m) const {
  const auto it = std::find(indices.begin(), indices.end(), m);
  if (it == indices.end()) {
    throw PreconditionError("BohrDecomposition: no eigenoperator with index " + std::to_string(m));
  }
  return static_cast<std::size_t>(it - indices.begin());
}

namespace {

struct Gap {
  double omega;
  std::size_t a;
  std::size_t b;
};

}  // namespace

BohrDecomposition bohr_decompose(const HermitianOperator& h, const HermitianOperator& x,
                                 std::optional<double> freq_tol) {
  if (h.dim() != x.dim()) {
    throw PreconditionError("bohr_decompose: H is " + std::to_string(h.dim()) + "-dimensional, X is " +
                            std::to_string(x.dim()) + "-dimensional");
  }
  const EigenSystem es = hermitian_eig(h);
  const Eigen::Index d = h.dim();
  const double spread = es.values(d - 1) - es.values(0);
  const double tol = freq_tol.value_or(spread > 0 ? 1e-9 * spread : 1e-9);
  if (!(tol > 0)) throw PreconditionError("bohr_decompose: freq_tol must be positive");

  BohrDecomposition out;
  out.freq_tol = tol;
  out.basis = es.vectors;

  // Degenerate levels become projectors, so X_m does not depend on the
  // arbitrary basis chosen inside a degenerate subspace.
  std::vector<std::vector<Eigen::Index>> groups;
  std::vector<double> level_values;
  bool merged_levels = false;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (!groups.empty() && es.values(i) - es.values(groups.back().front()) <= tol) {
      // Merging levels that are distinct beyond roundoff is a modelling choice.
      if (es.values(i) - es.values(groups.back().front()) > 1e-12 * std::max(1.0, spread)) merged_levels = true;
      groups.back().push_back(i);
    } else {
      groups.push_back({i});
    }
  }
  std::vector<ComplexMatrix> proj;
  for (const auto& g : groups) {
    ComplexMatrix p = ComplexMatrix::Zero(d, d);
    double mean = 0;
    for (Eigen::Index i : g) {
      p += es.vectors.col(i) * es.vectors.col(i).adjoint();
      mean += es.values(i);
    }
    proj.push_back(p);
    level_values.push_back(mean / static_cast<double>(g.size()));
  }
  out.levels = Eigen::Map<RealVector>(level_values.data(), static_cast<Eigen::Index>(level_values.size()));

  const std::size_t nl = groups.size();
  const double xscale = std::max(max_abs(x.matrix()), 1e-300);
  std::vector<std::vector<ComplexMatrix>> block(nl, std::vector<ComplexMatrix>(nl));
  out.x0 = ComplexMatrix::Zero(d, d);
  std::vector<Gap> positive;
  double smallest_gap = INFINITY;
  for (std::size_t a = 0; a < nl; ++a) {
    for (std::size_t b = 0; b < nl; ++b) {
      block[a][b] = proj[a] * x.matrix() * proj[b];
      const double w = level_values[a] - level_values[b];
      if (a != b) smallest_gap = std::min(smallest_gap, std::abs(w));
      if (max_abs(block[a][b]) <= 1e-13 * xscale) continue;
      if (std::abs(w) <= tol) {
        out.x0 += block[a][b];
        out.has_zero_frequency = true;
        if (a != b) out.grouping_ambiguous = true;
      } else if (w > 0) {
        positive.push_back({w, a, b});
      }
    }
  }
  if (tol >= smallest_gap || merged_levels) out.grouping_ambiguous = true;

  std::sort(positive.begin(), positive.end(),
            [](const Gap& l, const Gap& r) { return l.omega < r.omega; });
  // Single-linkage clustering of positive gaps; negative frequencies are
  // mirrored so that omega_{-m} = -omega_m and X_{-m} = X_m^dag hold exactly.
  std::vector<std::vector<Gap>> clusters;
  for (const Gap& g : positive) {
    if (!clusters.empty() && g.omega - clusters.back().back().omega <= tol) {
      if (g.omega - clusters.back().back().omega > 1e-14 * std::max(1.0, g.omega)) {
        out.grouping_ambiguous = true;
      }
      clusters.back().push_back(g);
    } else {
      clusters.push_back({g});
    }
  }
  const int n = static_cast<int>(clusters.size());
  std::vector<double> wpos;
  std::vector<ComplexMatrix> xpos;
  for (const auto& c : clusters) {
    double mean = 0;
    ComplexMatrix xm = ComplexMatrix::Zero(d, d);
    for (const Gap& g : c) {
      mean += g.omega;
      xm += block[g.a][g.b];
    }
    wpos.push_back(mean / static_cast<double>(c.size()));
    xpos.push_back(xm);
  }
  for (int k = n - 1; k >= 0; --k) {
    out.indices.push_back(-(k + 1));
    out.frequencies.push_back(-wpos[k]);
    out.operators.push_back(xpos[k].adjoint());
  }
  for (int k = 0; k < n; ++k) {
    out.indices.push_back(k + 1);
    out.frequencies.push_back(wpos[k]);
    out.operators.push_back(xpos[k]);
  }
  return out;
}

double interaction_picture_check(const BohrDecomposition& d, const HermitianOperator& h,
                                 const HermitianOperator& x, double t) {
  if (h.dim() != x.dim() || d.dim() != h.dim()) {
    throw PreconditionError("interaction_picture_check: dimension mismatch");
  }
  ComplexMatrix sum = d.x0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    sum += d.operators[k] * std::exp(kI * d.frequencies[k] * t);
  }
  const ComplexMatrix u = unitary_propagator(h, t);
  return max_abs(sum - u * x.matrix() * u.adjoint());
}

}  // namespace lindgrain
