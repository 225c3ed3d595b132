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

#include "lindgrain/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lindgrain/error.hpp"
#include "lindgrain/operators.hpp"

namespace lindgrain {

std::vector<DensityMatrix> evolve(const Superoperator& l, const DensityMatrix& rho0,
                                  const std::vector<double>& t_grid) {
  if (rho0.dim() != l.dim) throw PreconditionError("evolve: rho0 dimension does not match L");
  if (t_grid.empty() || t_grid.front() != 0.0) throw PreconditionError("evolve: t_grid must start at 0");
  if (!std::is_sorted(t_grid.begin(), t_grid.end())) throw PreconditionError("evolve: t_grid must ascend");
  const ComplexVector v0 = vec(rho0.matrix());
  std::vector<DensityMatrix> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    ComplexMatrix rho = unvec(matexp_apply(l.matrix, v0, t), l.dim);
    const double drift = std::abs(rho.trace() - Complex(1.0));
    if (drift > 1e-8) {
      throw NumericalError("evolve: trace drift " + std::to_string(drift) + " at t = " + std::to_string(t));
    }
    try {
      out.emplace_back(std::move(rho), DensityTolerance{1e-8, 1e-8});
    } catch (const PreconditionError& e) {
      throw NumericalError(std::string("evolve: state left the physical set at t = ") + std::to_string(t) +
                           ": " + e.what());
    }
  }
  return out;
}

SteadyStateResult steady_state(const Superoperator& l) {
  const double norm = spectral_norm(l.matrix);
  if (trace_preservation_defect(l) > 1e-8 * std::max(1.0, norm)) {
    throw PreconditionError("steady_state: generator is not trace preserving");
  }
  const auto kernel = null_space(l.matrix, 1e-10 * norm);
  if (kernel.empty()) throw NumericalError("steady_state: L has no kernel at tolerance 1e-10 ||L||");
  const Eigen::Index d = l.dim;
  ComplexMatrix rho;
  if (kernel.size() == 1) {
    rho = unvec(kernel.front(), d);
  } else {
    ComplexVector x = ComplexVector::Zero(d * d);
    const ComplexVector mixed = vec(ops::identity(d) / static_cast<double>(d));
    for (const ComplexVector& k : kernel) x += k * k.dot(mixed);
    rho = unvec(x, d);
  }
  const Complex tr = rho.trace();
  if (std::abs(tr) < 1e-12) throw NumericalError("steady_state: kernel element is traceless");
  rho /= tr;
  rho = (0.5 * (rho + rho.adjoint())).eval();
  const double residual = (l.matrix * vec(rho)).norm();
  try {
    DensityMatrix dm(rho);
    return {std::move(dm), static_cast<int>(kernel.size()), residual};
  } catch (const PreconditionError& e) {
    throw NumericalError(std::string("steady_state: no physical kernel element: ") + e.what());
  }
}

HeatCurrentReport heat_current(const SystemModel& model, const std::vector<ReservoirTerm>& terms,
                               const DensityMatrix& rho, const std::string& hot_label,
                               const std::string& cold_label) {
  HeatCurrentReport report;
  for (const ReservoirTerm& t : terms) {
    report.per_reservoir[t.label] = (model.h.matrix() * t.dissipator.apply(rho.matrix())).trace().real();
  }
  for (const std::string& label : {hot_label, cold_label}) {
    if (report.per_reservoir.count(label) == 0) {
      throw PreconditionError("heat_current: no reservoir labelled '" + label + "'");
    }
  }
  report.net_convention = report.per_reservoir.at(hot_label) - report.per_reservoir.at(cold_label);
  return report;
}

HeatCurrentReport heat_current(const SystemModel& model, const DensityMatrix& rho,
                               const std::string& hot_label, const std::string& cold_label) {
  return heat_current(model, reservoir_terms(model), rho, hot_label, cold_label);
}

JumpChannels jump_channels(const BohrDecomposition& d, const GammaMatrix& g, const std::string& label) {
  if (!is_limit_mode(g.mode)) {
    throw UnsupportedModelError("jump_channels: exact-mode gamma couples emission and absorption terms");
  }
  if (g.indices != d.indices) throw PreconditionError("jump_channels: gamma indices do not match decomposition");
  JumpChannels out;
  const double scale = std::max(max_abs(g.entries), 1e-300);
  for (JumpDirection dir : {JumpDirection::kLoss, JumpDirection::kGain}) {
    std::vector<Eigen::Index> block;
    for (std::size_t k = 0; k < d.size(); ++k) {
      if ((d.frequencies[k] > 0) == (dir == JumpDirection::kGain)) block.push_back(static_cast<Eigen::Index>(k));
    }
    if (block.empty()) continue;
    const Eigen::Index nb = static_cast<Eigen::Index>(block.size());
    ComplexMatrix sub(nb, nb);
    for (Eigen::Index i = 0; i < nb; ++i)
      for (Eigen::Index j = 0; j < nb; ++j) sub(i, j) = g.entries(block[i], block[j]);
    const EigenSystem es = hermitian_eig(HermitianOperator(sub));
    for (Eigen::Index k = 0; k < nb; ++k) {
      const double lambda = es.values(k);
      if (lambda < -1e-12 * scale) throw NumericalError("jump_channels: gamma block is not PSD");
      if (lambda <= 1e-14 * scale) continue;
      ComplexMatrix a = ComplexMatrix::Zero(d.dim(), d.dim());
      for (Eigen::Index m = 0; m < nb; ++m) a += es.vectors(m, k) * d.operators[block[m]];
      JumpChannel c{label, dir, lambda, std::sqrt(lambda) * a};
      (dir == JumpDirection::kGain ? out.gain : out.loss).push_back(std::move(c));
    }
  }
  return out;
}

JumpChannels jump_channels(const std::vector<ReservoirTerm>& terms) {
  JumpChannels all;
  for (const ReservoirTerm& t : terms) {
    JumpChannels c = jump_channels(t.decomposition, t.gamma, t.label);
    all.loss.insert(all.loss.end(), c.loss.begin(), c.loss.end());
    all.gain.insert(all.gain.end(), c.gain.begin(), c.gain.end());
  }
  return all;
}

DensityMatrix post_jump_state(const JumpChannels& channels, const DensityMatrix& rho, JumpDirection direction) {
  const auto& list = direction == JumpDirection::kGain ? channels.gain : channels.loss;
  ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (const JumpChannel& c : list) {
    if (c.op.rows() != rho.dim()) throw PreconditionError("post_jump_state: dimension mismatch");
    out += c.op * rho.matrix() * c.op.adjoint();
  }
  const double p = out.trace().real();
  if (!(p > 1e-300)) throw PreconditionError("post_jump_state: zero jump probability for this state");
  return DensityMatrix(out / p);
}

}  // namespace lindgrain
