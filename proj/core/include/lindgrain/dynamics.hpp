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

#include <map>
#include <string>
#include <vector>

#include "lindgrain/lindblad.hpp"
#include "lindgrain/linalg.hpp"

namespace lindgrain {

/// rho(t_k) = exp(L t_k) rho0. t_grid must start at 0 and ascend.
/// Throws NumericalError if the trace drifts by more than 1e-8 or an
/// eigenvalue drops below -1e-8.
std::vector<DensityMatrix> evolve(const Superoperator& l, const DensityMatrix& rho0,
                                  const std::vector<double>& t_grid);

struct SteadyStateResult {
  DensityMatrix rho_ss;
  int multiplicity = 0;
  double residual = 0.0;  // ||L vec(rho_ss)||
  bool degenerate() const { return multiplicity > 1; }
};

/// Kernel of L at singular-value threshold 1e-10 ||L||. A degenerate kernel
/// returns the projection of I/d onto it, normalized.
SteadyStateResult steady_state(const Superoperator& l);

struct HeatCurrentReport {
  /// J_p = Tr[H_S D_p[rho]]; positive when energy flows from p into the system.
  std::map<std::string, double> per_reservoir;
  /// J_hot - J_cold, the difference convention of the closed forms.
  double net_convention = 0.0;
};

HeatCurrentReport heat_current(const SystemModel& model, const std::vector<ReservoirTerm>& terms,
                               const DensityMatrix& rho, const std::string& hot_label,
                               const std::string& cold_label);
HeatCurrentReport heat_current(const SystemModel& model, const DensityMatrix& rho,
                               const std::string& hot_label, const std::string& cold_label);

enum class JumpDirection { kGain, kLoss };

/// One term rate * A rho A^dag of the dissipator's sandwich part.
struct JumpChannel {
  std::string label;        // reservoir label, empty for a bare decomposition
  JumpDirection direction;  // gain: system absorbs (w > 0); loss: system emits (w < 0)
  double rate = 0.0;
  ComplexMatrix op;         // sqrt(rate) * A
};

struct JumpChannels {
  std::vector<JumpChannel> loss;
  std::vector<JumpChannel> gain;
};

/// Diagonalizes gamma inside each sign block. Exact-mode gamma is rejected.
JumpChannels jump_channels(const BohrDecomposition& d, const GammaMatrix& g, const std::string& label = {});
JumpChannels jump_channels(const std::vector<ReservoirTerm>& terms);

/// sum_k C_k rho C_k^dag over the chosen direction, trace-normalized.
DensityMatrix post_jump_state(const JumpChannels& channels, const DensityMatrix& rho,
                              JumpDirection direction);

}  // namespace lindgrain
