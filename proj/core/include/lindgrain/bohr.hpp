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
#include <vector>

#include "lindgrain/linalg.hpp"

namespace lindgrain {

/// Bohr-frequency eigenoperators {(omega_m, X_m)} of a coupling X under H.
///
/// Entries are stored in ascending frequency: indices run -N..-1, 1..N and
/// index(k) gives the signed label of entry k. The zero-frequency part X_0
/// is carried separately and never enters limit-mode gamma matrices.
struct BohrDecomposition {
  std::vector<int> indices;
  std::vector<double> frequencies;
  std::vector<ComplexMatrix> operators;
  ComplexMatrix x0;
  bool has_zero_frequency = false;
  /// Set when freq_tol merged distinct gaps or exceeded the smallest gap.
  bool grouping_ambiguous = false;
  double freq_tol = 0.0;
  RealVector levels;      // distinct eigenvalues of H, ascending
  ComplexMatrix basis;    // eigenvectors of H (columns)

  std::size_t size() const { return frequencies.size(); }
  Eigen::Index dim() const { return x0.rows(); }
  /// Position of signed index m, or throws.
  std::size_t position(int m) const;
  const ComplexMatrix& op(int m) const { return operators[position(m)]; }
  double omega(int m) const { return frequencies[position(m)]; }
};

/// Decompose X into eigenoperators of H. freq_tol defaults to 1e-9 times
/// the largest Bohr gap.
BohrDecomposition bohr_decompose(const HermitianOperator& h, const HermitianOperator& x,
                                 std::optional<double> freq_tol = std::nullopt);

/// ||sum_m X_m e^{i w_m t} + X_0 - e^{iHt} X e^{-iHt}||_max.
double interaction_picture_check(const BohrDecomposition& d, const HermitianOperator& h,
                                 const HermitianOperator& x, double t);

}  // namespace lindgrain
