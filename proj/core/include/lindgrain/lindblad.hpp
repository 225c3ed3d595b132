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
#include <vector>

#include "lindgrain/bath.hpp"
#include "lindgrain/bohr.hpp"
#include "lindgrain/linalg.hpp"

namespace lindgrain {

/// d^2 x d^2 generator acting on column-stacked vec(rho).
struct Superoperator {
  Eigen::Index dim = 0;
  ComplexMatrix matrix;

  static Superoperator zero(Eigen::Index d);
  ComplexMatrix apply(const ComplexMatrix& rho) const;
  Superoperator operator+(const Superoperator& other) const;
  Superoperator operator-(const Superoperator& other) const;
};

/// ||(vec I)^dag L||_max; zero for a trace-preserving generator.
double trace_preservation_defect(const Superoperator& s);

/// ||L(rho^dag) - L(rho)^dag||_max for the given rho.
double hermiticity_preservation_defect(const Superoperator& s, const ComplexMatrix& rho);

struct Coupling {
  HermitianOperator x;
  BathSpec bath;
};

/// H_S plus reservoir couplings V = sum_p B_p X_p.
struct SystemModel {
  HermitianOperator h;
  std::vector<Coupling> couplings;
  CoarseGraining mode = FullSecularMode{};
  GammaOptions gamma_options;
  /// Add the coarse-grained energy shift to H_S (exact mode only).
  bool include_lamb_shift = false;
  std::optional<double> freq_tol;

  Eigen::Index dim() const { return h.dim(); }
  /// Checks shared dimension, unique labels and bath validity.
  void validate() const;
  const Coupling& coupling(const std::string& label) const;
};

/// Everything built for one reservoir.
struct ReservoirTerm {
  std::string label;
  BohrDecomposition decomposition;
  GammaMatrix gamma;
  Superoperator dissipator;
};

/// D[rho] = sum_mn gamma_mn (X_m rho X_n^dag - 1/2 {X_n^dag X_m, rho}).
Superoperator dissipator_from_gamma(const BohrDecomposition& d, const GammaMatrix& g);

/// Energy shift Delta H of the coarse-graining window dt, X_0 included.
HermitianOperator lamb_shift(const BohrDecomposition& d, const BathSpec& bath, double dt);

std::vector<ReservoirTerm> reservoir_terms(const SystemModel& model);

/// L = -i[H_S, .] + sum_p D_p.
Superoperator assemble_liouvillian(const SystemModel& model);

/// Same as assemble_liouvillian but reuses already-built reservoir terms.
Superoperator assemble_liouvillian(const SystemModel& model, const std::vector<ReservoirTerm>& terms);

struct CanonicalCheck {
  bool is_cp = false;
  double min_choi_eig = 0.0;
};

/// GKS test: Choi matrix of L compressed to the complement of the maximally
/// entangled vector; completely positive iff min eigenvalue >= -1e-10.
CanonicalCheck lindblad_canonical_check(const Superoperator& s);

}  // namespace lindgrain
