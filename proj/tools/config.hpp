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

// Run-configuration model for the lindgrain command-line tool.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "lindgrain/bath.hpp"
#include "lindgrain/lindblad.hpp"
#include "lindgrain/models.hpp"

namespace lindgrain::cli {

/// Invalid configuration; carries the JSON pointer and source line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string pointer, const std::string& message, int line = 0)
      : std::runtime_error(message), pointer_(std::move(pointer)), line_(line) {}
  const std::string& pointer() const { return pointer_; }
  int line() const { return line_; }
  void set_line(int line) { line_ = line; }

 private:
  std::string pointer_;
  int line_;
};

/// JSON pointer -> 1-based line of the value it names.
std::map<std::string, int> locate_pointers(const std::string& text);

struct CustomCoupling {
  std::string label;
  ComplexMatrix x;
  BathSpec bath;
};

struct ModelSpec {
  std::string kind;  // two_qubit | tunnelling | custom
  models::TwoQubitParams two_qubit;
  models::TunnellingParams tunnelling;
  ComplexMatrix custom_h;
  std::vector<CustomCoupling> custom_couplings;
  CoarseGraining mode = FullSecularMode{};
  bool flattened = false;
  bool include_lamb_shift = false;

  SystemModel build() const;
  SystemModel build(const CoarseGraining& mode_override) const;
  double omega_s() const;
  std::string default_hot() const;
  std::string default_cold() const;
};

struct GridSpec {
  std::vector<double> values;
};

struct TaskSpec {
  std::string type;     // gamma | evolve | steady | current | sweep
  std::string pointer;  // /tasks/i
  // evolve
  double t_max = 0.0;
  int n_points = 0;
  ComplexMatrix rho0;  // validated density matrix
  // current
  std::string hot;
  std::string cold;
  // sweep
  std::string variable;
  std::string quantity;
  std::vector<double> grid;
  std::optional<BathSpec> bath;  // gamma_deviation
  double omega_m = 1.0;
  double omega_n = 1.0;
};

struct RunConfig {
  ModelSpec model;
  std::vector<TaskSpec> tasks;
  std::string output_dir;
};

/// Parse and validate. Throws ConfigError with line numbers filled in.
RunConfig parse_config(const std::string& text);

/// Apply one sweep variable to a copy of the model.
ModelSpec with_variable(const ModelSpec& base, const std::string& variable, double value);

inline const std::vector<std::string>& sweep_variables() {
  static const std::vector<std::string> v{"Omega", "gamma", "dt", "T_h", "T_c", "T_l", "T_r"};
  return v;
}

}  // namespace lindgrain::cli
