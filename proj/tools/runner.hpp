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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "config.hpp"

namespace lindgrain::cli {

enum ExitCode : int { kOk = 0, kConfigFailure = 1, kNumericalFailure = 2 };

struct RunOptions {
  std::string command;  // run | sweep | validate
  std::string config_path;
  int jobs = 1;
  std::optional<std::string> out_dir;
  bool seedless = false;
};

/// 17 significant digits, scientific notation.
std::string format_number(double x);

/// Deterministic JSON text: sorted keys, two-space indent, format_number for floats.
std::string dump_json(const nlohmann::json& j);

/// Output directory precedence: --out, then LINDGRAIN_OUT, then the config.
std::string resolve_output_dir(const std::optional<std::string>& flag, const std::string& from_config);

int execute(const RunOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace lindgrain::cli
