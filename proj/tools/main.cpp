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

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"lindgrain: coarse-grained Lindblad master equations"};
  app.require_subcommand(1);

  lindgrain::cli::RunOptions opts;
  std::string out_dir;
  app.add_option("--jobs,-j", opts.jobs, "worker threads for sweep cells")->check(CLI::PositiveNumber);
  app.add_option("--out,-o", out_dir, "output directory (overrides LINDGRAIN_OUT and the config)");
  app.add_flag("--seedless", opts.seedless, "assert a deterministic run; no task in this tool draws random numbers");
  app.fallthrough();

  for (const char* name : {"run", "sweep", "validate"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("config", opts.config_path, "JSON configuration file")->required();
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : lindgrain::cli::kConfigFailure;
  }
  opts.command = app.get_subcommands().front()->get_name();
  if (!out_dir.empty()) opts.out_dir = out_dir;
  return lindgrain::cli::execute(opts, std::cout, std::cerr);
}
