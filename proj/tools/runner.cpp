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

#include "runner.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "lindgrain/dynamics.hpp"
#include "lindgrain/error.hpp"

namespace lindgrain::cli {

using nlohmann::json;

namespace {

struct TaskOutput {
  std::string extension;  // json | csv
  std::string content;
};

/// Failure inside a task; remembers which task for the diagnostic.
struct TaskFailure {
  std::string pointer;
  std::exception_ptr error;
};

void dump_into(const json& j, int indent, std::string& s) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        s += "{}";
        return;
      }
      s += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) s += ",\n";
        first = false;
        s += inner + json(it.key()).dump() + ": ";
        dump_into(it.value(), indent + 1, s);
      }
      s += "\n" + pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        s += "[]";
        return;
      }
      // Arrays of scalars stay on one line; they are matrix rows and [re, im] pairs.
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      if (flat) {
        s += "[";
        for (std::size_t k = 0; k < j.size(); ++k) {
          if (k) s += ", ";
          dump_into(j[k], indent + 1, s);
        }
        s += "]";
        return;
      }
      s += "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) s += ",\n";
        s += inner;
        dump_into(j[k], indent + 1, s);
      }
      s += "\n" + pad + "]";
      return;
    }
    case json::value_t::number_float:
      s += format_number(j.get<double>());
      return;
    default:
      s += j.dump();
  }
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json vector_json(const RealVector& v) {
  json a = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(v(k));
  return a;
}

std::string csv_row(const std::vector<double>& row) {
  std::string s;
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (k) s += ',';
    s += format_number(row[k]);
  }
  return s + "\n";
}

std::string csv(const std::string& units, const std::vector<std::string>& header,
                const std::vector<std::vector<double>>& rows) {
  std::string s = "# " + units + "\n";
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (k) s += ',';
    s += header[k];
  }
  s += "\n";
  for (const auto& r : rows) s += csv_row(r);
  return s;
}

struct Steady {
  std::vector<ReservoirTerm> terms;
  SteadyStateResult result;
};

Steady solve_steady(const SystemModel& model) {
  std::vector<ReservoirTerm> terms = reservoir_terms(model);
  const Superoperator l = assemble_liouvillian(model, terms);
  return {std::move(terms), steady_state(l)};
}

double net_current(const SystemModel& model, const std::string& hot, const std::string& cold) {
  const Steady s = solve_steady(model);
  return heat_current(model, s.terms, s.result.rho_ss, hot, cold).net_convention;
}

RealVector eigen_populations(const SystemModel& model, const ComplexMatrix& rho) {
  const EigenSystem es = hermitian_eig(model.h);
  return (es.vectors.adjoint() * rho * es.vectors).diagonal().real();
}

double two_qubit_p0(const ComplexMatrix& rho) {
  const ComplexMatrix v = models::two_qubit_eigenbasis();
  const ComplexMatrix r = v.adjoint() * rho * v;
  return (r(1, 2) + r(2, 1)).real();
}

double partial_cut(const ModelSpec& spec) {
  if (const auto* p = std::get_if<PartialSecularMode>(&spec.mode)) return p->omega_cut;
  return spec.omega_s();
}

TaskOutput run_gamma(const ModelSpec& spec) {
  const SystemModel model = spec.build();
  json reservoirs = json::array();
  for (const ReservoirTerm& t : reservoir_terms(model)) {
    json r;
    r["label"] = t.label;
    r["indices"] = t.gamma.indices;
    r["frequencies"] = t.gamma.frequencies;
    r["gamma"] = matrix_json(t.gamma.entries);
    r["min_eigenvalue"] = t.gamma.min_eigenvalue();
    r["has_zero_frequency"] = t.decomposition.has_zero_frequency;
    r["grouping_ambiguous"] = t.decomposition.grouping_ambiguous;
    if (model.include_lamb_shift) {
      const auto& ex = std::get<ExactMode>(model.mode);
      r["lamb_shift"] = matrix_json(lamb_shift(t.decomposition, model.coupling(t.label).bath, ex.dt).matrix());
    }
    reservoirs.push_back(r);
  }
  json j;
  j["task"] = "gamma";
  j["mode"] = mode_name(model.mode);
  j["reservoirs"] = reservoirs;
  return {"json", dump_json(j)};
}

TaskOutput run_evolve(const ModelSpec& spec, const TaskSpec& task) {
  const SystemModel model = spec.build();
  const Superoperator l = assemble_liouvillian(model);
  std::vector<double> grid(static_cast<std::size_t>(task.n_points));
  for (int k = 0; k < task.n_points; ++k) grid[static_cast<std::size_t>(k)] = task.t_max * k / (task.n_points - 1);
  const std::vector<DensityMatrix> traj = evolve(l, DensityMatrix(task.rho0), grid);
  const Eigen::Index d = model.dim();
  std::vector<std::string> header{"t"};
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      header.push_back(fmt::format("re_rho_{}_{}", i, j));
      header.push_back(fmt::format("im_rho_{}_{}", i, j));
    }
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    std::vector<double> row{grid[k]};
    const ComplexMatrix& r = traj[k].matrix();
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        row.push_back(r(i, j).real());
        row.push_back(r(i, j).imag());
      }
    }
    rows.push_back(std::move(row));
  }
  return {"csv", csv("t in units of 1/omega_s (hbar = k_B = 1); rho in the computational basis", header, rows)};
}

TaskOutput run_steady(const ModelSpec& spec) {
  const SystemModel model = spec.build();
  const Steady s = solve_steady(model);
  const ComplexMatrix& rho = s.result.rho_ss.matrix();
  json j;
  j["task"] = "steady";
  j["mode"] = mode_name(model.mode);
  j["rho"] = matrix_json(rho);
  j["energies"] = vector_json(hermitian_eig(model.h).values);
  j["populations"] = vector_json(eigen_populations(model, rho));
  j["multiplicity"] = s.result.multiplicity;
  j["residual"] = s.result.residual;
  j["min_eigenvalue"] = s.result.rho_ss.min_eigenvalue();
  if (spec.kind == "two_qubit") j["p0"] = two_qubit_p0(rho);
  return {"json", dump_json(j)};
}

TaskOutput run_current(const ModelSpec& spec, const TaskSpec& task) {
  const SystemModel model = spec.build();
  const Steady s = solve_steady(model);
  const HeatCurrentReport rep = heat_current(model, s.terms, s.result.rho_ss, task.hot, task.cold);
  json j;
  j["task"] = "current";
  j["mode"] = mode_name(model.mode);
  j["hot"] = task.hot;
  j["cold"] = task.cold;
  j["per_reservoir"] = rep.per_reservoir;
  j["net"] = rep.net_convention;
  j["convention"] = "net = J_hot - J_cold, J_p = Tr[H D_p(rho_ss)]";
  return {"json", dump_json(j)};
}

std::vector<double> sweep_cell(const ModelSpec& base, const TaskSpec& task, double x) {
  if (task.quantity == "gamma_deviation") {
    const Complex ex = gamma_exact(task.omega_m, task.omega_n, x, *task.bath);
    const CoarseGraining lim = task.omega_m == task.omega_n ? CoarseGraining{FullSecularMode{}}
                                                            : CoarseGraining{PartialSecularMode{std::numeric_limits<double>::infinity()}};
    const double gl = gamma_limit(task.omega_m, task.omega_n, *task.bath, lim);
    return {x, ex.real(), ex.imag(), gl, std::abs(ex - gl)};
  }
  const ModelSpec spec = with_variable(base, task.variable, x);
  if (task.quantity == "current") {
    if (spec.kind == "custom") return {x, net_current(spec.build(), task.hot, task.cold)};
    return {x, net_current(spec.build(FullSecularMode{}), task.hot, task.cold),
            net_current(spec.build(PartialSecularMode{partial_cut(spec)}), task.hot, task.cold)};
  }
  const SystemModel model = spec.build();
  const Steady s = solve_steady(model);
  if (task.quantity == "p0") return {x, two_qubit_p0(s.result.rho_ss.matrix())};
  std::vector<double> row{x};
  const RealVector pops = eigen_populations(model, s.result.rho_ss.matrix());
  for (Eigen::Index k = 0; k < pops.size(); ++k) row.push_back(pops(k));
  return row;
}

TaskOutput run_sweep(const ModelSpec& base, const TaskSpec& task, int jobs) {
  const std::size_t n = task.grid.size();
  std::vector<std::vector<double>> rows(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      try {
        rows[k] = sweep_cell(base, task, task.grid[k]);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  // Report the first failure in grid order so the diagnostic does not depend on scheduling.
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<std::string> header{task.variable};
  std::string units = task.variable + " in units of omega_s (hbar = k_B = 1)";
  if (task.quantity == "gamma_deviation") {
    header.insert(header.end(), {"re_gamma_exact", "im_gamma_exact", "gamma_limit", "deviation"});
    units = fmt::format("dt in units of 1/omega; omega_m = {}, omega_n = {}; rates in units of omega",
                        format_number(task.omega_m), format_number(task.omega_n));
  } else if (task.quantity == "current") {
    if (base.kind == "custom") {
      header.push_back("J");
    } else {
      header.insert(header.end(), {"J_sec", "J_parsec"});
    }
    units += fmt::format("; J = J_{} - J_{} in units of omega_s^2", task.hot, task.cold);
  } else if (task.quantity == "p0") {
    header.push_back("p0");
    units += "; p0 = rho_{+-} + rho_{-+} in the energy eigenbasis";
  } else {
    for (std::size_t k = 0; k + 1 < rows.front().size(); ++k) header.push_back(fmt::format("p_{}", k));
    units += "; populations in the energy eigenbasis, ascending energy";
  }
  return {"csv", csv(units, header, rows)};
}

TaskOutput run_task(const RunConfig& cfg, const TaskSpec& task, int jobs) {
  if (task.type == "gamma") return run_gamma(cfg.model);
  if (task.type == "evolve") return run_evolve(cfg.model, task);
  if (task.type == "steady") return run_steady(cfg.model);
  if (task.type == "current") return run_current(cfg.model, task);
  return run_sweep(cfg.model, task, jobs);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot read configuration file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // fold -0
  return fmt::format("{:.16e}", x);
}

std::string dump_json(const json& j) {
  std::string s;
  dump_into(j, 0, s);
  return s + "\n";
}

std::string resolve_output_dir(const std::optional<std::string>& flag, const std::string& from_config) {
  if (flag && !flag->empty()) return *flag;
  if (const char* env = std::getenv("LINDGRAIN_OUT"); env && *env) return env;
  return from_config.empty() ? std::string("lindgrain_out") : from_config;
}

int execute(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_config(read_file(opts.config_path));
  } catch (const ConfigError& e) {
    err << opts.config_path << ":" << e.line() << ": error: " << (e.pointer().empty() ? "" : e.pointer() + ": ")
        << e.what() << "\n";
    return kConfigFailure;
  }

  std::vector<std::size_t> selected;
  for (std::size_t k = 0; k < cfg.tasks.size(); ++k) {
    if (opts.command != "sweep" || cfg.tasks[k].type == "sweep") selected.push_back(k);
  }
  if (selected.empty()) {
    err << opts.config_path << ": error: /tasks: no sweep task in configuration\n";
    return kConfigFailure;
  }
  if (opts.command == "validate") {
    out << opts.config_path << ": ok (" << cfg.tasks.size() << " task" << (cfg.tasks.size() == 1 ? "" : "s") << ")\n";
    return kOk;
  }

  const std::filesystem::path dir = resolve_output_dir(opts.out_dir, cfg.output_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    err << dir.string() << ": error: cannot create output directory: " << ec.message() << "\n";
    return kConfigFailure;
  }

  for (std::size_t k : selected) {
    const TaskSpec& task = cfg.tasks[k];
    try {
      const TaskOutput o = run_task(cfg, task, opts.jobs);
      const std::string name = fmt::format("task{:02d}_{}.{}", k, task.type, o.extension);
      write_file(dir / name, o.content);
      out << (dir / name).string() << "\n";
    } catch (const NumericalError& e) {
      err << opts.config_path << ": numerical failure: " << task.pointer << ": " << e.what() << "\n";
      return kNumericalFailure;
    } catch (const Error& e) {
      err << opts.config_path << ": error: " << task.pointer << ": " << e.what() << "\n";
      return kConfigFailure;
    } catch (const std::exception& e) {
      err << opts.config_path << ": error: " << task.pointer << ": " << e.what() << "\n";
      return kConfigFailure;
    }
  }
  return kOk;
}

}  // namespace lindgrain::cli
