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

#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "lindgrain/error.hpp"

namespace lindgrain::cli {

using nlohmann::json;

namespace {

// Minimal JSON scanner that records the line of every value. It only has to
// agree with nlohmann on well-formed input; malformed input never gets here.
class PointerScanner {
 public:
  explicit PointerScanner(const std::string& text) : s_(text) {}

  std::map<std::string, int> run() {
    skip_ws();
    value("");
    return out_;
  }

 private:
  static std::string escape(const std::string& key) {
    std::string r;
    for (char c : key) {
      if (c == '~') r += "~0";
      else if (c == '/') r += "~1";
      else r += c;
    }
    return r;
  }

  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) {
      if (s_[i_] == '\n') ++line_;
      ++i_;
    }
  }

  std::string string_token() {
    std::string r;
    ++i_;  // opening quote
    while (i_ < s_.size() && s_[i_] != '"') {
      if (s_[i_] == '\\' && i_ + 1 < s_.size()) {
        r += s_[i_ + 1];
        i_ += 2;
        continue;
      }
      r += s_[i_++];
    }
    ++i_;
    return r;
  }

  void value(const std::string& ptr) {
    if (i_ >= s_.size()) return;
    out_.emplace(ptr, line_);
    const char c = s_[i_];
    if (c == '{') {
      ++i_;
      skip_ws();
      while (i_ < s_.size() && s_[i_] != '}') {
        const std::string key = string_token();
        skip_ws();
        ++i_;  // ':'
        skip_ws();
        value(ptr + "/" + escape(key));
        skip_ws();
        if (i_ < s_.size() && s_[i_] == ',') ++i_;
        skip_ws();
      }
      ++i_;
    } else if (c == '[') {
      ++i_;
      skip_ws();
      int k = 0;
      while (i_ < s_.size() && s_[i_] != ']') {
        value(ptr + "/" + std::to_string(k++));
        skip_ws();
        if (i_ < s_.size() && s_[i_] == ',') ++i_;
        skip_ws();
      }
      ++i_;
    } else if (c == '"') {
      string_token();
    } else {
      while (i_ < s_.size() && s_[i_] != ',' && s_[i_] != '}' && s_[i_] != ']' &&
             !std::isspace(static_cast<unsigned char>(s_[i_]))) {
        ++i_;
      }
    }
  }

  const std::string& s_;
  std::size_t i_ = 0;
  int line_ = 1;
  std::map<std::string, int> out_;
};

[[noreturn]] void fail(const std::string& ptr, const std::string& msg) { throw ConfigError(ptr, msg); }

const json& member(const json& obj, const std::string& key, const std::string& ptr) {
  if (!obj.is_object()) fail(ptr, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(ptr, "missing required key '" + key + "'");
  return *it;
}

double number(const json& v, const std::string& ptr) {
  if (!v.is_number()) fail(ptr, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(ptr, "expected a finite number");
  return x;
}

double number_at(const json& obj, const std::string& key, const std::string& ptr) {
  return number(member(obj, key, ptr), ptr + "/" + key);
}

std::string string_at(const json& obj, const std::string& key, const std::string& ptr) {
  const json& v = member(obj, key, ptr);
  if (!v.is_string()) fail(ptr + "/" + key, "expected a string");
  return v.get<std::string>();
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& ptr) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (allowed.count(it.key()) == 0) fail(ptr + "/" + it.key(), "unknown key '" + it.key() + "'");
  }
}

ComplexMatrix parse_matrix(const json& v, const std::string& ptr) {
  if (!v.is_array() || v.empty()) fail(ptr, "expected a non-empty array of rows");
  const Eigen::Index n = static_cast<Eigen::Index>(v.size());
  ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::string rp = ptr + "/" + std::to_string(i);
    const json& row = v[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) fail(rp, "expected a row of length " + std::to_string(n));
    for (Eigen::Index j = 0; j < n; ++j) {
      const std::string ep = rp + "/" + std::to_string(j);
      const json& e = row[static_cast<std::size_t>(j)];
      if (e.is_number()) {
        m(i, j) = number(e, ep);
      } else if (e.is_array() && e.size() == 2) {
        m(i, j) = Complex(number(e[0], ep + "/0"), number(e[1], ep + "/1"));
      } else {
        fail(ep, "expected a number or an [re, im] pair");
      }
    }
  }
  return m;
}

BathSpec parse_bath(const json& v, const std::string& ptr, const std::string& label) {
  const std::string type = string_at(v, "type", ptr);
  try {
    if (type == "flat") {
      reject_unknown(v, {"type", "T", "gamma"}, ptr);
      return BathSpec::flat(number_at(v, "T", ptr), number_at(v, "gamma", ptr), label);
    }
    if (type == "ohmic") {
      reject_unknown(v, {"type", "T", "eta", "cutoff"}, ptr);
      return BathSpec::ohmic(number_at(v, "T", ptr), number_at(v, "eta", ptr), number_at(v, "cutoff", ptr), label);
    }
  } catch (const PreconditionError& e) {
    fail(ptr, e.what());
  }
  fail(ptr + "/type", "unknown bath type '" + type + "' (expected flat or ohmic)");
}

// default_cut is NaN when the model has no natural scale.
CoarseGraining parse_mode(const json& v, const std::string& ptr, double default_cut) {
  const std::string type = v.is_string() ? v.get<std::string>() : string_at(v, "type", ptr);
  if (type == "full_secular") return FullSecularMode{};
  if (type == "partial_secular") {
    if (v.is_object() && v.contains("omega_cut")) {
      const double cut = number_at(v, "omega_cut", ptr);
      if (cut < 0) fail(ptr + "/omega_cut", "omega_cut must be >= 0");
      return PartialSecularMode{cut};
    }
    if (std::isnan(default_cut)) fail(ptr, "partial_secular mode needs omega_cut for a custom model");
    return PartialSecularMode{default_cut};
  }
  if (type == "exact") {
    if (!v.is_object()) fail(ptr, "exact mode needs an object with dt");
    const double dt = number_at(v, "dt", ptr);
    if (!(dt > 0)) fail(ptr + "/dt", "dt must be > 0");
    return ExactMode{dt};
  }
  fail(v.is_string() ? ptr : ptr + "/type",
       "unknown mode '" + type + "' (expected exact, full_secular or partial_secular)");
}

std::vector<double> parse_grid(const json& v, const std::string& ptr) {
  std::vector<double> g;
  if (v.is_array()) {
    for (std::size_t k = 0; k < v.size(); ++k) g.push_back(number(v[k], ptr + "/" + std::to_string(k)));
  } else if (v.is_object()) {
    reject_unknown(v, {"start", "stop", "num", "spacing"}, ptr);
    const double a = number_at(v, "start", ptr);
    const double b = number_at(v, "stop", ptr);
    const json& nj = member(v, "num", ptr);
    if (!nj.is_number_integer() || nj.get<long>() < 1) fail(ptr + "/num", "num must be a positive integer");
    const int n = nj.get<int>();
    const std::string spacing = v.contains("spacing") ? string_at(v, "spacing", ptr) : "linear";
    if (spacing != "linear" && spacing != "log") fail(ptr + "/spacing", "spacing must be linear or log");
    if (spacing == "log" && !(a > 0 && b > 0)) fail(ptr, "log spacing needs positive start and stop");
    for (int k = 0; k < n; ++k) {
      const double f = n == 1 ? 0.0 : static_cast<double>(k) / (n - 1);
      g.push_back(spacing == "log" ? std::exp(std::log(a) + f * (std::log(b) - std::log(a))) : a + f * (b - a));
    }
    g.front() = a;
    if (n > 1) g.back() = b;
  } else {
    fail(ptr, "grid must be an array or {start, stop, num, spacing}");
  }
  if (g.empty()) fail(ptr, "grid must not be empty");
  return g;
}

void parse_params(ModelSpec& m, const json& v, const std::string& ptr) {
  if (!v.is_object()) fail(ptr, "expected an object");
  if (m.kind == "two_qubit") {
    reject_unknown(v, {"omega_s", "Omega", "gamma_h", "gamma_c", "T_h", "T_c"}, ptr);
    auto& p = m.two_qubit;
    p.omega_s = number_at(v, "omega_s", ptr);
    p.omega = number_at(v, "Omega", ptr);
    p.gamma_h = number_at(v, "gamma_h", ptr);
    p.gamma_c = number_at(v, "gamma_c", ptr);
    p.T_h = number_at(v, "T_h", ptr);
    p.T_c = number_at(v, "T_c", ptr);
  } else if (m.kind == "tunnelling") {
    reject_unknown(v, {"omega_s", "Omega", "gamma", "T_l", "T_r"}, ptr);
    auto& p = m.tunnelling;
    p.omega_s = number_at(v, "omega_s", ptr);
    p.omega = number_at(v, "Omega", ptr);
    p.gamma = number_at(v, "gamma", ptr);
    p.T_l = number_at(v, "T_l", ptr);
    p.T_r = number_at(v, "T_r", ptr);
  }
}

void parse_custom(ModelSpec& m, const json& v, const std::string& ptr) {
  reject_unknown(v, {"H", "couplings"}, ptr);
  m.custom_h = parse_matrix(member(v, "H", ptr), ptr + "/H");
  const json& cs = member(v, "couplings", ptr);
  if (!cs.is_array() || cs.empty()) fail(ptr + "/couplings", "expected a non-empty array");
  for (std::size_t k = 0; k < cs.size(); ++k) {
    const std::string cp = ptr + "/couplings/" + std::to_string(k);
    reject_unknown(cs[k], {"label", "X", "bath"}, cp);
    const std::string label = string_at(cs[k], "label", cp);
    ComplexMatrix x = parse_matrix(member(cs[k], "X", cp), cp + "/X");
    if (x.rows() != m.custom_h.rows()) fail(cp + "/X", "X must have the same dimension as H");
    m.custom_couplings.push_back({label, std::move(x), parse_bath(member(cs[k], "bath", cp), cp + "/bath", label)});
  }
}

ComplexMatrix parse_rho0(const json& v, const std::string& ptr, const ModelSpec& model) {
  const HermitianOperator hop = model.build().h;
  const ComplexMatrix& h = hop.matrix();
  const Eigen::Index d = h.rows();
  ComplexMatrix rho;
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "maximally_mixed") {
      rho = ComplexMatrix::Identity(d, d) / static_cast<double>(d);
    } else if (s == "ground") {
      const EigenSystem es = hermitian_eig(hop);
      rho = es.vectors.col(0) * es.vectors.col(0).adjoint();
    } else {
      fail(ptr, "unknown initial state '" + s + "' (expected ground or maximally_mixed)");
    }
  } else if (v.is_object() && v.size() == 1) {
    if (v.contains("gibbs")) {
      const double temp = number_at(v, "gibbs", ptr);
      if (!(temp > 0)) fail(ptr + "/gibbs", "temperature must be > 0");
      const EigenSystem es = hermitian_eig(hop);
      RealVector w = (-(es.values.array() - es.values.minCoeff()) / temp).exp();
      w /= w.sum();
      rho = es.vectors * w.cast<Complex>().asDiagonal() * es.vectors.adjoint();
    } else if (v.contains("matrix")) {
      rho = parse_matrix(v.at("matrix"), ptr + "/matrix");
    } else if (v.contains("diagonal")) {
      const json& dg = v.at("diagonal");
      if (!dg.is_array() || static_cast<Eigen::Index>(dg.size()) != d) {
        fail(ptr + "/diagonal", "expected " + std::to_string(d) + " populations");
      }
      rho = ComplexMatrix::Zero(d, d);
      for (Eigen::Index k = 0; k < d; ++k) {
        rho(k, k) = number(dg[static_cast<std::size_t>(k)], ptr + "/diagonal/" + std::to_string(k));
      }
    } else {
      fail(ptr, "expected one of gibbs, matrix or diagonal");
    }
  } else {
    fail(ptr, "expected a state name or an object");
  }
  if (rho.rows() != d) fail(ptr, "initial state must be " + std::to_string(d) + "x" + std::to_string(d));
  try {
    return DensityMatrix(rho).matrix();
  } catch (const PreconditionError& e) {
    fail(ptr, std::string("not a density matrix: ") + e.what());
  }
}

TaskSpec parse_task(const json& v, const std::string& ptr, const ModelSpec& model) {
  TaskSpec t;
  t.pointer = ptr;
  t.type = string_at(v, "type", ptr);
  const bool builtin = model.kind != "custom";
  if (t.type == "gamma" || t.type == "steady") {
    reject_unknown(v, {"type"}, ptr);
  } else if (t.type == "evolve") {
    reject_unknown(v, {"type", "t_max", "n_points", "rho0"}, ptr);
    t.t_max = number_at(v, "t_max", ptr);
    if (!(t.t_max > 0)) fail(ptr + "/t_max", "t_max must be > 0");
    const json& np = member(v, "n_points", ptr);
    if (!np.is_number_integer() || np.get<long>() < 2) fail(ptr + "/n_points", "n_points must be an integer >= 2");
    t.n_points = np.get<int>();
    t.rho0 = parse_rho0(v.contains("rho0") ? v.at("rho0") : json("maximally_mixed"), ptr + "/rho0", model);
  } else if (t.type == "current") {
    reject_unknown(v, {"type", "hot", "cold"}, ptr);
    t.hot = v.contains("hot") ? string_at(v, "hot", ptr) : model.default_hot();
    t.cold = v.contains("cold") ? string_at(v, "cold", ptr) : model.default_cold();
    if (t.hot.empty() || t.cold.empty()) fail(ptr, "custom models need explicit hot and cold labels");
  } else if (t.type == "sweep") {
    reject_unknown(v, {"type", "variable", "grid", "quantity", "hot", "cold", "bath", "omega_m", "omega_n"}, ptr);
    t.variable = string_at(v, "variable", ptr);
    const auto& vars = sweep_variables();
    if (std::find(vars.begin(), vars.end(), t.variable) == vars.end()) {
      fail(ptr + "/variable", "unknown sweep variable '" + t.variable + "' (expected Omega, gamma, dt, T_h, T_c, T_l or T_r)");
    }
    t.grid = parse_grid(member(v, "grid", ptr), ptr + "/grid");
    t.quantity = v.contains("quantity") ? string_at(v, "quantity", ptr) : "current";
    t.hot = v.contains("hot") ? string_at(v, "hot", ptr) : model.default_hot();
    t.cold = v.contains("cold") ? string_at(v, "cold", ptr) : model.default_cold();
    if (t.quantity == "gamma_deviation") {
      if (t.variable != "dt") fail(ptr + "/variable", "gamma_deviation sweeps dt");
      t.bath = parse_bath(member(v, "bath", ptr), ptr + "/bath", "scan");
      if (!t.bath->is_ohmic()) fail(ptr + "/bath", "gamma_deviation needs an Ohmic bath");
      t.omega_m = v.contains("omega_m") ? number_at(v, "omega_m", ptr) : 1.0;
      t.omega_n = v.contains("omega_n") ? number_at(v, "omega_n", ptr) : t.omega_m;
      if (t.omega_m == 0 || t.omega_n == 0) fail(ptr, "omega_m and omega_n must be nonzero");
      for (std::size_t k = 0; k < t.grid.size(); ++k) {
        if (!(t.grid[k] > 0)) fail(ptr + "/grid", "dt values must be > 0");
      }
    } else if (t.quantity == "current") {
      if (t.hot.empty() || t.cold.empty()) fail(ptr, "custom models need explicit hot and cold labels");
    } else if (t.quantity == "p0") {
      if (model.kind != "two_qubit") fail(ptr + "/quantity", "p0 is defined for the two_qubit model only");
    } else if (t.quantity != "steady") {
      fail(ptr + "/quantity", "unknown quantity '" + t.quantity + "' (expected current, p0, steady or gamma_deviation)");
    }
    if (t.quantity != "gamma_deviation") {
      const std::string& var = t.variable;
      const bool ok = (var == "Omega" && builtin) || (var == "gamma" && builtin) ||
                      ((var == "T_h" || var == "T_c") && model.kind == "two_qubit") ||
                      ((var == "T_l" || var == "T_r") && model.kind == "tunnelling") ||
                      (var == "dt" && std::holds_alternative<ExactMode>(model.mode));
      if (!ok) fail(ptr + "/variable", "variable '" + var + "' does not apply to this model and mode");
      for (double x : t.grid) {
        try {
          (void)with_variable(model, var, x).build();
        } catch (const PreconditionError& e) {
          fail(ptr + "/grid", std::string("grid value rejected: ") + e.what());
        }
      }
    }
  } else {
    fail(ptr + "/type", "unknown task type '" + t.type + "' (expected gamma, evolve, steady, current or sweep)");
  }
  return t;
}

RunConfig parse_checked(const json& root) {
  if (!root.is_object()) fail("", "configuration must be a JSON object");
  reject_unknown(root, {"model", "params", "custom", "mode", "flags", "tasks", "output_dir"}, "");
  RunConfig cfg;
  ModelSpec& m = cfg.model;
  m.kind = string_at(root, "model", "");
  if (m.kind == "two_qubit" || m.kind == "tunnelling") {
    parse_params(m, member(root, "params", ""), "/params");
    if (root.contains("custom")) fail("/custom", "custom matrices are only read for model 'custom'");
  } else if (m.kind == "custom") {
    if (root.contains("params")) fail("/params", "params are not used by the custom model");
    parse_custom(m, member(root, "custom", ""), "/custom");
  } else {
    fail("/model", "unknown model '" + m.kind + "' (expected two_qubit, tunnelling or custom)");
  }
  const double default_cut = m.kind == "custom" ? std::nan("") : m.omega_s();
  m.mode = root.contains("mode") ? parse_mode(root.at("mode"), "/mode", default_cut) : CoarseGraining{FullSecularMode{}};
  if (root.contains("flags")) {
    const json& f = root.at("flags");
    reject_unknown(f, {"flattened_occupations", "include_lamb_shift"}, "/flags");
    for (const char* key : {"flattened_occupations", "include_lamb_shift"}) {
      if (f.contains(key) && !f.at(key).is_boolean()) fail(std::string("/flags/") + key, "expected true or false");
    }
    m.flattened = f.value("flattened_occupations", false);
    m.include_lamb_shift = f.value("include_lamb_shift", false);
  }
  if (m.include_lamb_shift && !std::holds_alternative<ExactMode>(m.mode)) {
    fail("/flags/include_lamb_shift", "the energy shift needs exact mode (a finite dt)");
  }
  if (std::holds_alternative<ExactMode>(m.mode)) {
    if (m.kind != "custom") fail("/mode", "built-in models use flat baths; exact mode needs a custom model with Ohmic baths");
    for (std::size_t k = 0; k < m.custom_couplings.size(); ++k) {
      if (!m.custom_couplings[k].bath.is_ohmic()) {
        fail("/custom/couplings/" + std::to_string(k) + "/bath", "exact mode needs an Ohmic bath");
      }
    }
  }
  try {
    (void)m.build();
  } catch (const Error& e) {
    fail(m.kind == "custom" ? "/custom" : "/params", e.what());
  }
  const json& tasks = member(root, "tasks", "");
  if (!tasks.is_array()) fail("/tasks", "expected an array");
  if (tasks.empty()) fail("/tasks", "task list is empty");
  for (std::size_t k = 0; k < tasks.size(); ++k) {
    cfg.tasks.push_back(parse_task(tasks[k], "/tasks/" + std::to_string(k), m));
  }
  if (root.contains("output_dir")) cfg.output_dir = string_at(root, "output_dir", "");
  return cfg;
}

}  // namespace

std::map<std::string, int> locate_pointers(const std::string& text) { return PointerScanner(text).run(); }

SystemModel ModelSpec::build() const { return build(mode); }

SystemModel ModelSpec::build(const CoarseGraining& m) const {
  SystemModel model = [&] {
    if (kind == "two_qubit") return models::build_two_qubit(two_qubit, m, flattened);
    if (kind == "tunnelling") return models::build_tunnelling(tunnelling, m, flattened);
    SystemModel s{HermitianOperator(custom_h), {}, m, {}, false, std::nullopt};
    for (const CustomCoupling& c : custom_couplings) s.couplings.push_back({HermitianOperator(c.x), c.bath});
    return s;
  }();
  model.include_lamb_shift = include_lamb_shift;
  if (flattened && kind == "custom") {
    throw PreconditionError("flattened occupations need a reference frequency; use a built-in model");
  }
  model.validate();
  return model;
}

double ModelSpec::omega_s() const {
  if (kind == "two_qubit") return two_qubit.omega_s;
  if (kind == "tunnelling") return tunnelling.omega_s;
  return 0.0;
}

std::string ModelSpec::default_hot() const {
  if (kind == "two_qubit") return models::kHot;
  if (kind == "tunnelling") return models::kLeft;
  return {};
}

std::string ModelSpec::default_cold() const {
  if (kind == "two_qubit") return models::kCold;
  if (kind == "tunnelling") return models::kRight;
  return {};
}

ModelSpec with_variable(const ModelSpec& base, const std::string& variable, double value) {
  ModelSpec m = base;
  if (variable == "Omega") {
    m.two_qubit.omega = value;
    m.tunnelling.omega = value;
  } else if (variable == "gamma") {
    // Single-reservoir convention for the two-qubit model: gamma is gamma_c.
    m.two_qubit.gamma_c = value;
    m.tunnelling.gamma = value;
  } else if (variable == "T_h") {
    m.two_qubit.T_h = value;
  } else if (variable == "T_c") {
    m.two_qubit.T_c = value;
  } else if (variable == "T_l") {
    m.tunnelling.T_l = value;
  } else if (variable == "T_r") {
    m.tunnelling.T_r = value;
  } else if (variable == "dt") {
    if (std::holds_alternative<ExactMode>(m.mode)) m.mode = ExactMode{value};
  }
  return m;
}

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    int line = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    for (std::size_t k = 0; k + 1 < upto; ++k) line += text[k] == '\n';
    std::string msg = e.what();
    if (const auto pos = msg.find("parse error"); pos != std::string::npos) msg = msg.substr(pos);
    throw ConfigError("", msg, line);
  }
  try {
    return parse_checked(root);
  } catch (ConfigError& e) {
    const auto lines = locate_pointers(text);
    // Walk up the pointer until a located ancestor is found.
    std::string p = e.pointer();
    while (true) {
      if (const auto it = lines.find(p); it != lines.end()) {
        e.set_line(it->second);
        break;
      }
      if (p.empty()) break;
      p = p.substr(0, p.rfind('/'));
    }
    throw;
  }
}

}  // namespace lindgrain::cli
