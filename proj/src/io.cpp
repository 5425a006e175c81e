#include "bkopt/io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

#include "bkopt/errors.hpp"

namespace bkopt::io {

namespace {

void check_keys(const json& obj, std::string_view where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ConfigError(std::string(where) + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + std::string(where));
  }
}

const json& require(const json& obj, const std::string& key, std::string_view where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError("missing key '" + key + "' in " + std::string(where));
  return *it;
}

double number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("'" + key + "' must be a number");
  const double out = v.get<double>();
  if (!std::isfinite(out)) throw ConfigError("'" + key + "' must be finite");
  return out;
}

int integer(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError("'" + key + "' must be an integer");
  const auto out = v.get<long long>();
  if (out < std::numeric_limits<int>::min() || out > std::numeric_limits<int>::max()) {
    throw ConfigError("'" + key + "' is out of range");
  }
  return static_cast<int>(out);
}

double number_at(const json& obj, const std::string& key, std::string_view where) {
  return number(require(obj, key, where), key);
}

InitialCondition parse_y0(const json& doc) {
  if (!doc.is_object()) throw ConfigError("y0 must be an object");
  if (doc.contains("samples")) {
    check_keys(doc, "y0", {"samples"});
    const json& s = doc.at("samples");
    if (!s.is_array()) throw ConfigError("y0.samples must be an array");
    std::vector<double> values;
    values.reserve(s.size());
    for (const auto& v : s) values.push_back(number(v, "y0.samples[]"));
    return InitialCondition(SampledProfile{std::move(values)});
  }
  const json& preset = require(doc, "preset", "y0");
  if (!preset.is_string()) throw ConfigError("y0.preset must be a string");
  const auto name = preset.get<std::string>();
  if (name == "sin_pi") {
    check_keys(doc, "y0", {"preset"});
    return InitialCondition(SinPi{});
  }
  if (name == "envelope_sin") {
    check_keys(doc, "y0", {"preset", "a", "b", "freq"});
    return InitialCondition(
        EnvelopeSin{number_at(doc, "a", "y0"), number_at(doc, "b", "y0"), number_at(doc, "freq", "y0")});
  }
  throw ConfigError("unknown y0 preset '" + name + "'");
}

json y0_to_json(const InitialCondition& ic) {
  return std::visit(
      [](const auto& s) -> json {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, SinPi>) {
          return {{"preset", "sin_pi"}};
        } else if constexpr (std::is_same_v<S, EnvelopeSin>) {
          return {{"preset", "envelope_sin"}, {"a", s.a}, {"b", s.b}, {"freq", s.freq}};
        } else {
          return {{"samples", s.values}};
        }
      },
      ic.shape());
}

OptimizerConfig parse_optimizer(const json& doc) {
  check_keys(doc, "optimizer",
             {"max_iters", "max_outer", "grad_tol", "constraint_tol", "penalty_init", "penalty_growth", "armijo_c",
              "backtrack_factor", "min_step"});
  OptimizerConfig c;
  if (doc.contains("max_iters")) c.max_iters = integer(doc.at("max_iters"), "max_iters");
  if (doc.contains("max_outer")) c.max_outer = integer(doc.at("max_outer"), "max_outer");
  if (doc.contains("grad_tol")) c.grad_tol = number(doc.at("grad_tol"), "grad_tol");
  if (doc.contains("constraint_tol")) c.constraint_tol = number(doc.at("constraint_tol"), "constraint_tol");
  if (doc.contains("penalty_init")) c.penalty_init = number(doc.at("penalty_init"), "penalty_init");
  if (doc.contains("penalty_growth")) c.penalty_growth = number(doc.at("penalty_growth"), "penalty_growth");
  if (doc.contains("armijo_c")) c.armijo_c = number(doc.at("armijo_c"), "armijo_c");
  if (doc.contains("backtrack_factor")) c.backtrack_factor = number(doc.at("backtrack_factor"), "backtrack_factor");
  if (doc.contains("min_step")) c.min_step = number(doc.at("min_step"), "min_step");
  c.validate();
  return c;
}

std::vector<double> number_array(const json& v, const std::string& key) {
  if (!v.is_array()) throw ConfigError("'" + key + "' must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(e.get<double>());
  return out;
}

}  // namespace

ScenarioSpec spec_from_json(const json& doc) {
  check_keys(doc, "config",
             {"name", "c", "T", "n", "m", "y0", "bounds", "epsilon", "initial_guess", "span", "optimizer"});
  ScenarioSpec spec;
  if (doc.contains("name")) {
    if (!doc.at("name").is_string()) throw ConfigError("'name' must be a string");
    spec.name = doc.at("name").get<std::string>();
  }
  spec.c = number_at(doc, "c", "config");
  spec.grid = Grid(integer(require(doc, "n", "config"), "n"), integer(require(doc, "m", "config"), "m"),
                   number_at(doc, "T", "config"));
  spec.y0 = parse_y0(require(doc, "y0", "config"));
  if (doc.contains("bounds")) {
    const json& b = doc.at("bounds");
    check_keys(b, "bounds", {"a1", "b1", "a2", "b2"});
    spec.bounds = Bounds{number_at(b, "a1", "bounds"), number_at(b, "b1", "bounds"), number_at(b, "a2", "bounds"),
                         number_at(b, "b2", "bounds")};
  }
  spec.epsilon = number_at(doc, "epsilon", "config");
  spec.initial_guess = decision_from_json(require(doc, "initial_guess", "config"));
  if (doc.contains("span")) {
    const json& s = doc.at("span");
    check_keys(s, "span", {"N", "threshold", "refine"});
    if (s.contains("N")) spec.span.modes = integer(s.at("N"), "span.N");
    if (s.contains("threshold")) spec.span.threshold = number(s.at("threshold"), "span.threshold");
    if (s.contains("refine")) spec.span.refine = integer(s.at("refine"), "span.refine");
  }
  spec.validate();
  return spec;
}

Decision decision_from_json(const json& doc) {
  check_keys(doc, "decision", {"theta1", "theta2", "alpha"});
  return Decision{{number_at(doc, "theta1", "decision"), number_at(doc, "theta2", "decision")},
                  number_at(doc, "alpha", "decision")};
}

RunConfig parse_config(const json& doc) {
  try {
    RunConfig out;
    out.spec = spec_from_json(doc);
    if (doc.contains("optimizer")) out.optimizer = parse_optimizer(doc.at("optimizer"));
    return out;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

json to_json(const ScenarioSpec& spec) {
  return {
      {"name", spec.name},
      {"c", spec.c},
      {"T", spec.grid.T()},
      {"n", spec.grid.n()},
      {"m", spec.grid.m()},
      {"y0", y0_to_json(spec.y0)},
      {"bounds", {{"a1", spec.bounds.a1}, {"b1", spec.bounds.b1}, {"a2", spec.bounds.a2}, {"b2", spec.bounds.b2}}},
      {"epsilon", spec.epsilon},
      {"initial_guess", to_json(spec.initial_guess)},
      {"span", {{"N", spec.span.modes}, {"threshold", spec.span.threshold}, {"refine", spec.span.refine}}},
  };
}

json to_json(const OptimizerConfig& c) {
  return {{"max_iters", c.max_iters},         {"max_outer", c.max_outer},
          {"grad_tol", c.grad_tol},           {"constraint_tol", c.constraint_tol},
          {"penalty_init", c.penalty_init},   {"penalty_growth", c.penalty_growth},
          {"armijo_c", c.armijo_c},           {"backtrack_factor", c.backtrack_factor},
          {"min_step", c.min_step}};
}

json to_json(const Decision& d) {
  return {{"theta1", d.theta.theta1}, {"theta2", d.theta.theta2}, {"alpha", d.alpha}};
}

json to_json(const CostBreakdown& c) {
  return {{"state_term", c.state_term}, {"kernel_term", c.kernel_term}, {"total", c.total}};
}

json to_json(const SpectralReport& r) {
  return {
      {"decision", to_json(r.decision)},
      {"modes", r.modes},
      {"roots", r.roots.roots},
      {"root_residuals", r.roots.residuals},
      {"eigenvalues", r.eigenvalues},
      {"span_residual_J", r.span_residual_J},
      {"span_coefficients", r.span_coefficients},
      {"g1", r.g1},
      {"g1_ok", r.g1_ok},
      {"smallest_root_is_alpha", r.smallest_root_is_alpha},
      {"margin_ok", r.margin_ok},
      {"span_ok", r.span_ok},
      {"stable", r.stable},
      {"reasons", r.reasons},
  };
}

SpectralReport spectral_from_json(const json& doc) {
  try {
    SpectralReport r;
    r.decision = decision_from_json(doc.at("decision"));
    r.modes = doc.at("modes").get<int>();
    r.roots.roots = number_array(doc.at("roots"), "roots");
    r.roots.residuals = number_array(doc.at("root_residuals"), "root_residuals");
    r.eigenvalues = number_array(doc.at("eigenvalues"), "eigenvalues");
    r.span_residual_J = doc.at("span_residual_J").get<double>();
    r.span_coefficients = number_array(doc.at("span_coefficients"), "span_coefficients");
    r.g1 = doc.at("g1").get<double>();
    r.g1_ok = doc.at("g1_ok").get<bool>();
    r.smallest_root_is_alpha = doc.at("smallest_root_is_alpha").get<bool>();
    r.margin_ok = doc.at("margin_ok").get<bool>();
    r.span_ok = doc.at("span_ok").get<bool>();
    r.stable = doc.at("stable").get<bool>();
    r.reasons = doc.at("reasons").get<std::vector<std::string>>();
    return r;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("spectral report: ") + e.what());
  }
}

json to_json(const OptimizationResult& r) {
  json out = {
      {"decision", to_json(r.decision)},
      {"cost", to_json(r.cost_breakdown)},
      {"converged", r.converged},
      {"termination", to_string(r.termination)},
      {"iterations", r.history.empty() ? 0 : r.history.back().iteration},
      {"projected_gradient_norm", r.projected_gradient_norm},
      {"constraint_violation", r.constraint_violation},
      {"multipliers", {{"g1", r.multipliers[0]}, {"g2", r.multipliers[1]}, {"g3", r.multipliers[2]}}},
      {"penalty", r.penalty},
      {"spectral", to_json(r.spectral)},
  };
  if (!r.history.empty()) {
    const auto& first = r.history.front();
    const auto& last = r.history.back();
    out["history_summary"] = {
        {"records", r.history.size()},
        {"initial_cost", first.cost},
        {"initial_violation", first.constraint_violation},
        {"final_cost", last.cost},
        {"final_violation", last.constraint_violation},
        {"outer_loops", last.outer + 1},
    };
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (std::size_t k = 0; k < table.header.size(); ++k) out << (k ? "," : "") << table.header[k];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << format_double(row[k]);
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  CsvTable table;
  std::string line;
  if (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) table.header.push_back(cell);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (start <= line.size()) {
      const std::size_t end = std::min(line.find(',', start), line.size());
      double v = 0.0;
      const auto res = std::from_chars(line.data() + start, line.data() + end, v);
      if (res.ec != std::errc{}) throw std::runtime_error("bad number in " + path.string());
      row.push_back(v);
      start = end + 1;
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

CsvTable field_table(const Field& f) {
  const Grid& g = f.grid();
  CsvTable t;
  t.header.push_back("t");
  for (int i = 0; i <= g.n(); ++i) t.header.push_back("x=" + format_double(g.x(i)));
  t.rows.reserve(static_cast<std::size_t>(g.m() + 1));
  for (int j = 0; j <= g.m(); ++j) {
    std::vector<double> row;
    row.reserve(static_cast<std::size_t>(g.n() + 2));
    row.push_back(g.t(j));
    for (double v : f.level(j)) row.push_back(v);
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable history_table(const std::vector<IterateRecord>& history) {
  CsvTable t;
  t.header = {"iteration", "outer", "theta1", "theta2", "alpha", "cost", "violation", "step", "merit"};
  for (const auto& r : history) {
    t.rows.push_back({static_cast<double>(r.iteration), static_cast<double>(r.outer), r.decision.theta.theta1,
                      r.decision.theta.theta2, r.decision.alpha, r.cost, r.constraint_violation, r.step_length,
                      r.merit});
  }
  return t;
}

void write_json(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return json::parse(in);
}

}  // namespace bkopt::io
