#include "bkopt/commands.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include "bkopt/baselines.hpp"
#include "bkopt/errors.hpp"
#include "bkopt/pde.hpp"
#include "bkopt/spectral.hpp"

namespace bkopt {

namespace fs = std::filesystem;
using io::json;

namespace {

constexpr int kExactModes = 64;
constexpr int kExactQuadNodes = 4096;

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

ScenarioSpec load_spec(const fs::path& config, const Overrides& ov, OptimizerConfig* optimizer = nullptr) {
  io::RunConfig rc = io::load_config(config);
  if (optimizer) *optimizer = rc.optimizer;
  return apply_overrides(std::move(rc.spec), ov);
}

void prepare_out_dir(const fs::path& out) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec || !fs::is_directory(out)) throw ConfigError("cannot create output directory " + out.string());
}

json error_json(const NumericalError& e) {
  json out = {{"kind", to_string(e.kind())}, {"message", e.what()}};
  if (e.time_index() >= 0) out["time_index"] = e.time_index();
  return out;
}

// Writes report.json describing a numerical failure, then rethrows it.
[[noreturn]] void fail(RunReport& run, const fs::path& out, json doc, const NumericalError& e) {
  doc["status"] = "numerical_failure";
  doc["error"] = error_json(e);
  const fs::path path = out / "report.json";
  io::write_json(path, doc);
  run.report = std::move(doc);
  run.artifacts.push_back(path);
  throw e;
}

void write_table(RunReport& run, const fs::path& path, const io::CsvTable& table) {
  io::write_csv(path, table);
  run.artifacts.push_back(path);
}

io::CsvTable control_table(const Grid& grid, const std::vector<double>& u) {
  io::CsvTable t;
  t.header = {"t", "u"};
  for (int j = 0; j <= grid.m(); ++j) t.rows.push_back({grid.t(j), u[static_cast<std::size_t>(j)]});
  return t;
}

io::CsvTable charfun_table(const Theta& theta) {
  io::CsvTable t;
  t.header = {"alpha", "g3"};
  const double top = kCharfunSpan * std::numbers::pi;
  for (int k = 0; k < kCharfunSamples; ++k) {
    const double a = top * k / (kCharfunSamples - 1);
    t.rows.push_back({a, g3(theta, a)});
  }
  return t;
}

io::CsvTable kernel_table(const Theta& theta, double c) {
  io::CsvTable t;
  t.header = {"xi", "optimized", "backstepping"};
  for (int k = 0; k < kKernelSamples; ++k) {
    const double xi = static_cast<double>(k) / (kKernelSamples - 1);
    t.rows.push_back({xi, kernel_eval(theta, xi), backstepping_kernel(c, xi)});
  }
  return t;
}

io::CsvTable roots_table(const SpectralReport& r) {
  io::CsvTable t;
  t.header = {"n", "alpha", "alpha_over_pi", "sigma", "Y", "residual"};
  for (std::size_t k = 0; k < r.roots.roots.size(); ++k) {
    const double a = r.roots.roots[k];
    t.rows.push_back({static_cast<double>(k + 1), a, a / std::numbers::pi, r.eigenvalues[k],
                      k < r.span_coefficients.size() ? r.span_coefficients[k] : std::nan(""),
                      r.roots.residuals[k]});
  }
  return t;
}

json artifact_list(const RunReport& run) {
  json out = json::array();
  for (const auto& p : run.artifacts) out.push_back(p.filename().string());
  return out;
}

}  // namespace

ScenarioSpec apply_overrides(ScenarioSpec spec, const Overrides& ov) {
  if (ov.n || ov.m || ov.T) {
    spec.grid = Grid(ov.n.value_or(spec.grid.n()), ov.m.value_or(spec.grid.m()), ov.T.value_or(spec.grid.T()));
  }
  if (ov.epsilon) spec.epsilon = *ov.epsilon;
  if (ov.span_modes) spec.span.modes = *ov.span_modes;
  if (ov.span_threshold) spec.span.threshold = *ov.span_threshold;
  spec.validate();
  return spec;
}

RunReport cmd_optimize(const fs::path& config, const fs::path& out, const Overrides& ov) {
  Stopwatch clock;
  OptimizerConfig oc;
  const ScenarioSpec spec = load_spec(config, ov, &oc);
  prepare_out_dir(out);

  RunReport run;
  run.scenario = spec.name;
  json doc = {{"command", "optimize"}, {"scenario", io::to_json(spec)}, {"optimizer", io::to_json(oc)}};

  OptimizationResult result;
  StateSolution state{Field(spec.grid), {}};
  try {
    result = optimize(spec, oc);
    state = solve_state(spec, result.decision.theta);
  } catch (const NumericalError& e) {
    fail(run, out, std::move(doc), e);
  }

  write_table(run, out / "history.csv", io::history_table(result.history));
  write_table(run, out / "state.csv", io::field_table(state.y));
  write_table(run, out / "control.csv", control_table(spec.grid, state.u));
  write_table(run, out / "kernel.csv", kernel_table(result.decision.theta, spec.c));
  write_table(run, out / "charfun.csv", charfun_table(result.decision.theta));

  doc["status"] = "ok";
  doc["result"] = io::to_json(result);
  doc["spectral"] = io::to_json(result.spectral);
  run.artifacts.push_back(out / "report.json");
  doc["artifacts"] = artifact_list(run);
  run.seconds = clock.seconds();
  doc["seconds"] = run.seconds;
  io::write_json(out / "report.json", doc);

  run.report = std::move(doc);
  run.spectral = result.spectral;
  run.optimization = std::move(result);
  return run;
}

RunReport cmd_simulate(const fs::path& config, const Theta& theta, const fs::path& out, const Overrides& ov) {
  Stopwatch clock;
  const ScenarioSpec spec = load_spec(config, ov);
  prepare_out_dir(out);

  RunReport run;
  run.scenario = spec.name;
  json doc = {{"command", "simulate"},
              {"scenario", io::to_json(spec)},
              {"theta", {{"theta1", theta.theta1}, {"theta2", theta.theta2}}}};

  StateSolution state{Field(spec.grid), {}};
  try {
    state = solve_state(spec, theta);
  } catch (const NumericalError& e) {
    fail(run, out, std::move(doc), e);
  }
  write_table(run, out / "state.csv", io::field_table(state.y));
  write_table(run, out / "control.csv", control_table(spec.grid, state.u));
  doc["cost"] = io::to_json(cost(spec, theta, state));

  if (theta.theta1 == 0.0 && theta.theta2 == 0.0) {
    const FourierInit fi = fourier_coefficients(spec.y0, kExactModes, kExactQuadNodes);
    const Field exact = uncontrolled_exact(fi, spec.c, spec.grid);
    double worst = 0.0;
    const auto a = state.y.data();
    const auto b = exact.data();
    for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
    write_table(run, out / "exact.csv", io::field_table(exact));
    doc["exact_max_discrepancy"] = worst;
  }

  doc["status"] = "ok";
  run.artifacts.push_back(out / "report.json");
  doc["artifacts"] = artifact_list(run);
  run.seconds = clock.seconds();
  doc["seconds"] = run.seconds;
  io::write_json(out / "report.json", doc);
  run.report = std::move(doc);
  return run;
}

RunReport cmd_certify(const fs::path& config, const Decision& decision, const fs::path& out, const Overrides& ov) {
  Stopwatch clock;
  const ScenarioSpec spec = load_spec(config, ov);
  if (!(decision.alpha >= 0.0) || !std::isfinite(decision.alpha)) throw ConfigError("alpha must be >= 0");
  prepare_out_dir(out);

  RunReport run;
  run.scenario = spec.name;
  json doc = {{"command", "certify"}, {"scenario", io::to_json(spec)}};

  SpectralReport report;
  try {
    report = certify(spec, decision);
  } catch (const NumericalError& e) {
    doc["decision"] = io::to_json(decision);
    fail(run, out, std::move(doc), e);
  }

  write_table(run, out / "roots.csv", roots_table(report));
  write_table(run, out / "charfun.csv", charfun_table(decision.theta));
  doc["status"] = "ok";
  doc["spectral"] = io::to_json(report);
  run.artifacts.push_back(out / "report.json");
  doc["artifacts"] = artifact_list(run);
  run.seconds = clock.seconds();
  doc["seconds"] = run.seconds;
  io::write_json(out / "report.json", doc);
  run.report = std::move(doc);
  run.spectral = std::move(report);
  return run;
}

SpectralReport recertify(const fs::path& report_json) {
  const json doc = io::read_json(report_json);
  try {
    const ScenarioSpec spec = io::spec_from_json(doc.at("scenario"));
    const Decision d = io::decision_from_json(doc.at("spectral").at("decision"));
    return certify(spec, d);
  } catch (const json::exception& e) {
    throw ConfigError(report_json.string() + ": " + e.what());
  }
}

}  // namespace bkopt
