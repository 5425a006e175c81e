#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <string>

#include "bkopt/commands.hpp"
#include "bkopt/errors.hpp"
#include "bkopt/io.hpp"
#include "support.hpp"

using namespace bkopt;
namespace fs = std::filesystem;
using std::numbers::pi;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(BKOPT_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

fs::path write_config(const fs::path& dir, const std::string& name, const io::json& doc) {
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << doc.dump(2);
  return p;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("optimize writes every artifact and round-trips") {
    const auto out = testing::scratch_dir("opt1");
    const RunReport r = cmd_optimize(testing::config_path(1), out);
    for (const char* name : {"report.json", "history.csv", "state.csv", "control.csv", "kernel.csv", "charfun.csv"}) {
      CHECK_MESSAGE(fs::exists(out / name), name);
    }
    for (const auto& p : r.artifacts) CHECK(fs::exists(p));
    REQUIRE(r.optimization);
    CHECK(r.optimization->spectral.stable);
    CHECK(std::abs(r.optimization->cost_breakdown.total - 0.1712) <= 0.01);

    // Re-reading report.json and re-certifying gives the same report.
    CHECK(recertify(out / "report.json") == r.optimization->spectral);
    CHECK(io::spectral_from_json(io::read_json(out / "report.json").at("spectral")) == r.optimization->spectral);

    // CSVs hold the in-memory values bit for bit.
    const auto hist = io::read_csv(out / "history.csv");
    REQUIRE(hist.rows.size() == r.optimization->history.size());
    for (std::size_t k = 0; k < hist.rows.size(); ++k) {
      const auto& rec = r.optimization->history[k];
      REQUIRE(hist.rows[k][2] == rec.decision.theta.theta1);
      REQUIRE(hist.rows[k][3] == rec.decision.theta.theta2);
      REQUIRE(hist.rows[k][4] == rec.decision.alpha);
      REQUIRE(hist.rows[k][5] == rec.cost);
      REQUIRE(hist.rows[k][6] == rec.constraint_violation);
    }
    const auto spec = testing::scenario(1);
    const auto state = solve_state(spec, r.optimization->decision.theta);
    const auto st = io::read_csv(out / "state.csv");
    REQUIRE(st.rows.size() == static_cast<std::size_t>(spec.grid.m() + 1));
    for (int j = 0; j <= spec.grid.m(); j += 37)
      for (int i = 0; i <= spec.grid.n(); ++i)
        REQUIRE(st.rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i + 1)] == state.y(i, j));
    const auto ctl = io::read_csv(out / "control.csv");
    for (int j = 0; j <= spec.grid.m(); ++j) REQUIRE(ctl.rows[static_cast<std::size_t>(j)][1] == state.u[static_cast<std::size_t>(j)]);

    const auto ker = io::read_csv(out / "kernel.csv");
    CHECK(ker.rows.size() == 200);
    CHECK(ker.rows.back()[2] == -5.0);
    const auto cf = io::read_csv(out / "charfun.csv");
    CHECK(cf.rows.back()[0] == doctest::Approx(12.0 * pi));
  }

  TEST_CASE("simulate at zero kernel emits the exact solution") {
    const auto out = testing::scratch_dir("sim0");
    const RunReport r = cmd_simulate(testing::config_path(1), {0.0, 0.0}, out);
    CHECK(fs::exists(out / "exact.csv"));
    CHECK(fs::exists(out / "state.csv"));
    CHECK(fs::exists(out / "control.csv"));
    // The discrepancy is the scheme's own truncation error: the discrete mode
    // grows with g = 1 + c tau - 4 r sin^2(pi h / 2) per step.
    const Grid g(14, 5000, 4.0);
    const double s = std::sin(pi * g.h() / 2.0);
    const double amp = std::pow(1.0 + 10.0 * g.tau() - 4.0 * g.r() * s * s, g.m());
    const double predicted = amp - std::exp(4.0 * (10.0 - pi * pi));
    CHECK(r.report.at("exact_max_discrepancy").get<double>() == doctest::Approx(predicted).epsilon(1e-6));
  }

  TEST_CASE("simulate at the reference optimum decays") {
    const auto out = testing::scratch_dir("simopt");
    cmd_simulate(testing::config_path(1), testing::kReferenceOptimum[0].theta, out);
    const auto ctl = io::read_csv(out / "control.csv");
    CHECK(std::abs(ctl.rows.back()[1]) < 0.05 * std::abs(ctl.rows[ctl.rows.size() / 8][1]) + 1e-12);
  }

  TEST_CASE("certify tables") {
    const auto out = testing::scratch_dir("cert0");
    const RunReport r = cmd_certify(testing::config_path(1), {{0.0, 0.0}, pi}, out);
    REQUIRE(r.spectral);
    CHECK_FALSE(r.spectral->stable);
    const auto roots = io::read_csv(out / "roots.csv");
    REQUIRE(roots.rows.size() == 10);
    for (std::size_t k = 0; k < 10; ++k) {
      CHECK(std::abs(roots.rows[k][1] - (k + 1) * pi) <= 1e-9);
      CHECK(std::abs(roots.rows[k][2] - static_cast<double>(k + 1)) <= 1e-9);
    }
  }

  TEST_CASE("subcritical reaction with zero kernel certifies") {
    const auto dir = testing::scratch_dir("c5");
    auto doc = io::read_json(testing::config_path(1));
    doc["c"] = 5;
    doc["initial_guess"] = {{"theta1", 0}, {"theta2", 0}, {"alpha", 0}};
    const auto cfg = write_config(dir, "c5.json", doc);
    const RunReport r = cmd_certify(cfg, {{0.0, 0.0}, pi}, dir / "out");
    CHECK(r.spectral->stable);
    CHECK(r.spectral->eigenvalues[0] == doctest::Approx(5.0 - pi * pi));
  }

  TEST_CASE("overrides take precedence") {
    Overrides ov;
    ov.n = 16;
    ov.m = 6000;
    ov.epsilon = 0.5;
    ov.span_modes = 6;
    ov.span_threshold = 0.5;
    const auto spec = apply_overrides(testing::scenario(1), ov);
    CHECK(spec.grid == Grid(16, 6000, 4.0));
    CHECK(spec.epsilon == 0.5);
    CHECK(spec.span.modes == 6);
    CHECK(spec.span.threshold == 0.5);
    ov.n = 15;
    CHECK_THROWS_AS(apply_overrides(testing::scenario(1), ov), ConfigError);
  }

  TEST_CASE("exit status contract") {
    const auto base = testing::scratch_dir("exit");
    CHECK(run_cli("") == 1);
    CHECK(run_cli("optimize") == 1);
    CHECK(run_cli("--help") == 0);

    const auto cfg_dir = base / "cfg";
    fs::create_directories(cfg_dir);
    std::ofstream(cfg_dir / "broken.json") << "{\"c\": 10, \"n\": 13}";
    CHECK(run_cli("optimize --config " + q(cfg_dir / "broken.json") + " --out " + q(base / "broken")) == 1);
    CHECK_FALSE(fs::exists(base / "broken"));

    CHECK(run_cli("simulate --config " + q(testing::config_path(1)) + " --theta1 28 --out " + q(base / "pole")) == 2);
    const auto rep = io::read_json(base / "pole" / "report.json");
    CHECK(rep.at("error").at("kind") == "boundary_closure_singular");
    CHECK_FALSE(fs::exists(base / "pole" / "state.csv"));

    auto blow = io::read_json(testing::config_path(1));
    blow["c"] = 200;
    const auto blow_cfg = write_config(cfg_dir, "blow.json", blow);
    CHECK(run_cli("simulate --config " + q(blow_cfg) + " --out " + q(base / "blow")) == 2);
    const auto brep = io::read_json(base / "blow" / "report.json");
    CHECK(brep.at("error").at("kind") == "blow_up");
    CHECK(brep.at("error").at("time_index").get<long>() > 0);

    CHECK(run_cli("certify --config " + q(testing::config_path(1)) +
                  " --theta1 0 --theta2 0 --alpha 3.14159 --span-N 3 --out " + q(base / "cert")) == 0);
    CHECK(io::read_csv(base / "cert" / "roots.csv").rows.size() == 3);
    CHECK(run_cli("simulate --config " + q(testing::config_path(1)) + " --n 16 --m 6000 --out " + q(base / "ov")) ==
          0);
    CHECK(io::read_json(base / "ov" / "report.json").at("scenario").at("n") == 16);
  }

  TEST_CASE("several configs run concurrently into separate directories") {
    const auto base = testing::scratch_dir("jobs");
    const std::string cfgs = "--config " + q(testing::config_path(1)) + " --config " + q(testing::config_path(2));
    CHECK(run_cli("simulate " + cfgs + " --jobs 2 --out " + q(base)) == 0);
    CHECK(fs::exists(base / "scenario1" / "state.csv"));
    CHECK(fs::exists(base / "scenario2" / "state.csv"));
  }
}
