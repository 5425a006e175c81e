// bkopt: optimize, simulate and certify finite-dimensional boundary kernels.
//
// Exit status: 0 success, 1 usage or config error, 2 numerical failure.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <mutex>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "bkopt/commands.hpp"
#include "bkopt/errors.hpp"

namespace fs = std::filesystem;
using namespace bkopt;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;

struct CommonArgs {
  std::vector<std::string> configs;
  std::string out = "out";
  int jobs = 1;
  Overrides ov;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.configs, "Scenario config (repeatable)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", args.out, "Output directory")->capture_default_str();
  cmd->add_option("--jobs", args.jobs, "Configs run concurrently")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--n", args.ov.n, "Spatial intervals (even)");
  cmd->add_option("--m", args.ov.m, "Time steps (even)");
  cmd->add_option("--T", args.ov.T, "Horizon");
  cmd->add_option("--epsilon", args.ov.epsilon, "Stability margin");
  cmd->add_option("--span-N", args.ov.span_modes, "Modes in the certificate");
  cmd->add_option("--span-threshold", args.ov.span_threshold, "Span residual threshold");
}

void print_summary(const RunReport& r, const fs::path& out) {
  std::printf("[%s] -> %s (%.2fs)\n", r.scenario.c_str(), out.string().c_str(), r.seconds);
  if (r.optimization) {
    const auto& o = *r.optimization;
    std::printf("  theta = (%.6f, %.6f)  alpha = %.6f  cost = %.6f  %s\n", o.decision.theta.theta1,
                o.decision.theta.theta2, o.decision.alpha, o.cost_breakdown.total, to_string(o.termination));
  }
  if (r.spectral) {
    std::printf("  stable = %s", r.spectral->stable ? "true" : "false");
    for (const auto& why : r.spectral->reasons) std::printf(" %s", why.c_str());
    std::printf("\n");
  }
  if (r.report.contains("exact_max_discrepancy")) {
    std::printf("  max |y - exact| = %.6e\n", r.report["exact_max_discrepancy"].get<double>());
  }
}

// Runs one command per config, up to `jobs` at a time. With several configs
// each run writes to out/<config stem>.
template <class Run>
int run_all(const CommonArgs& args, Run run) {
  const std::size_t count = args.configs.size();
  std::vector<int> status(count, 0);
  std::atomic<std::size_t> next{0};
  std::mutex print;

  auto worker = [&] {
    for (std::size_t k = next++; k < count; k = next++) {
      const fs::path config = args.configs[k];
      const fs::path out = count == 1 ? fs::path(args.out) : fs::path(args.out) / config.stem();
      try {
        const RunReport r = run(config, out);
        std::lock_guard lock(print);
        print_summary(r, out);
      } catch (const ConfigError& e) {
        std::lock_guard lock(print);
        std::fprintf(stderr, "%s: config error: %s\n", config.string().c_str(), e.what());
        status[k] = kExitConfig;
      } catch (const NumericalError& e) {
        std::lock_guard lock(print);
        std::fprintf(stderr, "%s: numerical failure (%s): %s\n", config.string().c_str(), to_string(e.kind()),
                     e.what());
        status[k] = kExitNumerical;
      } catch (const std::exception& e) {
        std::lock_guard lock(print);
        std::fprintf(stderr, "%s: %s\n", config.string().c_str(), e.what());
        status[k] = kExitConfig;
      }
    }
  };

  const auto threads = std::min<std::size_t>(static_cast<std::size_t>(args.jobs), count);
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return *std::max_element(status.begin(), status.end());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-dimensional boundary kernel optimization for unstable reaction-diffusion"};
  app.require_subcommand(1);

  CommonArgs opt_args;
  auto* optimize_cmd = app.add_subcommand("optimize", "Optimize the kernel and certify the result");
  add_common(optimize_cmd, opt_args);

  CommonArgs sim_args;
  Theta sim_theta{0.0, 0.0};
  auto* simulate_cmd = app.add_subcommand("simulate", "Forward-solve the closed loop at a given kernel");
  add_common(simulate_cmd, sim_args);
  simulate_cmd->add_option("--theta1", sim_theta.theta1)->capture_default_str();
  simulate_cmd->add_option("--theta2", sim_theta.theta2)->capture_default_str();

  CommonArgs cert_args;
  Decision cert_decision;
  auto* certify_cmd = app.add_subcommand("certify", "Spectral stability certificate for a decision");
  add_common(certify_cmd, cert_args);
  certify_cmd->add_option("--theta1", cert_decision.theta.theta1)->required();
  certify_cmd->add_option("--theta2", cert_decision.theta.theta2)->required();
  certify_cmd->add_option("--alpha", cert_decision.alpha)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (*optimize_cmd) {
    return run_all(opt_args, [&](const fs::path& c, const fs::path& o) { return cmd_optimize(c, o, opt_args.ov); });
  }
  if (*simulate_cmd) {
    return run_all(sim_args,
                   [&](const fs::path& c, const fs::path& o) { return cmd_simulate(c, sim_theta, o, sim_args.ov); });
  }
  return run_all(cert_args,
                 [&](const fs::path& c, const fs::path& o) { return cmd_certify(c, cert_decision, o, cert_args.ov); });
}
