#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bkopt/io.hpp"
#include "bkopt/optimizer.hpp"

namespace bkopt {

/// Command-line values that take precedence over the config file.
struct Overrides {
  std::optional<int> n;
  std::optional<int> m;
  std::optional<double> T;
  std::optional<double> epsilon;
  std::optional<int> span_modes;
  std::optional<double> span_threshold;
};

/// Applies the overrides and revalidates. Throws ConfigError.
ScenarioSpec apply_overrides(ScenarioSpec spec, const Overrides& ov);

struct RunReport {
  std::string scenario;
  io::json report;  // the document written to report.json
  std::vector<std::filesystem::path> artifacts;
  double seconds = 0.0;
  std::optional<OptimizationResult> optimization;
  std::optional<SpectralReport> spectral;
};

inline constexpr int kKernelSamples = 200;
inline constexpr double kCharfunSpan = 12.0;  // in units of pi
inline constexpr int kCharfunSamples = 2401;

/// Loads the config (nothing is written if that fails), optimizes, certifies
/// and writes report.json, history.csv, state.csv, control.csv, kernel.csv
/// and charfun.csv to out_dir. A numerical failure writes report.json with
/// the reason and rethrows.
RunReport cmd_optimize(const std::filesystem::path& config, const std::filesystem::path& out_dir,
                       const Overrides& ov = {});

/// Forward solve at theta. Writes state.csv, control.csv and report.json;
/// at theta = (0, 0) also exact.csv and the max-norm discrepancy.
RunReport cmd_simulate(const std::filesystem::path& config, const Theta& theta, const std::filesystem::path& out_dir,
                       const Overrides& ov = {});

/// Standalone certificate. Writes roots.csv (n, alpha, alpha/pi, sigma, Y,
/// residual), charfun.csv and report.json.
RunReport cmd_certify(const std::filesystem::path& config, const Decision& decision,
                      const std::filesystem::path& out_dir, const Overrides& ov = {});

/// Re-certifies the decision stored in a report.json under its embedded scenario.
SpectralReport recertify(const std::filesystem::path& report_json);

}  // namespace bkopt
