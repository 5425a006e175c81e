#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bkopt/field.hpp"
#include "bkopt/model.hpp"
#include "bkopt/optimizer.hpp"
#include "bkopt/spectral.hpp"

namespace bkopt::io {

using nlohmann::json;

/// A scenario plus optimizer settings, as read from one config file.
struct RunConfig {
  ScenarioSpec spec;
  OptimizerConfig optimizer;
};

/// Config schema (unknown keys are rejected):
///   name            string, optional
///   c, T, epsilon   numbers
///   n, m            even integers
///   y0              {"preset": "sin_pi"}
///                   {"preset": "envelope_sin", "a": .., "b": .., "freq": ..}
///                   {"samples": [n+1 numbers]}
///   bounds          {"a1", "b1", "a2", "b2"}, optional, default +-10
///   initial_guess   {"theta1", "theta2", "alpha"}
///   span            {"N", "threshold", "refine"}, optional
///   optimizer       OptimizerConfig field names, optional
/// Throws ConfigError on any schema or range violation.
RunConfig parse_config(const json& doc);
RunConfig load_config(const std::filesystem::path& path);

json to_json(const ScenarioSpec& spec);
json to_json(const OptimizerConfig& config);
json to_json(const Decision& d);
json to_json(const CostBreakdown& c);
json to_json(const SpectralReport& r);
/// Everything except the per-iterate history, which goes to CSV.
json to_json(const OptimizationResult& r);

ScenarioSpec spec_from_json(const json& doc);
Decision decision_from_json(const json& doc);
SpectralReport spectral_from_json(const json& doc);

/// Shortest-safe decimal: 17 significant digits, parses back to the same bits.
std::string format_double(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

/// One row per time level: t, y(x_0), ..., y(x_n).
CsvTable field_table(const Field& f);
CsvTable history_table(const std::vector<IterateRecord>& history);

void write_json(const std::filesystem::path& path, const json& doc);
json read_json(const std::filesystem::path& path);

}  // namespace bkopt::io
