#pragma once

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>

#include "bkopt/model.hpp"

namespace testing {

using namespace bkopt;

inline std::filesystem::path source_dir() { return BKOPT_SOURCE_DIR; }
inline std::filesystem::path config_path(int scenario) {
  return source_dir() / "configs" / ("scenario" + std::to_string(scenario) + ".json");
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("bkopt_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

/// The three bundled scenarios on the 14 x 5000 grid.
inline ScenarioSpec scenario(int k) {
  ScenarioSpec s;
  s.grid = Grid(14, 5000, 4.0);
  s.epsilon = 1.0;
  switch (k) {
    case 1:
      s.name = "scenario1";
      s.c = 10.0;
      s.y0 = SinPi{};
      s.initial_guess = {{-1.0, 2.0}, 0.0};
      s.span.modes = 10;
      break;
    case 2:
      s.name = "scenario2";
      s.c = 11.0;
      s.y0 = EnvelopeSin{1.0, 1.0, 1.0};
      s.initial_guess = {{-1.0, 1.5}, 0.0};
      s.span.modes = 14;
      break;
    default:
      s.name = "scenario3";
      s.c = 14.0;
      s.y0 = EnvelopeSin{2.0, 1.0, 2.5};
      s.initial_guess = {{-2.0, 1.5}, 0.0};
      s.span.modes = 14;
      break;
  }
  return s;
}

inline ScenarioSpec with_grid(ScenarioSpec s, int n, int m, double T) {
  s.grid = Grid(n, m, T);
  return s;
}

/// Reference optima (theta1, theta2, alpha) and costs.
inline constexpr Decision kReferenceOptimum[3] = {
    {{-1.0775, 0.5966}, 3.3486},
    {{-2.9141, 1.7791}, 3.6056},
    {{-9.1266, 6.4093}, 4.1231},
};
inline constexpr double kReferenceCost[3] = {0.1712, 0.5515, 3.1006};

inline bool close(double a, double b, double abs_tol) { return std::abs(a - b) <= abs_tol; }

/// Fixed-seed generator so every property test is reproducible.
inline std::mt19937_64 rng(unsigned seed = 20240601u) { return std::mt19937_64(seed); }

}  // namespace testing
