#pragma once

#include <array>
#include <string>
#include <vector>

#include "bkopt/model.hpp"
#include "bkopt/objective.hpp"
#include "bkopt/spectral.hpp"

namespace bkopt {

struct OptimizerConfig {
  int max_iters = 500;         // accepted projected-gradient steps, all outer loops together
  int max_outer = 50;          // multiplier updates
  double grad_tol = 1e-5;      // projected-gradient stationarity (infinity norm)
  double constraint_tol = 1e-6;
  double penalty_init = 1.0;
  double penalty_growth = 10.0;
  double armijo_c = 1e-4;
  double backtrack_factor = 0.5;
  double min_step = 1e-12;

  /// Throws ConfigError when a field is out of range.
  void validate() const;
};

struct IterateRecord {
  int iteration = 0;
  int outer = 0;
  Decision decision;
  double cost = 0.0;
  double constraint_violation = 0.0;  // max([-g1]+, [g2 + eps]+, |g3|)
  double step_length = 0.0;
  double merit = 0.0;                 // augmented Lagrangian at the accepted point
};

enum class Termination {
  Converged,         // feasible and stationary
  LineSearchStalled, // no Armijo step above min_step at a feasible point
  MaxIterations,
};

const char* to_string(Termination t);

struct OptimizationResult {
  Decision decision;
  CostBreakdown cost_breakdown;
  std::vector<IterateRecord> history;
  bool converged = false;
  Termination termination = Termination::MaxIterations;
  double projected_gradient_norm = 0.0;
  double constraint_violation = 0.0;
  std::array<double, 3> multipliers{};  // g1, g2, g3
  double penalty = 0.0;
  SpectralReport spectral;
};

/// max([-g1]+, [g2 + eps]+, |g3|) at a decision.
double constraint_violation(const Decision& d, double c, double epsilon);

/// Minimizes the finite-horizon cost over (theta1, theta2, alpha) subject to
/// the kernel bounds, g1 >= 0, g2 <= -epsilon and g3 = 0.
///
/// Outer loop: first-order multiplier and penalty updates of a
/// Powell-Hestenes-Rockafellar augmented Lagrangian. Inner loop: projected
/// gradient with Barzilai-Borwein trial steps and monotone Armijo
/// backtracking. Each inner iteration solves the state, the costate and
/// assembles the adjoint gradient. A trial point where the state solve fails
/// counts as +inf merit. The final decision is certified spectrally.
OptimizationResult optimize(const ScenarioSpec& spec, const OptimizerConfig& config);

}  // namespace bkopt
