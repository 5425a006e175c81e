#pragma once

#include <array>
#include <cmath>

#include "bkopt/model.hpp"
#include "bkopt/pde.hpp"

namespace bkopt {

// Constraint functions of the stabilized kernel problem.

/// g1 >= 0 guarantees infinitely many positive characteristic roots.
constexpr double g1(const Theta& t) noexcept {
  const double a = t.theta1;
  const double b = t.theta2;
  return a * a + b * b + 2.0 * a * b - 2.0 * a - 4.0 * b;
}

/// g2 = c - alpha^2; the leading eigenvalue for root alpha.
constexpr double g2(double alpha, double c) noexcept { return c - alpha * alpha; }

/// Characteristic function; its positive zeros in alpha are the closed-loop
/// spatial frequencies.
inline double g3(const Theta& t, double alpha) noexcept {
  const double a2 = alpha * alpha;
  const double cos_part = t.theta1 * a2 + t.theta2 * a2 - 2.0 * t.theta2;
  const double sin_part = a2 * alpha - t.theta1 * alpha - 2.0 * t.theta2 * alpha;
  return cos_part * std::cos(alpha) + sin_part * std::sin(alpha) + 2.0 * t.theta2;
}

struct CostBreakdown {
  double state_term = 0.0;   // (1/2) int int y^2
  double kernel_term = 0.0;  // (1/2) int k^2
  double total = 0.0;
};

struct GradientReport {
  double d_theta1 = 0.0;
  double d_theta2 = 0.0;
};

struct ConstraintValues {
  double g1 = 0.0;
  double g2 = 0.0;
  double g3 = 0.0;
  std::array<double, 2> grad_g1{};  // d/d(theta1, theta2)
  double grad_g2_alpha = 0.0;
  std::array<double, 3> grad_g3{};  // d/d(theta1, theta2, alpha)
};

/// Closed form of (1/2) int_0^1 k(x)^2 dx.
constexpr double kernel_energy(const Theta& t) noexcept {
  return t.theta1 * t.theta1 / 6.0 + t.theta1 * t.theta2 / 4.0 + t.theta2 * t.theta2 / 10.0;
}

CostBreakdown cost(const ScenarioSpec& spec, const Theta& theta, const StateSolution& state);

/// Adjoint gradient of the cost with respect to (theta1, theta2).
GradientReport cost_gradient(const ScenarioSpec& spec, const Theta& theta, const StateSolution& state,
                             const CostateSolution& costate);

/// The integrand field xi^power * vx1(t) * y(x,t) used by cost_gradient
/// (power 1 for theta1, 2 for theta2).
Field gradient_integrand(const StateSolution& state, const CostateSolution& costate, int power,
                         kernels::Exec exec = kernels::Exec::Parallel);

ConstraintValues constraint_values(const Theta& theta, double alpha, double c);

}  // namespace bkopt
