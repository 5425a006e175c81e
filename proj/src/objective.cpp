#include "bkopt/objective.hpp"

#include "bkopt/errors.hpp"
#include "bkopt/quadrature.hpp"

namespace bkopt {

CostBreakdown cost(const ScenarioSpec& spec, const Theta& theta, const StateSolution& state) {
  (void)spec;
  const Field& y = state.y;
  Field squared(y.grid());
  for (int j = 0; j < y.cols(); ++j) {
    auto src = y.level(j);
    auto dst = squared.level(j);
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] * src[i];
  }
  CostBreakdown out;
  out.state_term = 0.5 * simpson_2d(squared);
  out.kernel_term = kernel_energy(theta);
  out.total = out.state_term + out.kernel_term;
  return out;
}

Field gradient_integrand(const StateSolution& state, const CostateSolution& costate, int power,
                         kernels::Exec exec) {
  const Grid& grid = state.y.grid();
  if (!(costate.v.grid() == grid)) throw ConfigError("state and costate grids differ");
  std::vector<double> weight(static_cast<std::size_t>(grid.n() + 1));
  for (int i = 0; i <= grid.n(); ++i) {
    const double x = grid.x(i);
    weight[static_cast<std::size_t>(i)] = power == 1 ? x : x * x;
  }
  Field out(grid);
  kernels::weighted_product(state.y, weight, costate.vx1, out, exec);
  return out;
}

GradientReport cost_gradient(const ScenarioSpec& spec, const Theta& theta, const StateSolution& state,
                             const CostateSolution& costate) {
  (void)spec;
  const double i1 = simpson_2d(gradient_integrand(state, costate, 1));
  const double i2 = simpson_2d(gradient_integrand(state, costate, 2));
  return {-i1 + theta.theta1 / 3.0 + theta.theta2 / 4.0, -i2 + theta.theta1 / 4.0 + theta.theta2 / 5.0};
}

ConstraintValues constraint_values(const Theta& theta, double alpha, double c) {
  const double t1 = theta.theta1;
  const double t2 = theta.theta2;
  const double a = alpha;
  const double a2 = a * a;
  const double ca = std::cos(a);
  const double sa = std::sin(a);

  ConstraintValues out;
  out.g1 = g1(theta);
  out.g2 = g2(alpha, c);
  out.g3 = g3(theta, alpha);
  out.grad_g1 = {2.0 * t1 + 2.0 * t2 - 2.0, 2.0 * t2 + 2.0 * t1 - 4.0};
  out.grad_g2_alpha = -2.0 * a;
  out.grad_g3 = {
      a2 * ca - a * sa,
      (a2 - 2.0) * ca - 2.0 * a * sa + 2.0,
      (a2 * a + t1 * a) * ca + (3.0 * a2 - t1 * a2 - t2 * a2 - t1) * sa,
  };
  return out;
}

}  // namespace bkopt
