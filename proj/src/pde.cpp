#include "bkopt/pde.hpp"

#include <cmath>
#include <string>

#include "bkopt/errors.hpp"

namespace bkopt {

namespace {

std::vector<double> kernel_samples(const Theta& theta, const Grid& grid) {
  std::vector<double> k(static_cast<std::size_t>(grid.n() + 1));
  for (int i = 0; i <= grid.n(); ++i) k[static_cast<std::size_t>(i)] = kernel_eval(theta, grid.x(i));
  return k;
}

void check_level(std::span<const double> level, int j, const char* what) {
  for (double v : level) {
    if (!(std::abs(v) <= kBlowUpLimit)) {
      throw NumericalError(NumericalFailure::BlowUp,
                           std::string(what) + " blew up at time index " + std::to_string(j), j);
    }
  }
}

}  // namespace

StateSolution solve_state(const ScenarioSpec& spec, const Theta& theta, kernels::Exec exec) {
  return solve_state(spec, theta, initial_condition_samples(spec.y0, spec.grid), exec);
}

StateSolution solve_state(const ScenarioSpec& spec, const Theta& theta, const std::vector<double>& y0,
                          kernels::Exec exec) {
  const Grid& grid = spec.grid;
  const int n = grid.n();
  const int m = grid.m();
  if (y0.size() != static_cast<std::size_t>(n + 1)) throw ConfigError("initial samples do not match grid");

  const auto k = kernel_samples(theta, grid);
  const double h = grid.h();
  const double closure = 1.0 - 0.5 * h * k[static_cast<std::size_t>(n)];
  if (std::abs(closure) < kClosureSingularity) {
    throw NumericalError(NumericalFailure::BoundaryClosureSingular,
                         "boundary closure singular: 1 - (h/2) k(1) = " + std::to_string(closure), 0);
  }
  const kernels::Stencil stencil{1.0 - 2.0 * grid.r() + spec.c * grid.tau(), grid.r()};

  StateSolution sol{Field(grid), std::vector<double>(static_cast<std::size_t>(m + 1))};
  std::copy(y0.begin(), y0.end(), sol.y.level(0).begin());
  check_level(sol.y.level(0), 0, "state");
  // The feedback law applied to the initial profile.
  {
    double sum = 0.5 * k[static_cast<std::size_t>(n)] * y0.back();
    for (int i = 1; i < n; ++i) sum += k[static_cast<std::size_t>(i)] * y0[static_cast<std::size_t>(i)];
    sol.u[0] = h * sum;
  }

  for (int j = 1; j <= m; ++j) {
    auto next = sol.y.level(j);
    kernels::state_interior(sol.y.level(j - 1), next, stencil, exec);
    next[0] = 0.0;
    // Trapezoid closure; the x_0 term k(0) y_0 is zero.
    double sum = 0.5 * k[0] * next[0];
    for (int i = 1; i < n; ++i) sum += k[static_cast<std::size_t>(i)] * next[static_cast<std::size_t>(i)];
    next[static_cast<std::size_t>(n)] = h * sum / closure;
    check_level(next, j, "state");
    sol.u[static_cast<std::size_t>(j)] = next[static_cast<std::size_t>(n)];
  }
  return sol;
}

CostateSolution solve_costate(const ScenarioSpec& spec, const Theta& theta, const StateSolution& state,
                              kernels::Exec exec) {
  const Grid& grid = spec.grid;
  if (!(state.y.grid() == grid)) throw ConfigError("state solution was computed on a different grid");
  const int n = grid.n();
  const int m = grid.m();
  const double h = grid.h();
  const double tau = grid.tau();
  const auto k = kernel_samples(theta, grid);
  const kernels::Stencil stencil{1.0 - 2.0 * grid.r() + spec.c * tau, grid.r()};

  CostateSolution sol{Field(grid), std::vector<double>(static_cast<std::size_t>(m + 1))};
  const auto nn = static_cast<std::size_t>(n);
  // Terminal level and both boundaries stay zero (Field is zero-initialized).
  for (int j = m; j >= 1; --j) {
    auto later = sol.v.level(j);
    const double coupling = tau / h * (later[nn] - later[nn - 1]);
    auto out = sol.v.level(j - 1);
    kernels::costate_interior(later, state.y.level(j), k, stencil, tau, coupling, out, exec);
    out[0] = 0.0;
    out[nn] = 0.0;
    check_level(out, j - 1, "costate");
  }
  for (int j = 0; j <= m; ++j) {
    auto level = sol.v.level(j);
    sol.vx1[static_cast<std::size_t>(j)] = (level[nn] - level[nn - 1]) / h;
  }
  return sol;
}

}  // namespace bkopt
