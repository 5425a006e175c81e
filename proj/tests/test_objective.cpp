#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bkopt/objective.hpp"
#include "bkopt/quadrature.hpp"
#include "bkopt/spectral.hpp"
#include "support.hpp"

using namespace bkopt;
using std::numbers::pi;

namespace {

ScenarioSpec zero_initial(ScenarioSpec s) {
  s.y0 = SampledProfile{std::vector<double>(static_cast<std::size_t>(s.grid.n() + 1), 0.0)};
  return s;
}

// Extended-precision copies of the constraint functions for the
// finite-difference oracle, written out independently of the library.
long double g1_ld(long double a, long double b) { return a * a + b * b + 2 * a * b - 2 * a - 4 * b; }
long double g2_ld(long double alpha, long double c) { return c - alpha * alpha; }
long double g3_ld(long double a, long double b, long double x) {
  const long double x2 = x * x;
  return (a * x2 + b * x2 - 2 * b) * std::cos(x) + (x2 * x - a * x - 2 * b * x) * std::sin(x) + 2 * b;
}

double fd_cost(const ScenarioSpec& spec, Theta theta, int component, double step) {
  Theta plus = theta;
  Theta minus = theta;
  (component == 0 ? plus.theta1 : plus.theta2) += step;
  (component == 0 ? minus.theta1 : minus.theta2) -= step;
  const double fp = cost(spec, plus, solve_state(spec, plus)).total;
  const double fm = cost(spec, minus, solve_state(spec, minus)).total;
  return (fp - fm) / (2.0 * step);
}

}  // namespace

TEST_SUITE("objective") {
  TEST_CASE("zero state and zero kernel cost nothing") {
    const auto spec = zero_initial(testing::scenario(1));
    const auto state = solve_state(spec, {0.0, 0.0});
    CHECK(cost(spec, {0.0, 0.0}, state).total == 0.0);
  }

  TEST_CASE("uncontrolled single-mode cost against its closed form") {
    // (1/2) int int e^{2 s t} sin^2(pi x) = (e^{2 s T} - 1) / (8 s), s = c - pi^2.
    // The 14-interval grid overestimates s by its O(h^2) eigenvalue error, so the
    // comparison runs at n = 56 with r unchanged.
    const auto spec = testing::with_grid(testing::scenario(1), 56, 80000, 4.0);
    const double s = spec.c - pi * pi;
    const double exact = (std::exp(2.0 * s * 4.0) - 1.0) / (8.0 * s);
    CHECK(exact == doctest::Approx(1.76).epsilon(0.01));
    const auto cb = cost(spec, {0.0, 0.0}, solve_state(spec, {0.0, 0.0}));
    CHECK(cb.kernel_term == 0.0);
    CHECK(std::abs(cb.state_term - exact) <= 0.05 * exact);
  }

  TEST_CASE("reference scenario 1 optimum cost") {
    const auto spec = testing::scenario(1);
    const Theta t = testing::kReferenceOptimum[0].theta;
    CHECK(std::abs(cost(spec, t, solve_state(spec, t)).total - 0.1712) <= 0.01);
  }

  TEST_CASE("cost equals half simpson_2d of y^2 plus the kernel energy") {
    const auto spec = testing::scenario(2);
    const Theta t{-2.5, 1.5};
    const auto state = solve_state(spec, t);
    Field sq(spec.grid);
    for (int j = 0; j <= spec.grid.m(); ++j)
      for (int i = 0; i <= spec.grid.n(); ++i) sq(i, j) = state.y(i, j) * state.y(i, j);
    const auto cb = cost(spec, t, state);
    CHECK(cb.state_term == doctest::Approx(0.5 * simpson_2d(sq)).epsilon(1e-14));
    CHECK(cb.total == doctest::Approx(cb.state_term + kernel_energy(t)).epsilon(1e-14));
  }

  TEST_CASE("kernel energy closed form against quadrature of k^2") {
    auto gen = testing::rng(11);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    // Three-point Gauss-Legendre on [0, 1] is exact for the quartic k^2.
    const double g = std::sqrt(0.6);
    const double nodes[3] = {0.5 * (1.0 - g), 0.5, 0.5 * (1.0 + g)};
    const double weights[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
    for (int rep = 0; rep < 75; ++rep) {
      const Theta t{u(gen), u(gen)};
      double gl = 0.0;
      for (int q = 0; q < 3; ++q) {
        const double k = kernel_eval(t, nodes[q]);
        gl += weights[q] * k * k;
      }
      CHECK(std::abs(kernel_energy(t) - 0.5 * gl) <= 1e-10 * (1.0 + gl));
    }
    // Composite Simpson converges to it at fourth order.
    const Theta t{-3.0, 4.0};
    double prev = 1.0;
    for (int n : {4, 8, 16, 32}) {
      std::vector<double> k2(static_cast<std::size_t>(n + 1));
      for (int i = 0; i <= n; ++i) {
        const double k = kernel_eval(t, static_cast<double>(i) / n);
        k2[static_cast<std::size_t>(i)] = k * k;
      }
      const double err = std::abs(kernel_energy(t) - 0.5 * simpson({k2, 1.0 / n}));
      CHECK(err < prev / 15.0);
      prev = err;
    }
  }

  TEST_CASE("gradient with zero state is the kernel-energy gradient") {
    const auto spec = zero_initial(testing::scenario(1));
    for (const Theta t : {Theta{0.0, 0.0}, Theta{-1.0, 2.0}, Theta{3.5, -7.25}}) {
      const auto state = solve_state(spec, t);
      const auto co = solve_costate(spec, t, state);
      const auto g = cost_gradient(spec, t, state, co);
      CHECK(g.d_theta1 == t.theta1 / 3.0 + t.theta2 / 4.0);
      CHECK(g.d_theta2 == t.theta1 / 4.0 + t.theta2 / 5.0);
    }
  }

  TEST_CASE("gradient integrand field matches its formula") {
    const auto spec = testing::scenario(1);
    const Theta t = testing::kReferenceOptimum[0].theta;
    const auto state = solve_state(spec, t);
    const auto co = solve_costate(spec, t, state);
    for (int p : {1, 2}) {
      const Field f = gradient_integrand(state, co, p);
      for (int j = 0; j <= spec.grid.m(); j += 97)
        for (int i = 0; i <= spec.grid.n(); ++i) {
          const double x = spec.grid.x(i);
          const double w = p == 1 ? x : x * x;
          REQUIRE(f(i, j) == w * co.vx1[static_cast<std::size_t>(j)] * state.y(i, j));
        }
    }
  }

  TEST_CASE("adjoint gradient against central differences, scenario 1 at (-1, 2), n = 50") {
    const auto spec = testing::with_grid(testing::scenario(1), 50, 25000, 4.0);
    const Theta t{-1.0, 2.0};
    const auto state = solve_state(spec, t);
    const auto g = cost_gradient(spec, t, state, solve_costate(spec, t, state));
    const double fd1 = fd_cost(spec, t, 0, 1e-4);
    const double fd2 = fd_cost(spec, t, 1, 1e-4);
    CHECK(std::abs(g.d_theta1 - fd1) <= 0.02 * std::abs(fd1));
    CHECK(std::abs(g.d_theta2 - fd2) <= 0.02 * std::abs(fd2));
  }

  TEST_CASE("constraint examples") {
    CHECK(g1({1.0, 1.0}) == -2.0);
    CHECK(std::abs(g3({0.0, 0.0}, pi)) <= 1e-13);
    const Theta t = testing::kReferenceOptimum[0].theta;
    CHECK(std::abs(g3(t, 3.3486)) <= 1e-2);
    CHECK(g2(3.3486, 10.0) == doctest::Approx(10.0 - 3.3486 * 3.3486));
    CHECK(g2(3.3486, 10.0) <= -1.0);
  }

  TEST_CASE("constraint gradients against central differences at 100 points") {
    auto gen = testing::rng(3);
    std::uniform_real_distribution<double> th(-10.0, 10.0);
    std::uniform_real_distribution<double> al(0.0, 20.0);
    const long double h = 1e-6L;
    for (int rep = 0; rep < 100; ++rep) {
      const double a = th(gen);
      const double b = th(gen);
      const double x = al(gen);
      const double c = 10.0;
      const auto cv = constraint_values({a, b}, x, c);
      CHECK(cv.g1 == g1({a, b}));
      CHECK(cv.g2 == g2(x, c));
      CHECK(cv.g3 == g3({a, b}, x));

      const long double d1a = (g1_ld(a + h, b) - g1_ld(a - h, b)) / (2 * h);
      const long double d1b = (g1_ld(a, b + h) - g1_ld(a, b - h)) / (2 * h);
      const long double d2x = (g2_ld(x + h, c) - g2_ld(x - h, c)) / (2 * h);
      const long double d3a = (g3_ld(a + h, b, x) - g3_ld(a - h, b, x)) / (2 * h);
      const long double d3b = (g3_ld(a, b + h, x) - g3_ld(a, b - h, x)) / (2 * h);
      const long double d3x = (g3_ld(a, b, x + h) - g3_ld(a, b, x - h)) / (2 * h);
      CHECK(std::abs(cv.grad_g1[0] - static_cast<double>(d1a)) <= 1e-6);
      CHECK(std::abs(cv.grad_g1[1] - static_cast<double>(d1b)) <= 1e-6);
      CHECK(std::abs(cv.grad_g2_alpha - static_cast<double>(d2x)) <= 1e-6);
      CHECK(std::abs(cv.grad_g3[0] - static_cast<double>(d3a)) <= 1e-6);
      CHECK(std::abs(cv.grad_g3[1] - static_cast<double>(d3b)) <= 1e-6);
      CHECK(std::abs(cv.grad_g3[2] - static_cast<double>(d3x)) <= 1e-6);
    }
  }

  TEST_CASE("zero-kernel characteristic roots are multiples of pi") {
    const auto roots = find_roots({0.0, 0.0}, 10);
    for (int k = 1; k <= 10; ++k) CHECK(std::abs(roots.roots[static_cast<std::size_t>(k - 1)] - k * pi) <= 1e-10);
  }
}
