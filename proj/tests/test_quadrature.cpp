#include <doctest.h>

#include <cmath>
#include <vector>

#include "bkopt/errors.hpp"
#include "bkopt/quadrature.hpp"
#include "support.hpp"

using namespace bkopt;
using doctest::Approx;

namespace {

std::vector<double> sample(int n, double length, double (*f)(double)) {
  std::vector<double> v(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) v[static_cast<std::size_t>(i)] = f(length * i / n);
  return v;
}

Field make_field(const Grid& g, double (*f)(double, double)) {
  Field out(g);
  for (int j = 0; j <= g.m(); ++j)
    for (int i = 0; i <= g.n(); ++i) out(i, j) = f(g.x(i), g.t(j));
  return out;
}

// Fused double-sum with tensor Simpson weights, summed t-major.
double fused_simpson(const Field& psi) {
  const Grid& g = psi.grid();
  auto w = [](int k, int last) { return (k == 0 || k == last) ? 1.0 : (k % 2 ? 4.0 : 2.0); };
  double sum = 0.0;
  for (int j = 0; j <= g.m(); ++j)
    for (int i = 0; i <= g.n(); ++i) sum += w(i, g.n()) * w(j, g.m()) * psi(i, j);
  return sum * g.h() * g.tau() / 9.0;
}

// The same rule with the sums swapped: x outer, t inner.
double transposed_simpson(const Field& psi) {
  const Grid& g = psi.grid();
  std::vector<double> col(static_cast<std::size_t>(g.m() + 1));
  std::vector<double> outer(static_cast<std::size_t>(g.n() + 1));
  for (int i = 0; i <= g.n(); ++i) {
    for (int j = 0; j <= g.m(); ++j) col[static_cast<std::size_t>(j)] = psi(i, j);
    outer[static_cast<std::size_t>(i)] = simpson({col, g.tau()});
  }
  return simpson({outer, g.h()});
}

}  // namespace

TEST_SUITE("quadrature") {
  TEST_CASE("trapezoid exactness") {
    for (int n : {1, 2, 5, 14}) {
      const auto one = sample(n, 1.0, [](double) { return 1.0; });
      CHECK(trapezoid({one, 1.0 / n}) == Approx(1.0).epsilon(1e-14));
    }
    const auto lin = sample(4, 1.0, [](double x) { return x; });
    CHECK(std::abs(trapezoid({lin, 0.25}) - 0.5) <= 1e-12);
    const auto sq = sample(2, 1.0, [](double x) { return x * x; });
    CHECK(std::abs(trapezoid({sq, 0.5}) - 0.375) <= 1e-12);
  }

  TEST_CASE("simpson exactness") {
    const auto cube = sample(2, 1.0, [](double x) { return x * x * x; });
    CHECK(std::abs(simpson({cube, 0.5}) - 0.25) <= 1e-12);
    for (int m : {2, 10, 5000}) {
      const auto five = sample(m, 4.0, [](double) { return 5.0; });
      CHECK(std::abs(simpson({five, 4.0 / m}) - 20.0) <= 1e-12 * 20.0);
    }
    const auto quartic = sample(2, 1.0, [](double x) { return x * x * x * x; });
    // Not exact for degree four: (1/6)(0 + 4/16 + 1) against 1/5.
    CHECK(std::abs(simpson({quartic, 0.5}) - 5.0 / 24.0) <= 1e-12);
  }

  TEST_CASE("parity and size errors") {
    const std::vector<double> three{1.0, 2.0, 3.0};
    const std::vector<double> four{1.0, 2.0, 3.0, 4.0};
    const std::vector<double> one{1.0};
    CHECK_THROWS_AS(simpson({four, 0.1}), ConfigError);
    CHECK_THROWS_AS(simpson({one, 0.1}), ConfigError);
    CHECK_THROWS_AS(trapezoid({one, 0.1}), ConfigError);
    CHECK_NOTHROW(simpson({three, 0.1}));
  }

  TEST_CASE("simpson_2d examples") {
    const Field ones = make_field(Grid(14, 5000, 4.0), [](double, double) { return 1.0; });
    CHECK(std::abs(simpson_2d(ones) - 4.0) <= 1e-12);
    const Field xt = make_field(Grid(2, 8, 1.0), [](double x, double t) { return x * t; });
    CHECK(std::abs(simpson_2d(xt) - 0.25) <= 1e-12);
    const Field x2t2 = make_field(Grid(2, 8, 1.0), [](double x, double t) { return x * x * t * t; });
    CHECK(std::abs(simpson_2d(x2t2) - 1.0 / 9.0) <= 1e-12);
  }

  TEST_CASE("simpson_2d matches the fused and transposed double sums") {
    for (const Grid g : {Grid(14, 5000, 4.0), Grid(20, 1000, 1.0), Grid(6, 400, 2.0)}) {
      const Field psi =
          make_field(g, [](double x, double t) { return std::exp(-0.3 * t) * std::sin(3.0 * x) + x * t * t; });
      const double iterated = simpson_2d(psi);
      CHECK(std::abs(iterated - fused_simpson(psi)) <= 1e-12 * std::abs(iterated));
      CHECK(std::abs(iterated - transposed_simpson(psi)) <= 1e-12 * std::abs(iterated));
    }
  }

  TEST_CASE("linearity of all three rules") {
    auto gen = testing::rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    const Grid g(10, 200, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
      const double a = u(gen);
      const double b = u(gen);
      std::vector<double> f(11), h(11), combo(11);
      for (std::size_t i = 0; i < f.size(); ++i) {
        f[i] = u(gen);
        h[i] = u(gen);
        combo[i] = a * f[i] + b * h[i];
      }
      const double step = 0.1;
      const double tol = 1e-13 * (1.0 + std::abs(a) + std::abs(b)) * 10.0;
      CHECK(std::abs(trapezoid({combo, step}) - (a * trapezoid({f, step}) + b * trapezoid({h, step}))) <= tol);
      CHECK(std::abs(simpson({combo, step}) - (a * simpson({f, step}) + b * simpson({h, step}))) <= tol);

      Field F(g), H(g), C(g);
      for (int j = 0; j <= g.m(); ++j)
        for (int i = 0; i <= g.n(); ++i) {
          F(i, j) = u(gen);
          H(i, j) = u(gen);
          C(i, j) = a * F(i, j) + b * H(i, j);
        }
      CHECK(std::abs(simpson_2d(C) - (a * simpson_2d(F) + b * simpson_2d(H))) <= tol * 10.0);
    }
  }

  TEST_CASE("serial and parallel simpson_2d are bit-identical") {
    const Field psi = make_field(Grid(50, 25000, 4.0), [](double x, double t) { return std::cos(x * t) + x; });
    CHECK(simpson_2d(psi, kernels::Exec::Serial) == simpson_2d(psi, kernels::Exec::Parallel));
  }
}
