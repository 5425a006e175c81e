#include "bkopt/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bkopt/errors.hpp"
#include "bkopt/quadrature.hpp"

namespace bkopt {

double bessel_i1_over_arg(double w) {
  const double q = 0.25 * w * w;
  double term = 0.5;  // n = 0
  double sum = term;
  for (int n = 1; n < 200; ++n) {
    term *= q / (static_cast<double>(n) * static_cast<double>(n + 1));
    sum += term;
    if (term < 1e-16 * sum) break;
  }
  return sum;
}

double backstepping_kernel(double c, double xi) {
  const double w = std::sqrt(std::max(0.0, c * (1.0 - xi * xi)));
  return -c * xi * bessel_i1_over_arg(w);
}

FourierInit fourier_coefficients(const InitialCondition& y0, int modes, int quad_nodes) {
  if (modes < 1) throw ConfigError("fourier_coefficients needs at least one mode");
  if (quad_nodes < 2 || quad_nodes % 2 != 0) throw ConfigError("fourier_coefficients needs an even node count");
  const double h = 1.0 / quad_nodes;
  std::vector<double> y(static_cast<std::size_t>(quad_nodes + 1));
  for (int i = 0; i <= quad_nodes; ++i) y[static_cast<std::size_t>(i)] = y0(i * h);

  FourierInit out;
  out.coefficients.reserve(static_cast<std::size_t>(modes));
  std::vector<double> f(y.size());
  for (int n = 1; n <= modes; ++n) {
    for (int i = 0; i <= quad_nodes; ++i) {
      f[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(i)] * std::sin(n * std::numbers::pi * i * h);
    }
    out.coefficients.push_back(simpson({f, h}));
  }
  return out;
}

Field uncontrolled_exact(const FourierInit& fi, double c, const Grid& grid) {
  using std::numbers::pi;
  Field out(grid);
  const auto modes = fi.coefficients.size();
  for (int j = 0; j <= grid.m(); ++j) {
    const double t = grid.t(j);
    auto level = out.level(j);
    for (std::size_t k = 0; k < modes; ++k) {
      const double n = static_cast<double>(k + 1);
      const double amp = 2.0 * fi.coefficients[k] * std::exp((c - n * n * pi * pi) * t);
      for (int i = 0; i <= grid.n(); ++i) level[static_cast<std::size_t>(i)] += amp * std::sin(n * pi * grid.x(i));
    }
  }
  return out;
}

}  // namespace bkopt
