// Serial reference kernels. The OpenMP versions in kernels_omp.cpp must match
// these bit for bit.

#include <cstddef>

#include "bkopt/kernels.hpp"
#include "bkopt/objective.hpp"

namespace bkopt::kernels::serial {

void state_interior(std::span<const double> prev, std::span<double> next, Stencil s) {
  const std::size_t n = prev.size() - 1;
  for (std::size_t i = 1; i < n; ++i) {
    next[i] = s.diag * prev[i] + s.r * (prev[i - 1] + prev[i + 1]);
  }
}

void costate_interior(std::span<const double> later, std::span<const double> y_later,
                      std::span<const double> kernel, Stencil s, double tau, double coupling,
                      std::span<double> out) {
  const std::size_t n = later.size() - 1;
  for (std::size_t i = 1; i < n; ++i) {
    out[i] = s.diag * later[i] + s.r * (later[i + 1] + later[i - 1]) + tau * y_later[i] - coupling * kernel[i];
  }
}

namespace {

double simpson_level(std::span<const double> f, double h) {
  const std::size_t n = f.size() - 1;
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t i = 1; i < n; i += 2) odd += f[i];
  for (std::size_t i = 2; i < n; i += 2) even += f[i];
  return h / 3.0 * (f[0] + 4.0 * odd + 2.0 * even + f[n]);
}

}  // namespace

void slice_simpson(const Field& field, std::span<double> phi) {
  const double h = field.grid().h();
  for (int j = 0; j < field.cols(); ++j) phi[static_cast<std::size_t>(j)] = simpson_level(field.level(j), h);
}

void weighted_product(const Field& y, std::span<const double> weight, std::span<const double> vx1, Field& out) {
  for (int j = 0; j < y.cols(); ++j) {
    const double vj = vx1[static_cast<std::size_t>(j)];
    auto src = y.level(j);
    auto dst = out.level(j);
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = weight[i] * vj * src[i];
  }
}

void sample_characteristic(const Theta& theta, std::span<const double> alpha, std::span<double> out) {
  for (std::size_t k = 0; k < alpha.size(); ++k) out[k] = g3(theta, alpha[k]);
}

}  // namespace bkopt::kernels::serial
