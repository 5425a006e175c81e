#include <cstddef>

#include "bkopt/kernels.hpp"
#include "bkopt/objective.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bkopt::kernels::omp {

namespace {

// Below these sizes even a serialized parallel region costs more than the
// loop itself, so small inputs go straight to the serial kernels.
constexpr long kMinPoints = 4096;
constexpr long kMinLevels = 64;

double simpson_level(std::span<const double> f, double h) {
  const std::size_t n = f.size() - 1;
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t i = 1; i < n; i += 2) odd += f[i];
  for (std::size_t i = 2; i < n; i += 2) even += f[i];
  return h / 3.0 * (f[0] + 4.0 * odd + 2.0 * even + f[n]);
}

}  // namespace

void state_interior(std::span<const double> prev, std::span<double> next, Stencil s) {
  const long n = static_cast<long>(prev.size()) - 1;
  if (n < kMinPoints) return serial::state_interior(prev, next, s);
  const double* in = prev.data();
  double* out = next.data();
#pragma omp parallel for schedule(static)
  for (long i = 1; i < n; ++i) {
    out[i] = s.diag * in[i] + s.r * (in[i - 1] + in[i + 1]);
  }
}

void costate_interior(std::span<const double> later, std::span<const double> y_later,
                      std::span<const double> kernel, Stencil s, double tau, double coupling,
                      std::span<double> out) {
  const long n = static_cast<long>(later.size()) - 1;
  if (n < kMinPoints) return serial::costate_interior(later, y_later, kernel, s, tau, coupling, out);
  const double* v = later.data();
  const double* y = y_later.data();
  const double* k = kernel.data();
  double* dst = out.data();
#pragma omp parallel for schedule(static)
  for (long i = 1; i < n; ++i) {
    dst[i] = s.diag * v[i] + s.r * (v[i + 1] + v[i - 1]) + tau * y[i] - coupling * k[i];
  }
}

void slice_simpson(const Field& field, std::span<double> phi) {
  const double h = field.grid().h();
  const long cols = field.cols();
  if (cols < kMinLevels) return serial::slice_simpson(field, phi);
#pragma omp parallel for schedule(static)
  for (long j = 0; j < cols; ++j) {
    phi[static_cast<std::size_t>(j)] = simpson_level(field.level(static_cast<int>(j)), h);
  }
}

void weighted_product(const Field& y, std::span<const double> weight, std::span<const double> vx1, Field& out) {
  const long cols = y.cols();
  if (cols < kMinLevels) return serial::weighted_product(y, weight, vx1, out);
#pragma omp parallel for schedule(static)
  for (long j = 0; j < cols; ++j) {
    const double vj = vx1[static_cast<std::size_t>(j)];
    auto src = y.level(static_cast<int>(j));
    auto dst = out.level(static_cast<int>(j));
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = weight[i] * vj * src[i];
  }
}

void sample_characteristic(const Theta& theta, std::span<const double> alpha, std::span<double> out) {
  const long count = static_cast<long>(alpha.size());
  if (count < kMinLevels) return serial::sample_characteristic(theta, alpha, out);
#pragma omp parallel for schedule(static)
  for (long k = 0; k < count; ++k) {
    out[static_cast<std::size_t>(k)] = g3(theta, alpha[static_cast<std::size_t>(k)]);
  }
}

int max_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace bkopt::kernels::omp
