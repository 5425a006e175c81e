#include "bkopt/quadrature.hpp"

#include <string>
#include <vector>

#include "bkopt/errors.hpp"

namespace bkopt {

double trapezoid(Sampled1D f) {
  const std::size_t count = f.values.size();
  if (count < 2) throw ConfigError("trapezoid rule needs at least 2 nodes");
  double interior = 0.0;
  for (std::size_t i = 1; i + 1 < count; ++i) interior += f.values[i];
  return f.step * (0.5 * f.values.front() + interior + 0.5 * f.values.back());
}

double simpson(Sampled1D f) {
  const std::size_t count = f.values.size();
  if (count < 3 || (count - 1) % 2 != 0) {
    throw ConfigError("Simpson rule needs an even, nonzero interval count (got " +
                      std::to_string(count == 0 ? 0 : count - 1) + ")");
  }
  const std::size_t n = count - 1;
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t i = 1; i < n; i += 2) odd += f.values[i];
  for (std::size_t i = 2; i < n; i += 2) even += f.values[i];
  return f.step / 3.0 * (f.values[0] + 4.0 * odd + 2.0 * even + f.values[n]);
}

double simpson_2d(const Field& psi, kernels::Exec exec) {
  std::vector<double> phi(static_cast<std::size_t>(psi.cols()));
  kernels::slice_simpson(psi, phi, exec);
  return simpson({phi, psi.grid().tau()});
}

}  // namespace bkopt
