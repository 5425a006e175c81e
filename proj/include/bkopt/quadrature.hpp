#pragma once

#include <span>

#include "bkopt/field.hpp"
#include "bkopt/kernels.hpp"

namespace bkopt {

/// Samples of a function on uniform nodes with spacing `step`.
struct Sampled1D {
  std::span<const double> values;
  double step;
};

/// Composite trapezoid rule. Requires at least 2 nodes.
double trapezoid(Sampled1D f);

/// Composite Simpson rule (h/3)(f0 + 4 odd + 2 even + fn). Requires an even,
/// nonzero number of intervals.
double simpson(Sampled1D f);

/// Iterated Simpson: Simpson over x on each time level, then Simpson over t.
double simpson_2d(const Field& psi, kernels::Exec exec = kernels::Exec::Parallel);

}  // namespace bkopt
