#pragma once

#include <vector>

#include "bkopt/field.hpp"
#include "bkopt/model.hpp"

namespace bkopt {

/// I1(w)/w by its power series sum_n (w/2)^(2n) / (2 n! (n+1)!), truncated
/// once a term drops below 1e-16 of the running sum. Equals 1/2 at w = 0.
double bessel_i1_over_arg(double w);

/// Closed-form backstepping kernel -c xi I1(w)/w with w = sqrt(c (1 - xi^2)).
double backstepping_kernel(double c, double xi);

/// Sine coefficients C_n = int_0^1 y0(x) sin(n pi x) dx, n = 1..N.
struct FourierInit {
  std::vector<double> coefficients;
};

/// Composite Simpson with `quad_nodes` (even) intervals.
FourierInit fourier_coefficients(const InitialCondition& y0, int modes, int quad_nodes);

/// Exact uncontrolled solution 2 sum_n C_n exp((c - n^2 pi^2) t) sin(n pi x)
/// sampled on the grid.
Field uncontrolled_exact(const FourierInit& fi, double c, const Grid& grid);

}  // namespace bkopt
