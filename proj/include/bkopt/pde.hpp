#pragma once

#include <vector>

#include "bkopt/field.hpp"
#include "bkopt/kernels.hpp"
#include "bkopt/model.hpp"

namespace bkopt {

/// Any |y| or |v| above this while marching is reported as blow-up.
inline constexpr double kBlowUpLimit = 1e12;
/// |1 - (h/2) k(1)| below this makes the trapezoid boundary closure singular.
inline constexpr double kClosureSingularity = 1e-10;

struct StateSolution {
  Field y;
  std::vector<double> u;  // y(1, t_j)
};

struct CostateSolution {
  Field v;
  std::vector<double> vx1;  // (v(n,j) - v(n-1,j)) / h
};

/// Forward explicit solve of the closed-loop state equation
/// y_t = y_xx + c y, y(0,t) = 0, y(1,t) = int_0^1 k(xi) y(xi,t) dxi.
///
/// The right boundary is closed at every level j >= 1 after the interior
/// update, using the trapezoid rule over the same level:
/// y_n = [1 - (h/2) k(1)]^-1 * h * sum_{i=1}^{n-1} k(x_i) y_i.
///
/// Throws NumericalError(BoundaryClosureSingular) before marching and
/// NumericalError(BlowUp) with the offending time index.
StateSolution solve_state(const ScenarioSpec& spec, const Theta& theta,
                          kernels::Exec exec = kernels::Exec::Parallel);

/// Same, with explicit initial samples (n+1 values) instead of spec.y0.
StateSolution solve_state(const ScenarioSpec& spec, const Theta& theta, const std::vector<double>& y0,
                          kernels::Exec exec = kernels::Exec::Parallel);

/// Backward explicit solve of the costate equation
/// v_t + v_xx + c v + y - k(x) v_x(1,t) = 0, v(0,t) = v(1,t) = 0, v(x,T) = 0.
///
/// The nonlocal term uses the one-sided difference (v_n - v_{n-1})/h at the
/// known later level. Throws NumericalError(BlowUp).
CostateSolution solve_costate(const ScenarioSpec& spec, const Theta& theta, const StateSolution& state,
                              kernels::Exec exec = kernels::Exec::Parallel);

}  // namespace bkopt
