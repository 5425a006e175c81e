#pragma once

// Data-parallel inner loops shared by the solvers, quadrature and root scan.
//
// Every kernel has a serial reference in `kernels::serial` and an OpenMP
// version in `kernels::omp`. Both produce bit-identical output: the parallel
// versions only split independent per-index work, and any final reduction is
// done serially in ascending index order.

#include <span>

#include "bkopt/field.hpp"
#include "bkopt/model.hpp"

namespace bkopt::kernels {

enum class Exec { Serial, Parallel };

/// Coefficients of the explicit heat-reaction stencil
/// out[i] = diag * in[i] + r * (in[i-1] + in[i+1]).
struct Stencil {
  double diag;
  double r;
};

namespace serial {

/// Interior update i = 1..n-1 of one forward state step. Boundary entries of
/// `next` are left untouched.
void state_interior(std::span<const double> prev, std::span<double> next, Stencil s);

/// Interior update i = 1..n-1 of one backward costate step:
/// out[i] = diag*v[i] + r*(v[i+1]+v[i-1]) + tau*y[i] - coupling*k[i],
/// where coupling = (tau/h) * (v[n] - v[n-1]).
void costate_interior(std::span<const double> later, std::span<const double> y_later,
                      std::span<const double> kernel, Stencil s, double tau, double coupling,
                      std::span<double> out);

/// phi[j] = composite Simpson over x of time level j, for every j.
void slice_simpson(const Field& field, std::span<double> phi);

/// out(i,j) = weight[i] * vx1[j] * y(i,j).
void weighted_product(const Field& y, std::span<const double> weight, std::span<const double> vx1,
                      Field& out);

/// out[k] = g3(theta, alpha[k]).
void sample_characteristic(const Theta& theta, std::span<const double> alpha, std::span<double> out);

}  // namespace serial

namespace omp {

void state_interior(std::span<const double> prev, std::span<double> next, Stencil s);
void costate_interior(std::span<const double> later, std::span<const double> y_later,
                      std::span<const double> kernel, Stencil s, double tau, double coupling,
                      std::span<double> out);
void slice_simpson(const Field& field, std::span<double> phi);
void weighted_product(const Field& y, std::span<const double> weight, std::span<const double> vx1,
                      Field& out);
void sample_characteristic(const Theta& theta, std::span<const double> alpha, std::span<double> out);

/// Threads OpenMP will use (1 when built without OpenMP).
int max_threads() noexcept;

}  // namespace omp

inline void state_interior(std::span<const double> prev, std::span<double> next, Stencil s, Exec exec) {
  exec == Exec::Parallel ? omp::state_interior(prev, next, s) : serial::state_interior(prev, next, s);
}

inline void costate_interior(std::span<const double> later, std::span<const double> y_later,
                             std::span<const double> kernel, Stencil s, double tau, double coupling,
                             std::span<double> out, Exec exec) {
  exec == Exec::Parallel ? omp::costate_interior(later, y_later, kernel, s, tau, coupling, out)
                         : serial::costate_interior(later, y_later, kernel, s, tau, coupling, out);
}

inline void slice_simpson(const Field& field, std::span<double> phi, Exec exec) {
  exec == Exec::Parallel ? omp::slice_simpson(field, phi) : serial::slice_simpson(field, phi);
}

inline void weighted_product(const Field& y, std::span<const double> weight, std::span<const double> vx1,
                             Field& out, Exec exec) {
  exec == Exec::Parallel ? omp::weighted_product(y, weight, vx1, out)
                         : serial::weighted_product(y, weight, vx1, out);
}

inline void sample_characteristic(const Theta& theta, std::span<const double> alpha, std::span<double> out,
                                  Exec exec) {
  exec == Exec::Parallel ? omp::sample_characteristic(theta, alpha, out)
                         : serial::sample_characteristic(theta, alpha, out);
}

}  // namespace bkopt::kernels
