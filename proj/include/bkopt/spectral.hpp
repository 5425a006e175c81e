#pragma once

#include <string>
#include <vector>

#include "bkopt/model.hpp"

namespace bkopt {

/// First N positive zeros of g3(theta, .) in ascending order, with |g3| at each.
struct RootSequence {
  std::vector<double> roots;
  std::vector<double> residuals;

  friend bool operator==(const RootSequence&, const RootSequence&) = default;
};

/// Bracketing default: bisection runs until the bracket is no wider than this
/// or cannot be split in floating point.
inline constexpr double kDefaultRootTol = 1e-15;

/// Dense sign scan of g3 on (0, (N+2) pi] with step pi/200, bisection inside
/// each bracket. Every window [k pi - pi/2, k pi + pi/2) that yields no
/// bracket is rescanned ten times finer so tangential pairs are not skipped.
///
/// Throws NumericalError(RootsNotFound) when fewer than N roots exist in the
/// scan range; the message says whether g1 < 0 is the likely cause.
RootSequence find_roots(const Theta& theta, int count, double tol = kDefaultRootTol);

/// sigma_n = c - alpha_n^2.
std::vector<double> eigenvalues(const RootSequence& roots, double c);

struct SpanFit {
  double J = 0.0;                 // min int_0^1 |y0 - sum Y_n sin(alpha_n x)|^2 dx
  std::vector<double> coefficients;
  double condition = 1.0;         // Gram matrix 2-norm condition number
};

/// Least-squares fit of y0 by sin(alpha_n x) through the normal equations.
/// Integrals use composite Simpson on refine * grid.n() uniform intervals.
/// Throws NumericalError(SingularGram) when the Gram condition exceeds 1e12.
SpanFit span_fit(const InitialCondition& y0, const RootSequence& roots, const Grid& grid, int refine = 1);

struct CertifyOptions {
  int modes = 10;
  double span_threshold = 1e-2;
  int span_refine = 1;
  double root_tol = kDefaultRootTol;
  /// Absolute tolerance for decision.alpha == alpha_1. Nonpositive selects
  /// the default 1e-6 * (1 + alpha_1).
  double alpha_tolerance = 0.0;
  /// g1 >= -g1_tolerance counts as satisfied.
  double g1_tolerance = 0.0;

  static CertifyOptions from(const SpanCheck& span);
};

struct SpectralReport {
  Decision decision;
  int modes = 0;
  RootSequence roots;
  std::vector<double> eigenvalues;
  double span_residual_J = 0.0;
  std::vector<double> span_coefficients;
  double g1 = 0.0;
  bool g1_ok = false;
  bool smallest_root_is_alpha = false;
  bool margin_ok = false;
  bool span_ok = false;
  bool stable = false;
  /// Why stable is false: g1_negative, roots_not_found, alpha_not_smallest_root,
  /// eigenvalue_margin, span_residual.
  std::vector<std::string> reasons;

  friend bool operator==(const SpectralReport&, const SpectralReport&) = default;
};

SpectralReport certify(const ScenarioSpec& spec, const Decision& decision, const CertifyOptions& options);
inline SpectralReport certify(const ScenarioSpec& spec, const Decision& decision) {
  return certify(spec, decision, CertifyOptions::from(spec.span));
}

/// Amplitude-phase form of the characteristic function:
/// g3 = Q(alpha) sin(alpha + phi(alpha)) + 2 theta2.
struct AngleForm {
  double Q = 0.0;
  double phi = 0.0;
  double value = 0.0;
};

AngleForm characteristic_angle_form(const Theta& theta, double alpha);

}  // namespace bkopt
