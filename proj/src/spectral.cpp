#include "bkopt/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "bkopt/errors.hpp"
#include "bkopt/kernels.hpp"
#include "bkopt/objective.hpp"
#include "bkopt/quadrature.hpp"

namespace bkopt {

namespace {

using std::numbers::pi;

constexpr int kScanPerPi = 200;
constexpr int kProbeFactor = 10;
constexpr double kMaxGramCondition = 1e12;

struct Bracket {
  double lo;
  double hi;
};

/// Sign-change brackets of g3 over the samples alpha_k = start + k*step, k=1..count.
std::vector<Bracket> scan(const Theta& theta, double start, double step, long count) {
  std::vector<double> alpha(static_cast<std::size_t>(count));
  for (long k = 0; k < count; ++k) alpha[static_cast<std::size_t>(k)] = start + static_cast<double>(k + 1) * step;
  std::vector<double> value(alpha.size());
  kernels::sample_characteristic(theta, alpha, value, kernels::Exec::Parallel);

  std::vector<Bracket> out;
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    if (value[k] == 0.0) {
      out.push_back({alpha[k], alpha[k]});
    } else if (k + 1 < alpha.size() && ((value[k] < 0.0 && value[k + 1] > 0.0) ||
                                        (value[k] > 0.0 && value[k + 1] < 0.0))) {
      out.push_back({alpha[k], alpha[k + 1]});
    }
  }
  return out;
}

double bisect(const Theta& theta, Bracket b, double tol) {
  double lo = b.lo;
  double hi = b.hi;
  double flo = g3(theta, lo);
  double fhi = g3(theta, hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  while (hi - lo > tol) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double fm = g3(theta, mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  return std::abs(flo) <= std::abs(fhi) ? lo : hi;
}

}  // namespace

RootSequence find_roots(const Theta& theta, int count, double tol) {
  if (count < 1) throw ConfigError("find_roots needs count >= 1");
  if (!(tol > 0.0)) throw ConfigError("find_roots needs tol > 0");

  const double step = pi / kScanPerPi;
  const long samples = static_cast<long>(count + 2) * kScanPerPi;
  auto brackets = scan(theta, 0.0, step, samples);

  // Probe windows around each k*pi; an empty window is rescanned finer.
  for (int k = 1; k <= count + 1; ++k) {
    const double lo = k * pi - 0.5 * pi;
    const double hi = std::min(k * pi + 0.5 * pi, (count + 2) * pi);
    const bool covered = std::any_of(brackets.begin(), brackets.end(),
                                     [&](const Bracket& b) { return b.hi > lo && b.lo < hi; });
    if (covered) continue;
    const double fine = step / kProbeFactor;
    const long fine_count = static_cast<long>(std::floor((hi - lo) / fine));
    auto extra = scan(theta, lo, fine, fine_count);
    brackets.insert(brackets.end(), extra.begin(), extra.end());
  }
  std::sort(brackets.begin(), brackets.end(), [](const Bracket& a, const Bracket& b) { return a.lo < b.lo; });

  // Each bracket refines independently; slots keep the merge deterministic.
  std::vector<double> refined(brackets.size());
  const long nb = static_cast<long>(brackets.size());
#pragma omp parallel for schedule(dynamic) if (nb >= 64)
  for (long b = 0; b < nb; ++b) {
    refined[static_cast<std::size_t>(b)] = bisect(theta, brackets[static_cast<std::size_t>(b)], tol);
  }
  refined.erase(std::unique(refined.begin(), refined.end()), refined.end());

  if (refined.size() < static_cast<std::size_t>(count)) {
    const bool g1_negative = g1(theta) < 0.0;
    throw NumericalError(NumericalFailure::RootsNotFound,
                         "found " + std::to_string(refined.size()) + " of " + std::to_string(count) +
                             " characteristic roots in (0, " + std::to_string(count + 2) + " pi]; " +
                             (g1_negative ? "g1(theta) < 0, infinitely many roots are not guaranteed"
                                             : "scan range exhausted"));
  }
  refined.resize(static_cast<std::size_t>(count));

  RootSequence out;
  out.roots = std::move(refined);
  out.residuals.reserve(out.roots.size());
  for (double a : out.roots) out.residuals.push_back(std::abs(g3(theta, a)));
  return out;
}

std::vector<double> eigenvalues(const RootSequence& roots, double c) {
  std::vector<double> out;
  out.reserve(roots.roots.size());
  for (double a : roots.roots) out.push_back(c - a * a);
  return out;
}

SpanFit span_fit(const InitialCondition& y0, const RootSequence& roots, const Grid& grid, int refine) {
  const std::size_t modes = roots.roots.size();
  if (modes == 0) throw ConfigError("span_fit needs at least one root");
  if (refine < 1) throw ConfigError("span_fit refinement must be >= 1");

  const int intervals = refine * grid.n();
  const double h = 1.0 / intervals;
  const auto nodes = static_cast<std::size_t>(intervals + 1);

  std::vector<double> target;
  if (refine == 1) {
    target = initial_condition_samples(y0, grid);
  } else {
    target.resize(nodes);
    for (std::size_t i = 0; i < nodes; ++i) target[i] = y0(static_cast<double>(i) * h);
  }

  // Composite Simpson weights.
  Eigen::VectorXd w(static_cast<Eigen::Index>(nodes));
  for (std::size_t i = 0; i < nodes; ++i) {
    const double base = (i == 0 || i + 1 == nodes) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    w[static_cast<Eigen::Index>(i)] = base * h / 3.0;
  }
  Eigen::MatrixXd basis(static_cast<Eigen::Index>(nodes), static_cast<Eigen::Index>(modes));
  for (std::size_t i = 0; i < nodes; ++i) {
    const double x = static_cast<double>(i) * h;
    for (std::size_t k = 0; k < modes; ++k) {
      basis(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = std::sin(roots.roots[k] * x);
    }
  }
  const Eigen::Map<const Eigen::VectorXd> y(target.data(), static_cast<Eigen::Index>(nodes));

  const Eigen::MatrixXd gram = basis.transpose() * w.asDiagonal() * basis;
  const Eigen::VectorXd moments = basis.transpose() * w.cwiseProduct(y);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> spectrum(gram, Eigen::EigenvaluesOnly);
  const double lmin = spectrum.eigenvalues().minCoeff();
  const double lmax = spectrum.eigenvalues().maxCoeff();
  const double condition = lmin > 0.0 ? lmax / lmin : std::numeric_limits<double>::infinity();
  if (!(condition <= kMaxGramCondition)) {
    throw NumericalError(NumericalFailure::SingularGram,
                         "span Gram matrix is numerically singular (condition " + std::to_string(condition) +
                             "); modes are nearly dependent on this quadrature");
  }
  const Eigen::LLT<Eigen::MatrixXd> chol(gram);
  if (chol.info() != Eigen::Success) {
    throw NumericalError(NumericalFailure::SingularGram, "span Gram matrix is not positive definite");
  }
  const Eigen::VectorXd coef = chol.solve(moments);

  const Eigen::VectorXd residual = y - basis * coef;
  std::vector<double> sq(nodes);
  for (std::size_t i = 0; i < nodes; ++i) sq[i] = residual[static_cast<Eigen::Index>(i)] * residual[static_cast<Eigen::Index>(i)];

  SpanFit out;
  out.J = simpson({sq, h});
  out.coefficients.assign(coef.data(), coef.data() + coef.size());
  out.condition = condition;
  return out;
}

CertifyOptions CertifyOptions::from(const SpanCheck& span) {
  CertifyOptions out;
  out.modes = span.modes;
  out.span_threshold = span.threshold;
  out.span_refine = span.refine;
  return out;
}

SpectralReport certify(const ScenarioSpec& spec, const Decision& decision, const CertifyOptions& options) {
  SpectralReport report;
  report.decision = decision;
  report.modes = options.modes;
  report.g1 = g1(decision.theta);
  report.g1_ok = report.g1 >= -options.g1_tolerance;
  if (!report.g1_ok) report.reasons.emplace_back("g1_negative");

  try {
    report.roots = find_roots(decision.theta, options.modes, options.root_tol);
  } catch (const NumericalError& e) {
    // Without g1 >= 0 a short root list is an expected outcome, not a failure.
    if (report.g1_ok || e.kind() != NumericalFailure::RootsNotFound) throw;
    report.reasons.emplace_back("roots_not_found");
    return report;
  }

  const double alpha1 = report.roots.roots.front();
  const double alpha_tol = options.alpha_tolerance > 0.0 ? options.alpha_tolerance : 1e-6 * (1.0 + alpha1);
  report.smallest_root_is_alpha = std::abs(decision.alpha - alpha1) <= alpha_tol;
  if (!report.smallest_root_is_alpha) report.reasons.emplace_back("alpha_not_smallest_root");

  report.eigenvalues = eigenvalues(report.roots, spec.c);
  report.margin_ok = report.eigenvalues.front() <= -spec.epsilon;
  if (!report.margin_ok) report.reasons.emplace_back("eigenvalue_margin");

  const SpanFit fit = span_fit(spec.y0, report.roots, spec.grid, options.span_refine);
  report.span_residual_J = fit.J;
  report.span_coefficients = fit.coefficients;
  report.span_ok = fit.J <= options.span_threshold;
  if (!report.span_ok) report.reasons.emplace_back("span_residual");

  report.stable = report.g1_ok && report.smallest_root_is_alpha && report.margin_ok && report.span_ok;
  return report;
}

AngleForm characteristic_angle_form(const Theta& theta, double alpha) {
  const double a2 = alpha * alpha;
  const double cos_part = theta.theta1 * a2 + theta.theta2 * a2 - 2.0 * theta.theta2;
  const double sin_part = a2 * alpha - theta.theta1 * alpha - 2.0 * theta.theta2 * alpha;
  AngleForm out;
  out.Q = std::hypot(cos_part, sin_part);
  out.phi = std::atan2(cos_part, sin_part);
  out.value = out.Q * std::sin(alpha + out.phi) + 2.0 * theta.theta2;
  return out;
}

}  // namespace bkopt
