#include "bkopt/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include <Eigen/Dense>

#include "bkopt/errors.hpp"
#include "bkopt/pde.hpp"

namespace bkopt {

namespace {

using Vec3 = std::array<double, 3>;

constexpr double kInf = std::numeric_limits<double>::infinity();
// Largest infinity-norm move of one trial step. Consecutive characteristic
// roots are about pi apart, so alpha cannot hop to a neighbouring root.
constexpr double kMaxMove = 0.5;
constexpr double kCurvatureFloor = 1e-10;
// Relative move below which a step cannot change the merit meaningfully.
constexpr double kMinRelativeMove = 1e-13;
constexpr double kInnerTolStart = 1e-1;
constexpr double kViolationDecrease = 0.25;

Decision as_decision(const Vec3& x) { return Decision{{x[0], x[1]}, x[2]}; }

Vec3 project(const Vec3& x, const Bounds& b) {
  const Theta t = b.project(Theta{x[0], x[1]});
  return {t.theta1, t.theta2, std::max(0.0, x[2])};
}

double inf_norm(const Vec3& v) { return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])}); }

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

struct Multipliers {
  double l1 = 0.0;  // g1 >= 0
  double l2 = 0.0;  // alpha^2 - c - eps >= 0
  double l3 = 0.0;  // g3 / scale = 0
  double mu = 1.0;
  // d g3 / d alpha grows like alpha^3 and would dominate the penalty
  // curvature. The merit uses g3 / (1 + alpha_k^3), frozen per outer loop.
  double scale = 1.0;
  // Inequalities are targeted as con >= backoff so a point that is feasible
  // to solver accuracy also passes the strict certificate checks.
  double backoff = 0.0;
};

// PHR term for an inequality written as con >= 0.
double phr(double con, double lambda, double mu) {
  if (lambda - mu * con > 0.0) return -lambda * con + 0.5 * mu * con * con;
  return -lambda * lambda / (2.0 * mu);
}

double phr_weight(double con, double lambda, double mu) { return std::max(0.0, lambda - mu * con); }

struct Sample {
  Vec3 x{};
  CostBreakdown cost;
  std::optional<StateSolution> state;
};

// State solve and cost; nullopt when the solver fails at x.
std::optional<Sample> evaluate(const ScenarioSpec& spec, const Vec3& x) {
  const Theta theta{x[0], x[1]};
  try {
    Sample s;
    s.x = x;
    s.state = solve_state(spec, theta);
    s.cost = cost(spec, theta, *s.state);
    if (!std::isfinite(s.cost.total)) return std::nullopt;
    return s;
  } catch (const NumericalError&) {
    return std::nullopt;
  }
}

// Adjoint gradient of the cost; nullopt when the costate solve fails.
std::optional<Vec3> cost_grad(const ScenarioSpec& spec, const Sample& s) {
  const Theta theta{s.x[0], s.x[1]};
  try {
    const CostateSolution costate = solve_costate(spec, theta, *s.state);
    const GradientReport g = cost_gradient(spec, theta, *s.state, costate);
    const Vec3 out{g.d_theta1, g.d_theta2, 0.0};
    if (!std::isfinite(out[0]) || !std::isfinite(out[1])) return std::nullopt;
    return out;
  } catch (const NumericalError&) {
    return std::nullopt;
  }
}

double merit(const ScenarioSpec& spec, const Vec3& x, double f, const Multipliers& m) {
  const Theta theta{x[0], x[1]};
  const double c1 = g1(theta) - m.backoff;
  const double c2 = x[2] * x[2] - spec.c - spec.epsilon - m.backoff;
  const double h = g3(theta, x[2]) / m.scale;
  return f + phr(c1, m.l1, m.mu) + phr(c2, m.l2, m.mu) + m.l3 * h + 0.5 * m.mu * h * h;
}

Vec3 merit_grad(const ScenarioSpec& spec, const Vec3& x, const Vec3& grad_f, const Multipliers& m) {
  const ConstraintValues cv = constraint_values(Theta{x[0], x[1]}, x[2], spec.c);
  const double c2 = x[2] * x[2] - spec.c - spec.epsilon - m.backoff;
  const double w1 = phr_weight(cv.g1 - m.backoff, m.l1, m.mu);
  const double w2 = phr_weight(c2, m.l2, m.mu);
  const double w3 = (m.l3 + m.mu * cv.g3 / m.scale) / m.scale;
  Vec3 g = grad_f;
  g[0] += -w1 * cv.grad_g1[0] + w3 * cv.grad_g3[0];
  g[1] += -w1 * cv.grad_g1[1] + w3 * cv.grad_g3[1];
  g[2] += -w2 * 2.0 * x[2] + w3 * cv.grad_g3[2];
  return g;
}

double projected_gradient_norm(const Vec3& x, const Vec3& g, const Bounds& b) {
  const Vec3 p = project({x[0] - g[0], x[1] - g[1], x[2] - g[2]}, b);
  return inf_norm({p[0] - x[0], p[1] - x[1], p[2] - x[2]});
}

// Two-metric projection: variables held at a bound by the gradient take a
// plain gradient step, the rest are scaled by the inverse-Hessian estimate.
Vec3 scaled_direction(const Vec3& x, const Vec3& g, const Bounds& b, const Eigen::Matrix3d& inv_hessian) {
  const std::array<double, 3> lo{b.a1, b.a2, 0.0};
  const std::array<double, 3> hi{b.b1, b.b2, kInf};
  std::array<bool, 3> held{};
  for (int i = 0; i < 3; ++i) held[i] = (x[i] <= lo[i] && g[i] > 0.0) || (x[i] >= hi[i] && g[i] < 0.0);
  Eigen::Matrix3d h = inv_hessian;
  for (int i = 0; i < 3; ++i) {
    if (!held[i]) continue;
    h.row(i).setZero();
    h.col(i).setZero();
    h(i, i) = 1.0;
  }
  const Eigen::Vector3d d = -(h * Eigen::Vector3d(g[0], g[1], g[2]));
  return {d[0], d[1], d[2]};
}

}  // namespace

void OptimizerConfig::validate() const {
  if (max_iters < 1) throw ConfigError("optimizer.max_iters must be >= 1");
  if (max_outer < 1) throw ConfigError("optimizer.max_outer must be >= 1");
  if (!(grad_tol > 0.0)) throw ConfigError("optimizer.grad_tol must be > 0");
  if (!(constraint_tol > 0.0)) throw ConfigError("optimizer.constraint_tol must be > 0");
  if (!(penalty_init > 0.0)) throw ConfigError("optimizer.penalty_init must be > 0");
  if (!(penalty_growth > 1.0)) throw ConfigError("optimizer.penalty_growth must be > 1");
  if (!(armijo_c > 0.0 && armijo_c < 1.0)) throw ConfigError("optimizer.armijo_c must be in (0, 1)");
  if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0)) {
    throw ConfigError("optimizer.backtrack_factor must be in (0, 1)");
  }
  if (!(min_step > 0.0)) throw ConfigError("optimizer.min_step must be > 0");
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::Converged: return "converged";
    case Termination::LineSearchStalled: return "line_search_stalled";
    case Termination::MaxIterations: return "max_iterations";
  }
  return "unknown";
}

double constraint_violation(const Decision& d, double c, double epsilon) {
  const double v1 = std::max(0.0, -g1(d.theta));
  const double v2 = std::max(0.0, g2(d.alpha, c) + epsilon);
  const double v3 = std::abs(g3(d.theta, d.alpha));
  return std::max({v1, v2, v3});
}

OptimizationResult optimize(const ScenarioSpec& spec, const OptimizerConfig& config) {
  spec.validate();
  config.validate();

  Vec3 x0{spec.initial_guess.theta.theta1, spec.initial_guess.theta.theta2, spec.initial_guess.alpha};
  // Every constraint is flat in alpha at alpha = 0, so a gradient method
  // would never leave it. Start from the g2 boundary instead.
  if (x0[2] == 0.0) x0[2] = std::sqrt(spec.c + spec.epsilon);
  x0 = project(x0, spec.bounds);

  auto current = evaluate(spec, x0);
  if (!current) {
    // Reproduce the solver error for the caller.
    solve_state(spec, Theta{x0[0], x0[1]});
    throw NumericalError(NumericalFailure::BlowUp, "state solve failed at the initial guess");
  }
  std::optional<Vec3> first_grad = cost_grad(spec, *current);
  if (!first_grad) {
    solve_costate(spec, Theta{x0[0], x0[1]}, *current->state);
    throw NumericalError(NumericalFailure::BlowUp, "costate solve failed at the initial guess");
  }
  Vec3 grad_f = *first_grad;

  Multipliers mult;
  mult.mu = config.penalty_init;
  mult.backoff = config.constraint_tol;

  OptimizationResult result;
  const auto record = [&](int iteration, int outer, double step, double m) {
    IterateRecord r;
    r.iteration = iteration;
    r.outer = outer;
    r.decision = as_decision(current->x);
    r.cost = current->cost.total;
    r.constraint_violation = constraint_violation(r.decision, spec.c, spec.epsilon);
    r.step_length = step;
    r.merit = m;
    result.history.push_back(r);
  };
  record(0, 0, 0.0, merit(spec, current->x, current->cost.total, mult));

  int iterations = 0;
  double inner_tol = std::max(config.grad_tol, kInnerTolStart);
  double prev_violation = kInf;
  double pg = kInf;
  Termination termination = Termination::MaxIterations;
  bool done = false;

  Eigen::Matrix3d inv_hessian = Eigen::Matrix3d::Identity();
  bool have_curvature = false;
  for (int outer = 0; outer < config.max_outer && !done; ++outer) {
    const double new_scale = 1.0 + std::pow(current->x[2], 3);
    mult.l3 *= new_scale / mult.scale;  // same multiplier on unscaled g3
    mult.scale = new_scale;
    double m_cur = merit(spec, current->x, current->cost.total, mult);
    Vec3 g = merit_grad(spec, current->x, grad_f, mult);
    bool stalled = false;

    while (true) {
      pg = projected_gradient_norm(current->x, g, spec.bounds);
      if (pg <= inner_tol) break;
      if (iterations >= config.max_iters) {
        done = true;
        break;
      }

      const Vec3 dir = scaled_direction(current->x, g, spec.bounds,
                                        have_curvature ? inv_hessian
                                                       : Eigen::Matrix3d::Identity() / std::max(1.0, inf_norm(g)));
      double s = 1.0;
      std::optional<Sample> trial;
      std::optional<Vec3> trial_grad;
      double m_trial = kInf;
      Vec3 d{};
      while (true) {
        if (s < config.min_step) break;
        const Vec3 xt = project(
            {current->x[0] + s * dir[0], current->x[1] + s * dir[1], current->x[2] + s * dir[2]}, spec.bounds);
        d = {xt[0] - current->x[0], xt[1] - current->x[1], xt[2] - current->x[2]};
        const double slope = dot(g, d);
        if (inf_norm(d) < kMinRelativeMove * std::max(1.0, inf_norm(current->x))) break;
        if (inf_norm(d) > kMaxMove || !(slope < 0.0)) {
          s *= config.backtrack_factor;
          continue;
        }
        trial = evaluate(spec, xt);
        m_trial = trial ? merit(spec, xt, trial->cost.total, mult) : kInf;
        if (m_trial <= m_cur + config.armijo_c * slope) {
          trial_grad = cost_grad(spec, *trial);
          if (trial_grad) break;
        }
        trial.reset();
        s *= config.backtrack_factor;
      }
      if (!trial) {
        stalled = true;
        have_curvature = false;
        break;
      }

      ++iterations;
      current = std::move(trial);
      grad_f = *trial_grad;
      const Vec3 g_new = merit_grad(spec, current->x, grad_f, mult);
      const Eigen::Vector3d sk(d[0], d[1], d[2]);
      const Eigen::Vector3d yk(g_new[0] - g[0], g_new[1] - g[1], g_new[2] - g[2]);
      const double sy = sk.dot(yk);
      if (sy > kCurvatureFloor * sk.norm() * yk.norm()) {
        if (!have_curvature) {
          inv_hessian = Eigen::Matrix3d::Identity() * (sy / yk.squaredNorm());
          have_curvature = true;
        }
        const double rho = 1.0 / sy;
        const Eigen::Matrix3d left = Eigen::Matrix3d::Identity() - rho * sk * yk.transpose();
        inv_hessian = left * inv_hessian * left.transpose() + rho * sk * sk.transpose();
      }
      g = g_new;
      m_cur = m_trial;
      record(iterations, outer, s, m_cur);
    }

    const double violation = constraint_violation(as_decision(current->x), spec.c, spec.epsilon);
    if (pg <= config.grad_tol && violation <= config.constraint_tol) {
      termination = Termination::Converged;
      break;
    }
    if (stalled && violation <= config.constraint_tol) {
      termination = Termination::LineSearchStalled;
      break;
    }
    if (done) break;

    const Theta theta{current->x[0], current->x[1]};
    const double c2 = current->x[2] * current->x[2] - spec.c - spec.epsilon - mult.backoff;
    mult.l1 = std::max(0.0, mult.l1 - mult.mu * (g1(theta) - mult.backoff));
    mult.l2 = std::max(0.0, mult.l2 - mult.mu * c2);
    mult.l3 += mult.mu * g3(theta, current->x[2]) / mult.scale;
    if (violation > kViolationDecrease * prev_violation) {
      mult.mu *= config.penalty_growth;
      have_curvature = false;  // the merit curvature just changed scale
    }
    prev_violation = violation;
    inner_tol = std::max(config.grad_tol, 0.1 * inner_tol);
  }

  result.decision = as_decision(current->x);
  result.cost_breakdown = current->cost;
  result.converged = termination == Termination::Converged;
  result.termination = termination;
  result.projected_gradient_norm = pg;
  result.constraint_violation = constraint_violation(result.decision, spec.c, spec.epsilon);
  result.multipliers = {mult.l1, mult.l2, mult.l3};
  result.penalty = mult.mu;
  result.spectral = certify(spec, result.decision);
  return result;
}

}  // namespace bkopt
