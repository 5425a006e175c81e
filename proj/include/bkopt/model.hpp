#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace bkopt {

/// Uniform space-time grid on [0,1] x [0,T].
///
/// Derived quantities h, tau and r = tau/h^2 are computed once here and read
/// by every solver and quadrature routine. Construction enforces even interval
/// counts (composite Simpson in both directions) and r <= 0.5.
class Grid {
 public:
  Grid(int n, int m, double T);

  int n() const noexcept { return n_; }
  int m() const noexcept { return m_; }
  double T() const noexcept { return T_; }
  double h() const noexcept { return h_; }
  double tau() const noexcept { return tau_; }
  double r() const noexcept { return r_; }

  double x(int i) const noexcept { return i * h_; }
  double t(int j) const noexcept { return j * tau_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int n_;
  int m_;
  double T_;
  double h_;
  double tau_;
  double r_;
};

struct Theta {
  double theta1 = 0.0;
  double theta2 = 0.0;

  friend bool operator==(const Theta&, const Theta&) = default;
};

/// Kernel coefficients plus the candidate smallest characteristic root.
struct Decision {
  Theta theta;
  double alpha = 0.0;

  friend bool operator==(const Decision&, const Decision&) = default;
};

/// Feedback kernel k(xi) = theta1 * xi + theta2 * xi^2.
constexpr double kernel_eval(const Theta& theta, double xi) noexcept {
  return theta.theta1 * xi + theta.theta2 * xi * xi;
}

struct Bounds {
  double a1 = -10.0;
  double b1 = 10.0;
  double a2 = -10.0;
  double b2 = 10.0;

  bool contains(const Theta& theta) const noexcept {
    return a1 <= theta.theta1 && theta.theta1 <= b1 && a2 <= theta.theta2 && theta.theta2 <= b2;
  }
  Theta project(const Theta& theta) const noexcept;

  friend bool operator==(const Bounds&, const Bounds&) = default;
};

/// y0(x) = sin(pi x).
struct SinPi {
  friend bool operator==(const SinPi&, const SinPi&) = default;
};

/// y0(x) = (a + b x) sin(freq pi x).
struct EnvelopeSin {
  double a = 1.0;
  double b = 0.0;
  double freq = 1.0;

  friend bool operator==(const EnvelopeSin&, const EnvelopeSin&) = default;
};

/// Initial profile given as n+1 samples on the uniform spatial grid.
struct SampledProfile {
  std::vector<double> values;

  friend bool operator==(const SampledProfile&, const SampledProfile&) = default;
};

class InitialCondition {
 public:
  using Shape = std::variant<SinPi, EnvelopeSin, SampledProfile>;

  InitialCondition() = default;
  InitialCondition(Shape shape);  // NOLINT(google-explicit-constructor)
  InitialCondition(SinPi s) : InitialCondition(Shape{s}) {}                   // NOLINT
  InitialCondition(EnvelopeSin s) : InitialCondition(Shape{s}) {}             // NOLINT
  InitialCondition(SampledProfile s) : InitialCondition(Shape{std::move(s)}) {}  // NOLINT

  const Shape& shape() const noexcept { return shape_; }

  /// Point evaluation. Sampled profiles interpolate linearly between nodes.
  double operator()(double x) const;

  friend bool operator==(const InitialCondition&, const InitialCondition&) = default;

 private:
  Shape shape_ = SinPi{};
};

/// y0(x_i), i = 0..n. Sampled profiles must carry exactly n+1 values.
std::vector<double> initial_condition_samples(const InitialCondition& ic, const Grid& grid);

/// Settings for the span (least-squares) part of the stability certificate.
struct SpanCheck {
  int modes = 10;
  double threshold = 1e-2;
  /// Quadrature intervals for the Gram/moment integrals = refine * grid.n().
  int refine = 1;

  friend bool operator==(const SpanCheck&, const SpanCheck&) = default;
};

struct ScenarioSpec {
  std::string name = "scenario";
  double c = 10.0;
  Grid grid{14, 5000, 4.0};
  InitialCondition y0;
  Bounds bounds;
  double epsilon = 1.0;
  Decision initial_guess;
  SpanCheck span;

  /// Throws ConfigError on c <= 0, epsilon <= 0, inverted bounds or an
  /// incompatible initial condition.
  void validate() const;
};

}  // namespace bkopt
