#include "bkopt/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bkopt/errors.hpp"

namespace bkopt {

const char* to_string(NumericalFailure kind) {
  switch (kind) {
    case NumericalFailure::BoundaryClosureSingular: return "boundary_closure_singular";
    case NumericalFailure::BlowUp: return "blow_up";
    case NumericalFailure::SingularGram: return "singular_gram";
    case NumericalFailure::RootsNotFound: return "roots_not_found";
  }
  return "unknown";
}

Grid::Grid(int n, int m, double T) : n_(n), m_(m), T_(T) {
  if (n < 2 || m < 2) throw ConfigError("grid needs n >= 2 and m >= 2");
  if (n % 2 != 0 || m % 2 != 0) {
    throw ConfigError("grid interval counts must be even (n=" + std::to_string(n) +
                      ", m=" + std::to_string(m) + ")");
  }
  if (!(T > 0.0) || !std::isfinite(T)) throw ConfigError("horizon T must be positive");
  h_ = 1.0 / n;
  tau_ = T / m;
  r_ = tau_ / (h_ * h_);
  // Rounding slack only; r = 0.5 itself is admissible.
  if (r_ > 0.5 * (1.0 + 1e-12)) {
    throw ConfigError("explicit scheme requires tau/h^2 <= 0.5, got r=" + std::to_string(r_));
  }
}

Theta Bounds::project(const Theta& theta) const noexcept {
  return {std::clamp(theta.theta1, a1, b1), std::clamp(theta.theta2, a2, b2)};
}

InitialCondition::InitialCondition(Shape shape) : shape_(std::move(shape)) {
  if (const auto* s = std::get_if<SampledProfile>(&shape_)) {
    if (s->values.size() < 3) throw ConfigError("sampled initial condition needs at least 3 values");
    if (std::abs(s->values.front()) > 1e-12) {
      throw ConfigError("initial condition must vanish at x=0");
    }
    for (double v : s->values) {
      if (!std::isfinite(v)) throw ConfigError("initial condition samples must be finite");
    }
  }
}

double InitialCondition::operator()(double x) const {
  using std::numbers::pi;
  struct Visitor {
    double x;
    double operator()(const SinPi&) const { return std::sin(pi * x); }
    double operator()(const EnvelopeSin& e) const { return (e.a + e.b * x) * std::sin(e.freq * pi * x); }
    double operator()(const SampledProfile& s) const {
      const auto intervals = static_cast<double>(s.values.size() - 1);
      const double pos = std::clamp(x, 0.0, 1.0) * intervals;
      const auto i = std::min(static_cast<std::size_t>(pos), s.values.size() - 2);
      const double w = pos - static_cast<double>(i);
      return (1.0 - w) * s.values[i] + w * s.values[i + 1];
    }
  };
  return std::visit(Visitor{x}, shape_);
}

std::vector<double> initial_condition_samples(const InitialCondition& ic, const Grid& grid) {
  const auto count = static_cast<std::size_t>(grid.n() + 1);
  if (const auto* s = std::get_if<SampledProfile>(&ic.shape())) {
    if (s->values.size() != count) {
      throw ConfigError("sampled initial condition has " + std::to_string(s->values.size()) +
                        " values, grid needs " + std::to_string(count));
    }
    return s->values;
  }
  std::vector<double> out(count);
  for (int i = 0; i <= grid.n(); ++i) out[static_cast<std::size_t>(i)] = ic(grid.x(i));
  return out;
}

void ScenarioSpec::validate() const {
  if (!(c > 0.0)) throw ConfigError("reaction coefficient c must be positive");
  if (!(epsilon > 0.0)) throw ConfigError("stability margin epsilon must be positive");
  if (!(bounds.a1 <= bounds.b1) || !(bounds.a2 <= bounds.b2)) throw ConfigError("inverted kernel bounds");
  if (initial_guess.alpha < 0.0) throw ConfigError("initial alpha must be nonnegative");
  if (span.modes < 1) throw ConfigError("span check needs at least one mode");
  if (!(span.threshold > 0.0)) throw ConfigError("span threshold must be positive");
  if (span.refine < 1) throw ConfigError("span quadrature refinement must be >= 1");
  (void)initial_condition_samples(y0, grid);
}

}  // namespace bkopt
