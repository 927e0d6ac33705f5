#include "cellflow/flow_field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cellflow/errors.hpp"

namespace cellflow {

namespace {

void check_point(double x, double y, double t) {
  if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(t)) {
    throw std::invalid_argument("flow field evaluated at non-finite (x, y, t)");
  }
  if (t < 0.0) {
    throw std::invalid_argument("flow field evaluated at negative time");
  }
}

}  // namespace

void TaylorGreenField::validate() const {
  if (!(U0 > 0.0)) throw ConfigError("flow.U0 must be > 0");
  if (!(nu >= 0.0)) throw ConfigError("flow.nu must be >= 0");
  if (!(k > 0.0)) throw ConfigError("flow.k must be > 0");
  if (!(L > 0.0)) throw ConfigError("flow.L must be > 0");
}

double TaylorGreenField::decay(double t) const {
  return decaying ? std::exp(-2.0 * nu * k * k * t) : 1.0;
}

double TaylorGreenField::period() const { return 2.0 * std::numbers::pi / k; }

Vec2 TaylorGreenField::velocity(double x, double y, double t) const {
  check_point(x, y, t);
  const double d = decay(t);
  return {U0 * std::cos(k * x) * std::sin(k * y) * d,
          -U0 * std::sin(k * x) * std::cos(k * y) * d};
}

double TaylorGreenField::vorticity(double x, double y, double t) const {
  check_point(x, y, t);
  return -2.0 * U0 * k * std::cos(k * x) * std::cos(k * y) * decay(t);
}

double TaylorGreenField::streamfunction(double x, double y, double t) const {
  check_point(x, y, t);
  return -(U0 / k) * std::cos(k * x) * std::cos(k * y) * decay(t);
}

FlowSample TaylorGreenField::sample(double x, double y, double t) const {
  check_point(x, y, t);
  const double cx = std::cos(k * x);
  const double sx = std::sin(k * x);
  const double cy = std::cos(k * y);
  const double sy = std::sin(k * y);
  const double d = decay(t);
  FlowSample s;
  s.u = U0 * cx * sy * d;
  s.v = -U0 * sx * cy * d;
  s.omega = -2.0 * U0 * k * cx * cy * d;
  s.psi = -(U0 / k) * cx * cy * d;
  return s;
}

}  // namespace cellflow
