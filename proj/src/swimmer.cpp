#include "cellflow/swimmer.hpp"

#include <cmath>
#include <numbers>

#include "cellflow/errors.hpp"

namespace cellflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Deriv {
  double dx, dy, dtheta;
};

}  // namespace

void SwimmerParams::validate() const {
  if (!(v_s >= 0.0)) throw ConfigError("swimmer.v_s must be >= 0");
  if (!(B > 0.0)) throw ConfigError("swimmer.B must be > 0");
  if (!(dt_phys > 0.0)) throw ConfigError("swimmer.dt_phys must be > 0");
  if (dt_phys > B / 5.0) throw ConfigError("swimmer.dt_phys must be <= B/5 to resolve steering");
}

double wrap_angle(double theta) {
  double w = std::fmod(theta, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;  // fmod can round back up to 2*pi
  return w;
}

SwimmerState step_swimmer(const SwimmerState& s, const SwimmerParams& p,
                          const TaylorGreenField& field, double preferred, double t) {
  const double h = p.dt_phys;

  auto deriv = [&](double x, double y, double theta, double tau) -> Deriv {
    const FlowSample f = field.sample(x, y, tau);
    return {f.u + p.v_s * std::cos(theta), f.v + p.v_s * std::sin(theta),
            0.5 * f.omega + std::sin(preferred - theta) / (2.0 * p.B)};
  };

  const Deriv k1 = deriv(s.x, s.y, s.theta, t);
  const Deriv k2 = deriv(s.x + 0.5 * h * k1.dx, s.y + 0.5 * h * k1.dy,
                         s.theta + 0.5 * h * k1.dtheta, t + 0.5 * h);
  const Deriv k3 = deriv(s.x + 0.5 * h * k2.dx, s.y + 0.5 * h * k2.dy,
                         s.theta + 0.5 * h * k2.dtheta, t + 0.5 * h);
  const Deriv k4 = deriv(s.x + h * k3.dx, s.y + h * k3.dy, s.theta + h * k3.dtheta, t + h);

  SwimmerState out;
  out.x = s.x + h / 6.0 * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
  out.y = s.y + h / 6.0 * (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy);
  out.theta =
      wrap_angle(s.theta + h / 6.0 * (k1.dtheta + 2.0 * k2.dtheta + 2.0 * k3.dtheta + k4.dtheta));

  if (!std::isfinite(out.x) || !std::isfinite(out.y) || !std::isfinite(out.theta)) {
    throw NumericalError("swimmer integration produced a non-finite state");
  }
  return out;
}

SwimmerState advect_tracer(const SwimmerState& s, const TaylorGreenField& field, double t,
                           double dt) {
  auto deriv = [&](double x, double y, double tau) -> Deriv {
    const FlowSample f = field.sample(x, y, tau);
    return {f.u, f.v, 0.5 * f.omega};
  };

  const Deriv k1 = deriv(s.x, s.y, t);
  const Deriv k2 = deriv(s.x + 0.5 * dt * k1.dx, s.y + 0.5 * dt * k1.dy, t + 0.5 * dt);
  const Deriv k3 = deriv(s.x + 0.5 * dt * k2.dx, s.y + 0.5 * dt * k2.dy, t + 0.5 * dt);
  const Deriv k4 = deriv(s.x + dt * k3.dx, s.y + dt * k3.dy, t + dt);

  SwimmerState out;
  out.x = s.x + dt / 6.0 * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
  out.y = s.y + dt / 6.0 * (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy);
  // theta still rotates with the local flow; it has no effect on the path.
  const double dth1 = k1.dtheta, dth2 = k2.dtheta, dth3 = k3.dtheta, dth4 = k4.dtheta;
  out.theta = wrap_angle(s.theta + dt / 6.0 * (dth1 + 2.0 * dth2 + 2.0 * dth3 + dth4));

  if (!std::isfinite(out.x) || !std::isfinite(out.y)) {
    throw NumericalError("tracer integration produced a non-finite state");
  }
  return out;
}

}  // namespace cellflow
