#pragma once

#include "cellflow/flow_field.hpp"

namespace cellflow {

struct SwimmerParams {
  double v_s = 0.3;       // swim speed
  double B = 1.0;         // alignment relaxation timescale
  double dt_phys = 1e-2;  // integration step

  void validate() const;
};

/** Position is unwrapped (never folded back into the periodic cell). */
struct SwimmerState {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;  // orientation, kept in [0, 2*pi)
};

/** Normalize an angle into [0, 2*pi). */
double wrap_angle(double theta);

/**
 * One RK4 step of the steered-swimmer kinematics from time t:
 *
 *   dx/dt     = u(x,y,t) + v_s cos(theta)
 *   dy/dt     = v(x,y,t) + v_s sin(theta)
 *   dtheta/dt = omega(x,y,t)/2 + sin(preferred - theta)/(2B)
 *
 * i.e. rigid rotation at half the local vorticity plus relaxation toward the
 * commanded direction. `preferred` is the commanded heading angle.
 */
SwimmerState step_swimmer(const SwimmerState& s, const SwimmerParams& p,
                          const TaylorGreenField& field, double preferred, double t);

/** Passive tracer step: same integrator with the swim and steering terms removed. */
SwimmerState advect_tracer(const SwimmerState& s, const TaylorGreenField& field, double t,
                           double dt);

}  // namespace cellflow
