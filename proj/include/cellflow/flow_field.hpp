#pragma once

#include <numbers>

namespace cellflow {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/** One-point evaluation of the cellular flow. */
struct FlowSample {
  double u = 0.0;      // x-velocity
  double v = 0.0;      // y-velocity
  double omega = 0.0;  // vorticity
  double psi = 0.0;    // streamfunction
};

/**
 * Closed-form cellular (Taylor-Green) flow on the periodic plane.
 *
 *   psi(x,y,t)   = -(U0/k) cos(kx) cos(ky) D(t)
 *   u(x,y,t)     =   U0 cos(kx) sin(ky) D(t)
 *   v(x,y,t)     =  -U0 sin(kx) cos(ky) D(t)
 *   omega(x,y,t) = -2 U0 k cos(kx) cos(ky) D(t)
 *
 * with D(t) = exp(-2 nu k^2 t) when decaying, else 1. The decaying form is
 * an exact solution of the incompressible Navier-Stokes equations (the
 * advection term vanishes identically for this flow); the stationary form
 * is the same field frozen at t = 0 and is exact for nu = 0.
 *
 * Coordinates are accepted unbounded; the field is 2*pi/k periodic in both
 * directions. Evaluations reject non-finite inputs and negative time.
 */
struct TaylorGreenField {
  double U0 = 1.0;                     // reference speed
  double nu = 1e-2;                    // kinematic viscosity
  double k = 1.0;                      // wavenumber
  bool decaying = false;               // stationary pattern when false
  double L = 4.0 * std::numbers::pi;   // domain side hint

  void validate() const;

  /** Amplitude factor D(t); identically 1 for a stationary field. */
  double decay(double t) const;

  Vec2 velocity(double x, double y, double t) const;
  double vorticity(double x, double y, double t) const;
  double streamfunction(double x, double y, double t) const;

  /** All four fields from one set of trig evaluations. */
  FlowSample sample(double x, double y, double t) const;

  /** Spatial period 2*pi/k. */
  double period() const;

  /** Peak flow speed at time t. */
  double max_speed(double t) const { return U0 * decay(t); }
};

}  // namespace cellflow
