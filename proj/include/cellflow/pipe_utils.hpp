#pragma once

#include <cstddef>
#include <span>

namespace cellflow {

/** Parabolic laminar pipe profile u(r) = U0 (1 - (r/R)^2). */
struct PipeProfile {
  double R = 1.0;   // pipe radius
  double U0 = 1.0;  // centerline speed

  void validate() const;
};

/** Axial speed at radius r; r must lie in [0, R]. */
double poiseuille(const PipeProfile& profile, double r);

/**
 * Cylindrical sampling grid for axial-velocity fields.
 *
 * Nodes are cell midpoints in r and z and uniform in theta:
 *   r_i = (i + 1/2) R / n_r,  theta_j = 2 pi j / n_theta,  z_k = (k + 1/2) length / n_z.
 * Samples are indexed r-major: idx(i, j, k) = (i * n_theta + j) * n_z + k.
 */
struct PipeGrid {
  int n_r = 0;
  int n_theta = 0;
  int n_z = 0;
  double R = 1.0;
  double length = 1.0;

  void validate() const;
  double r(int i) const;
  double theta(int j) const;
  double z(int k) const;
  std::size_t size() const { return static_cast<std::size_t>(n_r) * n_theta * n_z; }
  std::size_t idx(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n_theta + j) * n_z + k;
  }
};

/**
 * Volume-weighted discrete L2 norm of the deviation of sampled axial
 * velocities from the parabolic profile: sqrt(sum (u - u_profile)^2 r dr dtheta dz).
 * Converges to the integral norm over the pipe volume under grid refinement.
 */
double disturbance_norm(const PipeGrid& grid, std::span<const double> axial_velocity,
                        const PipeProfile& profile);

}  // namespace cellflow
