#include "cellflow/pipe_utils.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cellflow/errors.hpp"

namespace cellflow {

void PipeProfile::validate() const {
  if (!(R > 0.0)) throw ConfigError("pipe radius must be > 0");
  if (!(U0 > 0.0)) throw ConfigError("pipe centerline speed must be > 0");
}

double poiseuille(const PipeProfile& profile, double r) {
  profile.validate();
  if (!std::isfinite(r) || r < 0.0 || r > profile.R) {
    throw std::domain_error("poiseuille: radius outside [0, R]");
  }
  const double q = r / profile.R;
  return profile.U0 * (1.0 - q * q);
}

void PipeGrid::validate() const {
  if (n_r < 1 || n_theta < 1 || n_z < 1) throw ConfigError("pipe grid must be non-empty");
  if (!(R > 0.0) || !(length > 0.0)) throw ConfigError("pipe grid extents must be > 0");
}

double PipeGrid::r(int i) const { return (i + 0.5) * R / n_r; }
double PipeGrid::theta(int j) const { return 2.0 * std::numbers::pi * j / n_theta; }
double PipeGrid::z(int k) const { return (k + 0.5) * length / n_z; }

double disturbance_norm(const PipeGrid& grid, std::span<const double> axial_velocity,
                        const PipeProfile& profile) {
  grid.validate();
  profile.validate();
  if (axial_velocity.size() != grid.size()) {
    throw std::invalid_argument("disturbance_norm: sample count does not match grid");
  }

  const double dr = grid.R / grid.n_r;
  const double dtheta = 2.0 * std::numbers::pi / grid.n_theta;
  const double dz = grid.length / grid.n_z;

  double sum = 0.0;
  for (int i = 0; i < grid.n_r; ++i) {
    const double ri = grid.r(i);
    const double u_profile = poiseuille(profile, ri);
    const double weight = ri * dr * dtheta * dz;
    for (int j = 0; j < grid.n_theta; ++j) {
      for (int k = 0; k < grid.n_z; ++k) {
        const double u = axial_velocity[grid.idx(i, j, k)];
        if (!std::isfinite(u)) {
          throw std::invalid_argument("disturbance_norm: non-finite sample");
        }
        const double dev = u - u_profile;
        sum += dev * dev * weight;
      }
    }
  }
  return std::sqrt(sum);
}

}  // namespace cellflow
