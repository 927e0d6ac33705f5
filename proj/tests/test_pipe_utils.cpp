#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "cellflow/pipe_utils.hpp"

using namespace cellflow;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> constant_samples(const PipeGrid& grid, double value) {
  return std::vector<double>(grid.size(), value);
}

std::vector<double> profile_samples(const PipeGrid& grid, const PipeProfile& profile,
                                    double offset = 0.0) {
  std::vector<double> s(grid.size());
  for (int i = 0; i < grid.n_r; ++i) {
    const double u = poiseuille(profile, grid.r(i)) + offset;
    for (int j = 0; j < grid.n_theta; ++j) {
      for (int k = 0; k < grid.n_z; ++k) s[grid.idx(i, j, k)] = u;
    }
  }
  return s;
}

double zero_sample_norm(int n_r) {
  PipeGrid grid{n_r, 8, 4, 1.0, 1.0};
  PipeProfile profile{1.0, 1.0};
  return disturbance_norm(grid, constant_samples(grid, 0.0), profile);
}

}  // namespace

TEST_CASE("poiseuille endpoints and midpoint") {
  PipeProfile p{2.0, 3.0};
  CHECK(poiseuille(p, 0.0) == 3.0);
  CHECK(poiseuille(p, 2.0) == 0.0);
  CHECK(poiseuille(p, 1.0) == doctest::Approx(3.0 * 0.75).epsilon(1e-15));
  CHECK_THROWS_AS(poiseuille(p, -0.1), std::domain_error);
  CHECK_THROWS_AS(poiseuille(p, 2.1), std::domain_error);
}

TEST_CASE("profile samples give zero disturbance") {
  PipeGrid grid{64, 16, 8, 1.0, 2.0};
  PipeProfile profile{1.0, 1.5};
  CHECK(disturbance_norm(grid, profile_samples(grid, profile), profile) == 0.0);
}

TEST_CASE("all-zero samples reproduce the analytic integral") {
  // ||U0 (1 - r^2)||_2 over the unit pipe: integral (1-r^2)^2 2 pi r dr = pi/3.
  // Oracle: fine-grid quadrature converges to the same value.
  const double analytic = std::sqrt(kPi / 3.0);
  CHECK(zero_sample_norm(256) == doctest::Approx(analytic).epsilon(1e-3));
  CHECK(std::abs(zero_sample_norm(4096) - analytic) < std::abs(zero_sample_norm(256) - analytic) + 1e-12);
}

TEST_CASE("uniform offset scales with the pipe volume") {
  PipeGrid grid{128, 12, 6, 1.5, 2.0};
  PipeProfile profile{1.5, 1.0};
  const double c = 0.37;
  const double volume = kPi * grid.R * grid.R * grid.length;
  const double norm = disturbance_norm(grid, profile_samples(grid, profile, c), profile);
  CHECK(norm == doctest::Approx(c * std::sqrt(volume)).epsilon(1e-12));
}

TEST_CASE("norm is absolutely homogeneous") {
  PipeGrid grid{32, 8, 4, 1.0, 1.0};
  PipeProfile profile{1.0, 1.0};
  std::vector<double> dev(grid.size());
  for (std::size_t i = 0; i < dev.size(); ++i) dev[i] = std::sin(0.1 * static_cast<double>(i));

  auto shifted = [&](double scale) {
    std::vector<double> s = profile_samples(grid, profile);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += scale * dev[i];
    return disturbance_norm(grid, s, profile);
  };
  const double base = shifted(1.0);
  for (double c : {2.0, -3.5, 0.25}) {
    CHECK(shifted(c) == doctest::Approx(std::abs(c) * base).epsilon(1e-12));
  }
}

TEST_CASE("second-order radial refinement") {
  const double d1 = std::abs(zero_sample_norm(32) - zero_sample_norm(16));
  const double d2 = std::abs(zero_sample_norm(64) - zero_sample_norm(32));
  CHECK(4.0 * d2 <= d1 * 1.25);
}

TEST_CASE("input validation") {
  PipeGrid empty{0, 4, 4, 1.0, 1.0};
  PipeProfile profile{1.0, 1.0};
  CHECK_THROWS(disturbance_norm(empty, {}, profile));

  PipeGrid grid{4, 4, 4, 1.0, 1.0};
  std::vector<double> wrong(grid.size() - 1, 0.0);
  CHECK_THROWS_AS(disturbance_norm(grid, wrong, profile), std::invalid_argument);

  std::vector<double> bad(grid.size(), 0.0);
  bad[3] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(disturbance_norm(grid, bad, profile), std::invalid_argument);
}
