#include "cellflow/rl_env.hpp"

#include <cmath>

#include "cellflow/errors.hpp"
#include "cellflow/rng.hpp"

namespace cellflow {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

void EnvConfig::validate() const {
  swimmer.validate();
  if (!(field.k > 0.0)) throw ConfigError("flow.k must be > 0");
  if (episode_steps < 1) throw ConfigError("env.episode_steps must be >= 1");
  if (!(action_interval > 0.0)) throw ConfigError("env.action_interval must be > 0");
  const double ratio = action_interval / swimmer.dt_phys;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, std::abs(ratio))) {
    throw ConfigError("env.action_interval must be an integer multiple of swimmer.dt_phys");
  }
  if (!(init_region.side >= 0.0) || init_region.side > field.period()) {
    throw ConfigError("env.init_region must fit inside one periodic cell");
  }
  if (init_theta && !std::isfinite(*init_theta)) {
    throw ConfigError("env.init_theta must be finite");
  }
}

int EnvConfig::substeps() const {
  return static_cast<int>(std::llround(action_interval / swimmer.dt_phys));
}

double action_angle(int action) {
  if (action < 0 || action >= kNumActions) throw ProtocolError("action index out of range");
  return 0.5 * kPi * action;
}

Observation encode_observation(const SwimmerState& s, const TaylorGreenField& field, double t) {
  const double omega = field.vorticity(s.x, s.y, t);
  const double threshold = (2.0 / 3.0) * field.U0 * field.k * field.decay(t);

  Observation obs;
  if (omega < -threshold) {
    obs.vort_bin = -1;
  } else if (omega > threshold) {
    obs.vort_bin = +1;
  } else {
    obs.vort_bin = 0;
  }

  // quadrants centered on the cardinals; boundaries go counterclockwise
  const double shifted = wrap_angle(s.theta + 0.25 * kPi);
  obs.head_bin = static_cast<int>(shifted / (0.5 * kPi)) % kNumHeadBins;
  return obs;
}

CellFlowEnv::CellFlowEnv(EnvConfig config) : cfg_(config) { cfg_.validate(); }

Observation CellFlowEnv::reset(std::uint64_t episode_seed) {
  Rng rng(episode_seed);
  const double half = 0.5 * cfg_.init_region.side;
  swimmer_.x = rng.uniform(cfg_.init_region.cx - half, cfg_.init_region.cx + half);
  swimmer_.y = rng.uniform(cfg_.init_region.cy - half, cfg_.init_region.cy + half);
  swimmer_.theta = cfg_.init_theta ? wrap_angle(*cfg_.init_theta) : rng.uniform(0.0, kTwoPi);
  t_ = 0.0;
  substeps_done_ = 0;
  decision_ = 0;
  episode_open_ = true;
  return encode_observation(swimmer_, cfg_.field, t_);
}

Transition CellFlowEnv::step(int action) {
  if (!episode_open_) throw ProtocolError("step() before reset()");
  if (done()) throw ProtocolError("step() on a finished episode");

  Transition tr;
  tr.observation = encode_observation(swimmer_, cfg_.field, t_);
  tr.action = action;
  const double preferred = action_angle(action);
  const double y_before = swimmer_.y;

  const int n = cfg_.substeps();
  for (int i = 0; i < n; ++i) {
    swimmer_ = step_swimmer(swimmer_, cfg_.swimmer, cfg_.field, preferred, t_);
    substeps_done_ += 1;
    t_ = static_cast<double>(substeps_done_) * cfg_.swimmer.dt_phys;  // no accumulation drift
  }

  decision_ += 1;
  tr.reward = swimmer_.y - y_before;
  tr.next_observation = encode_observation(swimmer_, cfg_.field, t_);
  tr.done = done();
  return tr;
}

}  // namespace cellflow
