#pragma once

#include <cstdint>
#include <numbers>
#include <optional>

#include "cellflow/discrete_env.hpp"
#include "cellflow/flow_field.hpp"
#include "cellflow/swimmer.hpp"

namespace cellflow {

inline constexpr int kNumVortBins = 3;
inline constexpr int kNumHeadBins = 4;
inline constexpr int kNumObservations = kNumVortBins * kNumHeadBins;  // 12
inline constexpr int kNumActions = 4;  // preferred directions {right, up, left, down}

/** Discretized (vorticity, heading) observation. */
struct Observation {
  int vort_bin = 0;  // -1, 0, +1
  int head_bin = 0;  // 0 = right, 1 = up, 2 = left, 3 = down

  /** Bijection onto {0..11}. */
  int index() const { return (vort_bin + 1) * kNumHeadBins + head_bin; }
};

/** Axis-aligned square of admissible initial positions. */
struct InitRegion {
  double cx = 0.5 * std::numbers::pi;
  double cy = 0.5 * std::numbers::pi;
  double side = 0.5 * std::numbers::pi;
};

struct EnvConfig {
  TaylorGreenField field;  // any descriptor, including zero-amplitude (quiescent)
  SwimmerParams swimmer;
  double action_interval = 0.1;  // time between decisions; integer multiple of dt_phys
  int episode_steps = 1000;      // decisions per episode
  InitRegion init_region;
  std::optional<double> init_theta;  // fixed initial orientation; random when unset
  std::uint64_t seed = 0;            // default episode seed for reset()

  void validate() const;
  int substeps() const;  // action_interval / dt_phys
};

struct Transition {
  Observation observation;
  int action = 0;
  double reward = 0.0;  // unwrapped delta-y
  Observation next_observation;
  bool done = false;
};

/**
 * Discretize the swimmer's local flow state:
 * vort_bin thresholds at +-(1/3) of the attainable |omega| range 2 U0 k D(t)
 * (rescaled with the decay so the bins stay informative in a decaying flow);
 * head_bin quadrants centered on the cardinal directions, boundary angles
 * (45, 135, 225, 315 degrees) assigned counterclockwise.
 */
Observation encode_observation(const SwimmerState& s, const TaylorGreenField& field, double t);

/** Preferred heading angle for an action index: {0, pi/2, pi, 3pi/2}. */
double action_angle(int action);

/**
 * Episodic environment around one steered swimmer in the cellular flow.
 * Rewards telescope: the episode return equals the net unwrapped delta-y.
 */
class CellFlowEnv {
 public:
  explicit CellFlowEnv(EnvConfig config);

  /** Start an episode: position uniform in the init region, orientation
   *  uniform in [0, 2 pi), both drawn from the seeded generator; t = 0. */
  Observation reset(std::uint64_t episode_seed);
  Observation reset() { return reset(cfg_.seed); }

  /** Advance one decision interval. Throws ProtocolError once the episode is done. */
  Transition step(int action);

  const EnvConfig& config() const { return cfg_; }
  const SwimmerState& swimmer() const { return swimmer_; }
  double time() const { return t_; }
  int decisions() const { return decision_; }
  bool done() const { return decision_ >= cfg_.episode_steps; }

 private:
  EnvConfig cfg_;
  SwimmerState swimmer_;
  double t_ = 0.0;
  std::int64_t substeps_done_ = 0;
  int decision_ = 0;
  bool episode_open_ = false;
};

/** DiscreteEnv view over a CellFlowEnv, for the tabular trainer. */
class CellFlowDiscreteEnv final : public DiscreteEnv {
 public:
  explicit CellFlowDiscreteEnv(CellFlowEnv& env) : env_(&env) {}
  int n_states() const override { return kNumObservations; }
  int n_actions() const override { return kNumActions; }
  int reset(std::uint64_t episode_seed) override { return env_->reset(episode_seed).index(); }
  EnvStep step(int action) override {
    const Transition t = env_->step(action);
    return {t.next_observation.index(), t.reward, t.done};
  }

 private:
  CellFlowEnv* env_;
};

}  // namespace cellflow
