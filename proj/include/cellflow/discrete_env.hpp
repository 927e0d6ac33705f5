#pragma once

#include <cstdint>

namespace cellflow {

struct EnvStep {
  int next_state = 0;
  double reward = 0.0;
  bool done = false;
};

/** Episodic environment with discrete states and actions. */
class DiscreteEnv {
 public:
  virtual ~DiscreteEnv() = default;
  virtual int n_states() const = 0;
  virtual int n_actions() const = 0;
  /** Start a new episode; returns the initial state index. */
  virtual int reset(std::uint64_t episode_seed) = 0;
  virtual EnvStep step(int action) = 0;
};

}  // namespace cellflow
