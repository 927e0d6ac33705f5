#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cellflow/discrete_env.hpp"

namespace cellflow {

struct Hyperparams {
  double alpha = 0.1;           // learning rate
  double gamma = 0.9;           // discount
  int episodes = 1000;
  double eps_initial = 1.0;
  double eps_final = 0.01;
  int eps_decay_episodes = 700;

  void validate() const;
};

/** Exploration probability: linear from eps_initial at episode 0 to eps_final
 *  at eps_decay_episodes, constant afterwards. */
double epsilon(const Hyperparams& h, int episode);

/**
 * Tabular action-value function with visit counts. Zero-initialized, so with
 * per-step rewards bounded by r_max every entry stays within r_max/(1-gamma);
 * update() enforces that bound.
 */
class QTable {
 public:
  QTable(int n_states, int n_actions);

  int n_states() const { return ns_; }
  int n_actions() const { return na_; }

  double at(int s, int a) const { return q_[static_cast<std::size_t>(s) * na_ + a]; }
  double& at(int s, int a) { return q_[static_cast<std::size_t>(s) * na_ + a]; }
  std::int64_t visits(int s, int a) const { return visits_[static_cast<std::size_t>(s) * na_ + a]; }
  void record_visit(int s, int a) { visits_[static_cast<std::size_t>(s) * na_ + a] += 1; }

  /** Greedy action with lowest-index tie-break. */
  int greedy_action(int s) const;
  double max_value(int s) const;

  double reward_bound() const { return r_max_; }
  void note_reward(double r);

 private:
  int ns_;
  int na_;
  std::vector<double> q_;
  std::vector<std::int64_t> visits_;
  double r_max_ = 0.0;
};

/** One-step Q-learning update:
 *  Q(s,a) += alpha * (r + gamma * max_a' Q(s',a') - Q(s,a)),
 *  with the bootstrap term dropped on terminal transitions. */
void update(QTable& q, int state, int action, const EnvStep& transition, const Hyperparams& h);

struct TrainResult {
  QTable table;
  std::vector<double> returns;  // per-episode cumulative reward
};

/**
 * Epsilon-greedy training: uniform random action with probability epsilon,
 * else greedy with lowest-index tie-break. Episode e resets the environment
 * with derive_seed(seed, e). Deterministic given (env, h, seed).
 */
TrainResult train(DiscreteEnv& env, const Hyperparams& h, std::uint64_t seed);

using Policy = std::function<int(int)>;

/** Frozen greedy policy over a copy of the table. */
Policy greedy_policy(const QTable& q);

/** Always commands action 1 (up). */
Policy naive_policy();

}  // namespace cellflow
