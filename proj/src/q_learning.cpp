#include "cellflow/q_learning.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cellflow/errors.hpp"
#include "cellflow/rng.hpp"

namespace cellflow {

void Hyperparams::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("train.alpha must be in (0, 1]");
  if (!(gamma >= 0.0 && gamma < 1.0)) throw ConfigError("train.gamma must be in [0, 1)");
  if (episodes < 0) throw ConfigError("train.episodes must be >= 0");
  if (!(eps_initial >= 0.0 && eps_initial <= 1.0)) throw ConfigError("train.eps_initial must be in [0, 1]");
  if (!(eps_final >= 0.0 && eps_final <= 1.0)) throw ConfigError("train.eps_final must be in [0, 1]");
  if (eps_decay_episodes < 0 || eps_decay_episodes > episodes) {
    throw ConfigError("train.eps_decay_episodes must be in [0, episodes]");
  }
}

double epsilon(const Hyperparams& h, int episode) {
  if (episode >= h.eps_decay_episodes) return h.eps_final;
  return h.eps_initial +
         (h.eps_final - h.eps_initial) * static_cast<double>(episode) / h.eps_decay_episodes;
}

QTable::QTable(int n_states, int n_actions) : ns_(n_states), na_(n_actions) {
  if (ns_ < 1 || na_ < 1) throw ConfigError("QTable dimensions must be positive");
  q_.assign(static_cast<std::size_t>(ns_) * na_, 0.0);
  visits_.assign(static_cast<std::size_t>(ns_) * na_, 0);
}

int QTable::greedy_action(int s) const {
  int best = 0;
  double best_value = at(s, 0);
  for (int a = 1; a < na_; ++a) {
    if (at(s, a) > best_value) {
      best_value = at(s, a);
      best = a;
    }
  }
  return best;
}

double QTable::max_value(int s) const { return at(s, greedy_action(s)); }

void QTable::note_reward(double r) { r_max_ = std::max(r_max_, std::abs(r)); }

void update(QTable& q, int state, int action, const EnvStep& t, const Hyperparams& h) {
  q.note_reward(t.reward);
  const double bootstrap = t.done ? 0.0 : h.gamma * q.max_value(t.next_state);
  double& entry = q.at(state, action);
  entry += h.alpha * (t.reward + bootstrap - entry);
  q.record_visit(state, action);
  if (!std::isfinite(entry)) throw NumericalError("Q update produced a non-finite value");
  // zero init + bounded rewards pin every entry inside r_max/(1-gamma)
  const double bound = q.reward_bound() / (1.0 - h.gamma) + 1e-9;
  if (std::abs(entry) > bound) {
    throw NumericalError("Q value " + std::to_string(entry) + " escaped the bound " +
                         std::to_string(bound));
  }
}

TrainResult train(DiscreteEnv& env, const Hyperparams& h, std::uint64_t seed) {
  h.validate();
  TrainResult result{QTable(env.n_states(), env.n_actions()), {}};
  result.returns.reserve(h.episodes);
  Rng rng(seed);

  for (int e = 0; e < h.episodes; ++e) {
    int s = env.reset(derive_seed(seed, static_cast<std::uint64_t>(e)));
    const double eps = epsilon(h, e);
    double ep_return = 0.0;
    bool done = false;
    while (!done) {
      const int a =
          (rng.uniform() < eps) ? rng.next_int(env.n_actions()) : result.table.greedy_action(s);
      const EnvStep t = env.step(a);
      update(result.table, s, a, t, h);
      ep_return += t.reward;
      s = t.next_state;
      done = t.done;
    }
    result.returns.push_back(ep_return);
  }
  return result;
}

Policy greedy_policy(const QTable& q) {
  return [table = q](int s) { return table.greedy_action(s); };
}

Policy naive_policy() {
  return [](int) { return 1; };
}

}  // namespace cellflow
