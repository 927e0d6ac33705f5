#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cellflow/flow_field.hpp"
#include "cellflow/q_learning.hpp"
#include "cellflow/rl_env.hpp"
#include "cellflow/spectral_solver.hpp"
#include "cellflow/swimmer.hpp"

namespace cellflow {

/**
 * Every tunable of the pipeline, addressable by dotted keys in a flat
 * `key = value` text file (`#` starts a comment). Unknown keys are rejected;
 * validate() enforces all module invariants before any run starts.
 */
struct RunConfig {
  TaylorGreenField flow;
  int solver_N = 64;
  double solver_dt = 1e-2;
  bool solver_dealias = true;
  bool solver_cfl_strict = true;
  SwimmerParams swimmer;
  double env_action_interval = 0.1;
  int env_episode_steps = 1000;
  InitRegion env_init;
  Hyperparams train;
  int eval_n_swimmers = 250;
  double eval_duration = 100.0;
  double validate_t_end = 5.0;
  double sim_t_end = 5.0;
  std::vector<double> sim_snapshots = {1.0, 2.5, 5.0};
  std::uint64_t seed = 0;
  std::string output_dir = "out";

  /** Apply one `key = value` entry. Throws ConfigError on unknown keys or bad values. */
  void set(const std::string& key, const std::string& value);

  void load(std::istream& in);
  static RunConfig from_file(const std::string& path);

  void validate() const;

  /** Effective configuration, re-loadable by load(). */
  void dump(std::ostream& out) const;

  SolverConfig solver_config() const;
  EnvConfig env_config() const;
  int eval_decisions() const;
};

}  // namespace cellflow
