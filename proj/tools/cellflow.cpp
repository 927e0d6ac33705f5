#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cellflow/errors.hpp"
#include "cellflow/flow_field.hpp"
#include "cellflow/q_learning.hpp"
#include "cellflow/render.hpp"
#include "cellflow/rl_env.hpp"
#include "cellflow/rng.hpp"
#include "cellflow/run_config.hpp"
#include "cellflow/spectral_solver.hpp"
#include "cellflow/table_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace cellflow;

namespace {

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open '" + path.string() + "' for writing");
  return out;
}

fs::path prepare_output(const RunConfig& cfg, const std::string& out_override) {
  const fs::path dir = out_override.empty() ? fs::path(cfg.output_dir) : fs::path(out_override);
  fs::create_directories(dir);
  auto eff = open_out(dir / "effective_config.txt");
  cfg.dump(eff);
  return dir;
}

int cmd_validate_solver(const RunConfig& cfg, const fs::path& dir) {
  TaylorGreenField field = cfg.flow;
  field.decaying = field.nu > 0.0;  // the stationary pattern is exact only for nu = 0

  SpectralSolver solver(cfg.solver_config());
  SpectralState state = solver.init_from_field(field);
  const double energy0 = solver.energy(state);
  const int n_steps = static_cast<int>(std::llround(cfg.validate_t_end / solver.config().dt));

  double max_error = 0.0;
  double l2_error = 0.0;
  double energy_ratio_error = 0.0;
  const auto measure = [&] {
    const ErrorReport report = solver.compare_to_analytic(state, field);
    max_error = std::max(max_error, report.max_error);
    l2_error = std::max(l2_error, report.l2_error);
    if (energy0 > 0.0) {
      const double expected = std::exp(-4.0 * field.nu * field.k * field.k * state.t);
      energy_ratio_error =
          std::max(energy_ratio_error, std::abs(solver.energy(state) / energy0 - expected));
    }
  };

  measure();
  for (int i = 0; i < n_steps; ++i) {
    solver.step(state);
    measure();
  }

  json report;
  report["max_error"] = max_error;
  report["l2_error"] = l2_error;
  report["energy_ratio_error"] = energy_ratio_error;
  open_out(dir / "validation_report.json") << report.dump(2) << "\n";

  const bool ok = max_error <= 1e-7 && l2_error <= 1e-7 && energy_ratio_error <= 1e-8;
  std::cout << (ok ? "validate-solver: PASS" : "validate-solver: FAIL") << " max_error=" << max_error
            << " l2_error=" << l2_error << " energy_ratio_error=" << energy_ratio_error << "\n";
  return ok ? 0 : 2;
}

int cmd_train(const RunConfig& cfg, const fs::path& dir) {
  CellFlowEnv env(cfg.env_config());
  CellFlowDiscreteEnv discrete(env);
  const TrainResult result = train(discrete, cfg.train, cfg.seed);

  auto qfile = open_out(dir / "qtable.txt");
  save_qtable(qfile, result.table);

  auto curve = open_out(dir / "learning_curve.csv");
  curve << "episode,return,epsilon\n";
  for (std::size_t e = 0; e < result.returns.size(); ++e) {
    curve << e << "," << format_double(result.returns[e]) << ","
          << format_double(epsilon(cfg.train, static_cast<int>(e))) << "\n";
  }
  std::cout << "train: " << result.returns.size() << " episodes, qtable written to "
            << (dir / "qtable.txt").string() << "\n";
  return 0;
}

int cmd_evaluate(const RunConfig& cfg, const fs::path& dir, const std::string& qtable_path,
                 bool naive, bool render) {
  Policy policy;
  if (naive) {
    policy = naive_policy();
  } else {
    std::ifstream in(qtable_path);
    if (!in) throw ConfigError("cannot open qtable file '" + qtable_path + "'");
    policy = greedy_policy(load_qtable(in));
  }

  EnvConfig env_cfg = cfg.env_config();
  env_cfg.episode_steps = cfg.eval_decisions();
  CellFlowEnv env(env_cfg);

  auto traj = open_out(dir / "trajectories.csv");
  traj << "swimmer_id,step,t,x,y,theta,omega_local,action,reward\n";

  std::vector<double> delta_y;
  std::vector<std::vector<Vec2>> paths;
  delta_y.reserve(cfg.eval_n_swimmers);

  for (int sw = 0; sw < cfg.eval_n_swimmers; ++sw) {
    Observation obs = env.reset(derive_seed(cfg.seed, static_cast<std::uint64_t>(sw)));
    double dy = 0.0;
    std::vector<Vec2> path{{env.swimmer().x, env.swimmer().y}};
    for (int step = 0; step < env_cfg.episode_steps; ++step) {
      const SwimmerState before = env.swimmer();
      const double t_rec = step * cfg.env_action_interval;
      const double omega_local = cfg.flow.vorticity(before.x, before.y, t_rec);
      const int action = policy(obs.index());
      const Transition tr = env.step(action);
      traj << sw << "," << step << "," << format_double(t_rec) << "," << format_double(before.x)
           << "," << format_double(before.y) << "," << format_double(before.theta) << ","
           << format_double(omega_local) << "," << action << "," << format_double(tr.reward)
           << "\n";
      dy += tr.reward;
      obs = tr.next_observation;
      path.push_back({env.swimmer().x, env.swimmer().y});
    }
    delta_y.push_back(dy);
    paths.push_back(std::move(path));
  }

  std::vector<double> sorted = delta_y;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const double median =
      (n % 2 == 1) ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  double mean = 0.0;
  std::size_t positive = 0;
  for (double d : delta_y) {
    mean += d;
    if (d > 0.0) ++positive;
  }
  mean /= static_cast<double>(n);

  json metrics;
  metrics["mean_dy"] = mean;
  metrics["median_dy"] = median;
  metrics["fraction_dy_positive"] = static_cast<double>(positive) / static_cast<double>(n);
  open_out(dir / "metrics.json") << metrics.dump(2) << "\n";

  if (render) {
    write_png((dir / "trajectories.png").string(), render_trajectories(cfg.flow, paths));
  }
  std::cout << "evaluate: " << n << " swimmers, mean_dy=" << mean << " median_dy=" << median
            << "\n";
  return 0;
}

int cmd_simulate(const RunConfig& cfg, const fs::path& dir) {
  SpectralSolver solver(cfg.solver_config());
  SpectralState state = solver.init_from_field(cfg.flow);

  const double dt = solver.config().dt;
  const std::int64_t total_steps = std::llround(cfg.sim_t_end / dt);
  std::vector<std::int64_t> targets;
  for (double t : cfg.sim_snapshots) {
    targets.push_back(std::min<std::int64_t>(std::llround(t / dt), total_steps));
  }

  const auto emit_due = [&] {
    for (std::size_t k = 0; k < targets.size(); ++k) {
      if (targets[k] == state.steps) {
        auto out = open_out(dir / ("snapshot_" + std::to_string(k) + ".csv"));
        write_snapshot_csv(out, solver, state);
      }
    }
  };

  emit_due();
  for (std::int64_t i = 0; i < total_steps; ++i) {
    solver.step(state);
    emit_due();
  }
  std::cout << "simulate: " << total_steps << " steps to t=" << state.t << ", "
            << targets.size() << " snapshots\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cellflow: RL swimmers in cellular flows with a spectral solver backend"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_override;
  std::string qtable_path;
  bool naive = false;
  bool render = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "run configuration file")->required();
    cmd->add_option("--out", out_override, "output directory (overrides output_dir)");
  };

  CLI::App* validate = app.add_subcommand("validate-solver", "check the solver against the closed-form flow");
  add_common(validate);
  CLI::App* train_cmd = app.add_subcommand("train", "tabular Q-learning on the configured flow");
  add_common(train_cmd);
  CLI::App* evaluate = app.add_subcommand("evaluate", "roll out a frozen policy over an ensemble");
  add_common(evaluate);
  evaluate->add_option("--qtable", qtable_path, "trained table (qtable v1 file)");
  evaluate->add_flag("--naive", naive, "always command the upward direction");
  evaluate->add_flag("--render", render, "write a trajectory plot PNG");
  CLI::App* simulate = app.add_subcommand("simulate", "run the solver and write vorticity snapshots");
  add_common(simulate);

  CLI11_PARSE(app, argc, argv);

  try {
    const RunConfig cfg = RunConfig::from_file(config_path);
    cfg.validate();
    const fs::path dir = prepare_output(cfg, out_override);
    if (validate->parsed()) return cmd_validate_solver(cfg, dir);
    if (train_cmd->parsed()) return cmd_train(cfg, dir);
    if (evaluate->parsed()) {
      if (naive == !qtable_path.empty()) {
        throw ConfigError("evaluate needs exactly one of --qtable <file> or --naive");
      }
      return cmd_evaluate(cfg, dir, qtable_path, naive, render);
    }
    if (simulate->parsed()) return cmd_simulate(cfg, dir);
    return 1;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected failure: " << e.what() << "\n";
    return 2;
  }
}
