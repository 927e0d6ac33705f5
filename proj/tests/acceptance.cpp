// Acceptance suite: runs every top-level criterion at its stated tolerance and
// prints one PASS/FAIL line each. Exit code is the number of failures.
// Usage: acceptance <path-to-cellflow-cli>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cellflow/flow_field.hpp"
#include "cellflow/pipe_utils.hpp"
#include "cellflow/q_learning.hpp"
#include "cellflow/rl_env.hpp"
#include "cellflow/rng.hpp"
#include "cellflow/run_config.hpp"
#include "cellflow/spectral_solver.hpp"
#include "cellflow/swimmer.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace cellflow;
using namespace cellflow::testing;

namespace {

constexpr double kPi = std::numbers::pi;

std::string g_cli;
fs::path g_work;

struct Outcome {
  bool pass = true;
  std::string detail;
};

void check(Outcome& o, bool ok, const std::string& what) {
  if (!ok) {
    o.pass = false;
    o.detail += (o.detail.empty() ? "" : "; ") + what;
  }
}

int run_cli(const std::string& args) {
  const std::string cmd = "\"" + g_cli + "\" " + args + " > /dev/null";
  return std::system(cmd.c_str());
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

// ---------------------------------------------------------------------------

Outcome exact_solution_validation() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();

  TaylorGreenField field;
  field.nu = 0.01;
  field.decaying = true;
  SolverConfig cfg;
  cfg.N = 64;
  cfg.nu = 0.01;
  cfg.dt = 1e-2;
  SpectralSolver solver(cfg);
  SpectralState state = solver.init_from_field(field);
  const double energy0 = solver.energy(state);

  double max_error = 0.0;
  double energy_error = 0.0;
  for (int i = 0; i < 500; ++i) {
    solver.step(state);
    max_error = std::max(max_error, solver.compare_to_analytic(state, field).max_error);
    const double expected = std::exp(-4.0 * field.nu * state.t);
    energy_error = std::max(energy_error, std::abs(solver.energy(state) / energy0 - expected));
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  check(o, max_error <= 1e-7, "max pointwise error " + fmt(max_error));
  check(o, energy_error <= 1e-8, "energy ratio error " + fmt(energy_error));
  check(o, seconds <= 30.0, "runtime " + fmt(seconds) + "s");
  o.detail = o.pass ? "max_err=" + fmt(max_error) + " energy_err=" + fmt(energy_error) +
                          " in " + fmt(seconds) + "s"
                    : o.detail;
  return o;
}

Outcome energy_enstrophy_anchors() {
  Outcome o;
  SpectralSolver solver(SolverConfig{});
  const SpectralState state = solver.init_from_field(TaylorGreenField{});
  const double energy = solver.energy(state);
  const double enstrophy = solver.enstrophy(state);
  check(o, std::abs(energy / (4.0 * kPi * kPi) - 1.0) <= 1e-9,
        "energy " + fmt(energy) + " vs 4*pi^2");
  check(o, std::abs(enstrophy / (8.0 * kPi * kPi) - 1.0) <= 1e-9,
        "enstrophy " + fmt(enstrophy) + " vs 8*pi^2");
  return o;
}

double tracer_drift(double dt) {
  TaylorGreenField field;
  field.nu = 0.0;
  SwimmerState s{1.0, 0.5, 0.0};
  const double psi0 = field.streamfunction(s.x, s.y, 0.0);
  const auto n = static_cast<long long>(std::llround(10.0 / dt));
  double drift = 0.0;
  for (long long i = 0; i < n; ++i) {
    s = advect_tracer(s, field, static_cast<double>(i) * dt, dt);
    drift = std::max(drift, std::abs(field.streamfunction(s.x, s.y, 0.0) - psi0));
  }
  return drift;
}

Outcome tracer_streamline_conservation() {
  Outcome o;
  const double coarse = tracer_drift(1e-2);
  const double half = tracer_drift(5e-3);
  check(o, coarse <= 1e-6, "psi drift " + fmt(coarse));
  check(o, coarse >= 8.0 * half,
        "order check: drift(dt)=" + fmt(coarse) + " vs 8*drift(dt/2)=" + fmt(8.0 * half));
  return o;
}

Outcome q_learning_oracle_equivalence() {
  Outcome o;
  Hyperparams h;
  h.episodes = 500;
  h.eps_decay_episodes = 350;

  {
    DeterministicMdp chain = two_state_chain(100);
    const TrainResult result = train(chain, h, 9001);
    const auto q_star = value_iteration(chain, h.gamma);
    for (int s = 0; s < chain.n_states(); ++s) {
      check(o, result.table.greedy_action(s) == argmax_action(q_star[s]),
            "two-state chain policy mismatch at state " + std::to_string(s));
    }
  }
  {
    DeterministicMdp mdp = corridor(60);
    const TrainResult result = train(mdp, h, 77);
    const auto q_star = value_iteration(mdp, h.gamma);
    for (int s = 0; s < mdp.n_states(); ++s) {
      check(o, result.table.greedy_action(s) == argmax_action(q_star[s]),
            "corridor policy mismatch at state " + std::to_string(s));
    }
  }
  {
    // Bellman fixed point on the recurring transition s1 -a0-> s1, r=1
    QTable q(2, 2);
    for (int i = 0; i < 2000; ++i) update(q, 1, 0, {1, 1.0, false}, h);
    check(o, std::abs(q.at(1, 0) - 10.0) <= 1e-3,
          "Q(s1,a0)=" + fmt(q.at(1, 0)) + " vs 10");
  }
  return o;
}

Outcome schedule_reproduction() {
  Outcome o;
  Hyperparams h;
  check(o, epsilon(h, 0) == 1.0, "epsilon(0)");
  check(o, epsilon(h, 700) == 0.01, "epsilon(700)");
  check(o, epsilon(h, 900) == 0.01, "epsilon(900)");

  const fs::path cfg_path = g_work / "table_a1.cfg";
  write_file(cfg_path,
             "train.alpha = 0.1\ntrain.gamma = 0.9\ntrain.episodes = 1000\n"
             "train.eps_initial = 1\ntrain.eps_final = 0.01\ntrain.eps_decay_episodes = 700\n");
  const RunConfig cfg = RunConfig::from_file(cfg_path.string());
  check(o, cfg.train.alpha == 0.1, "alpha from config");
  check(o, cfg.train.gamma == 0.9, "gamma from config");
  check(o, cfg.train.episodes == 1000, "episodes from config");
  check(o, cfg.train.eps_initial == 1.0, "eps_initial from config");
  check(o, cfg.train.eps_final == 0.01, "eps_final from config");
  check(o, cfg.train.eps_decay_episodes == 700, "eps_decay_episodes from config");
  return o;
}

double mean_dy_from_metrics(const fs::path& path) {
  const json j = json::parse(slurp(path));
  return j.at("mean_dy").get<double>();
}

Outcome fig3_qualitative() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();

  const auto regime = [&](const std::string& name, double v_s) {
    const fs::path dir = g_work / name;
    write_file(g_work / (name + ".cfg"), "swimmer.v_s = " + std::to_string(v_s) +
                                             "\nflow.decaying = false\nseed = 42\noutput_dir = " +
                                             (dir / "train").string() + "\n");
    const std::string cfg = (g_work / (name + ".cfg")).string();
    check(o, run_cli("train --config \"" + cfg + "\"") == 0, name + ": train failed");
    check(o,
          run_cli("evaluate --config \"" + cfg + "\" --qtable \"" +
                  (dir / "train" / "qtable.txt").string() + "\" --out \"" +
                  (dir / "trained").string() + "\"") == 0,
          name + ": evaluate failed");
    check(o,
          run_cli("evaluate --config \"" + cfg + "\" --naive --out \"" + (dir / "naive").string() +
                  "\"") == 0,
          name + ": naive evaluate failed");
    const double trained = mean_dy_from_metrics(dir / "trained" / "metrics.json");
    const double naive = mean_dy_from_metrics(dir / "naive" / "metrics.json");
    return std::pair{trained, naive};
  };

  const auto [weak_trained, weak_naive] = regime("weak", 0.3);
  check(o, weak_trained >= 2.0 * weak_naive,
        "weak regime: trained " + fmt(weak_trained) + " < 2 x naive " + fmt(weak_naive));

  const auto [comp_trained, comp_naive] = regime("comparable", 1.0);
  check(o, comp_trained >= comp_naive,
        "comparable regime: trained " + fmt(comp_trained) + " < naive " + fmt(comp_naive));

  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  check(o, seconds <= 300.0, "pipeline took " + fmt(seconds) + "s");
  if (o.pass) {
    o.detail = "weak " + fmt(weak_trained) + " vs naive " + fmt(weak_naive) +
               "; comparable " + fmt(comp_trained) + " vs naive " + fmt(comp_naive) + "; " +
               fmt(seconds) + "s";
  }
  return o;
}

Outcome nonstationary_sanity() {
  Outcome o;
  TaylorGreenField field;
  field.nu = 0.05;
  field.decaying = true;
  SwimmerParams p;
  p.v_s = 1.0;
  const double t_end = 100.0;
  check(o, 2.0 * field.nu * field.k * field.k * t_end >= 9.0, "decay budget");

  SwimmerState s{0.9, 0.4, 1.0};
  double t = 0.0;
  double y_three_quarters = 0.0;
  const int n_steps = static_cast<int>(std::llround(t_end / p.dt_phys));
  for (int i = 0; i < n_steps; ++i) {
    if (i == (3 * n_steps) / 4) y_three_quarters = s.y;
    s = step_swimmer(s, p, field, kPi / 2, t);
    t = (i + 1) * p.dt_phys;
  }
  const double mean_speed = (s.y - y_three_quarters) / (t_end / 4.0);
  const double rel = std::abs(mean_speed - p.v_s) / p.v_s;
  check(o, rel <= 1e-3, "final-quarter mean vertical speed off by " + fmt(rel));
  o.detail = o.pass ? "mean speed " + fmt(mean_speed) : o.detail;
  return o;
}

Outcome cli_determinism() {
  Outcome o;
  const fs::path cfg_path = g_work / "det.cfg";
  write_file(cfg_path,
             "swimmer.v_s = 0.3\ntrain.episodes = 120\ntrain.eps_decay_episodes = 80\n"
             "eval.n_swimmers = 40\neval.duration = 20\nsim.snapshots = 0.5,1\nsim.t_end = 1\n"
             "validate.t_end = 1\nseed = 7\n");
  const std::string cfg = "\"" + cfg_path.string() + "\"";

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"train", "train --config " + cfg},
      {"evaluate", "evaluate --naive --config " + cfg},
      {"validate-solver", "validate-solver --config " + cfg},
      {"simulate", "simulate --config " + cfg},
  };
  for (const auto& [name, args] : commands) {
    const fs::path a = g_work / ("det_a_" + name);
    const fs::path b = g_work / ("det_b_" + name);
    check(o, run_cli(args + " --out \"" + a.string() + "\"") == 0, name + " run 1 failed");
    check(o, run_cli(args + " --out \"" + b.string() + "\"") == 0, name + " run 2 failed");
    for (const auto& entry : fs::directory_iterator(a)) {
      const fs::path other = b / entry.path().filename();
      check(o, fs::exists(other) && slurp(entry.path()) == slurp(other),
            name + ": " + entry.path().filename().string() + " differs between re-runs");
    }
  }
  return o;
}

Outcome pipe_utilities() {
  Outcome o;
  PipeProfile profile{1.0, 1.0};
  check(o, poiseuille(profile, 0.0) == 1.0, "centerline");
  check(o, poiseuille(profile, 1.0) == 0.0, "wall");

  PipeGrid grid{256, 8, 4, 1.0, 1.0};
  const std::vector<double> zeros(grid.size(), 0.0);
  const double norm = disturbance_norm(grid, zeros, profile);
  const double analytic = std::sqrt(kPi / 3.0);
  check(o, std::abs(norm - analytic) <= 1e-3,
        "norm " + fmt(norm) + " vs sqrt(pi/3)=" + fmt(analytic));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <path-to-cellflow-cli>\n");
    return 64;
  }
  g_cli = argv[1];
  g_work = fs::current_path() / "acceptance_out";
  fs::remove_all(g_work);
  fs::create_directories(g_work);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"exact-solution validation (decaying-vortex run, max<=1e-7, energy<=1e-8, <=30s)", exact_solution_validation},
      {"enstrophy/energy anchors (8*pi^2, 4*pi^2 within 1e-9)", energy_enstrophy_anchors},
      {"tracer streamline conservation (<=1e-6 over t=10, >=8x order gain)", tracer_streamline_conservation},
      {"q-learning oracle equivalence (value iteration; Q=10 within 1e-3)", q_learning_oracle_equivalence},
      {"schedule reproduction (eps anchors exact, config verbatim)", schedule_reproduction},
      {"fig-3 qualitative (weak >=2x naive; comparable >= naive; <=5min)", fig3_qualitative},
      {"nonstationary sanity (decayed flow, up-swimmer speed = v_s within 1e-3)", nonstationary_sanity},
      {"determinism (byte-identical CLI re-runs)", cli_determinism},
      {"pipe utilities (sqrt(pi/3) within 1e-3; endpoints exact)", pipe_utilities},
  };

  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] %s%s%s\n", o.pass ? "PASS" : "FAIL", name.c_str(),
                o.detail.empty() ? "" : " -- ", o.detail.c_str());
    if (!o.pass) ++failures;
  }
  return failures;
}
