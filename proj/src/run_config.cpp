#include "cellflow/run_config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "cellflow/errors.hpp"
#include "cellflow/table_io.hpp"

namespace cellflow {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const double d = std::strtod(value.c_str(), &end);
  if (value.empty() || end != value.c_str() + value.size() || !std::isfinite(d)) {
    throw ConfigError("config key '" + key + "': expected a finite number, got '" + value + "'");
  }
  return d;
}

long long parse_int(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const long long i = std::strtoll(value.c_str(), &end, 10);
  if (value.empty() || end != value.c_str() + value.size()) {
    throw ConfigError("config key '" + key + "': expected an integer, got '" + value + "'");
  }
  return i;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const unsigned long long u = std::strtoull(value.c_str(), &end, 10);
  if (value.empty() || end != value.c_str() + value.size()) {
    throw ConfigError("config key '" + key + "': expected an unsigned integer, got '" + value + "'");
  }
  return u;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw ConfigError("config key '" + key + "': expected true or false, got '" + value + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(parse_double(key, item));
  }
  return out;
}

std::string join_list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ",";
    out += format_double(values[i]);
  }
  return out;
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
  if (key == "flow.U0") flow.U0 = parse_double(key, value);
  else if (key == "flow.nu") flow.nu = parse_double(key, value);
  else if (key == "flow.k") flow.k = parse_double(key, value);
  else if (key == "flow.decaying") flow.decaying = parse_bool(key, value);
  else if (key == "flow.L") flow.L = parse_double(key, value);
  else if (key == "solver.N") solver_N = static_cast<int>(parse_int(key, value));
  else if (key == "solver.dt") solver_dt = parse_double(key, value);
  else if (key == "solver.dealias") solver_dealias = parse_bool(key, value);
  else if (key == "solver.cfl_strict") solver_cfl_strict = parse_bool(key, value);
  else if (key == "swimmer.v_s") swimmer.v_s = parse_double(key, value);
  else if (key == "swimmer.B") swimmer.B = parse_double(key, value);
  else if (key == "swimmer.dt_phys") swimmer.dt_phys = parse_double(key, value);
  else if (key == "env.action_interval") env_action_interval = parse_double(key, value);
  else if (key == "env.episode_steps") env_episode_steps = static_cast<int>(parse_int(key, value));
  else if (key == "env.init_center_x") env_init.cx = parse_double(key, value);
  else if (key == "env.init_center_y") env_init.cy = parse_double(key, value);
  else if (key == "env.init_side") env_init.side = parse_double(key, value);
  else if (key == "train.alpha") train.alpha = parse_double(key, value);
  else if (key == "train.gamma") train.gamma = parse_double(key, value);
  else if (key == "train.episodes") train.episodes = static_cast<int>(parse_int(key, value));
  else if (key == "train.eps_initial") train.eps_initial = parse_double(key, value);
  else if (key == "train.eps_final") train.eps_final = parse_double(key, value);
  else if (key == "train.eps_decay_episodes") train.eps_decay_episodes = static_cast<int>(parse_int(key, value));
  else if (key == "eval.n_swimmers") eval_n_swimmers = static_cast<int>(parse_int(key, value));
  else if (key == "eval.duration") eval_duration = parse_double(key, value);
  else if (key == "validate.t_end") validate_t_end = parse_double(key, value);
  else if (key == "sim.t_end") sim_t_end = parse_double(key, value);
  else if (key == "sim.snapshots") sim_snapshots = parse_list(key, value);
  else if (key == "seed") seed = parse_u64(key, value);
  else if (key == "output_dir") output_dir = value;
  else throw ConfigError("unknown config key: '" + key + "'");
}

void RunConfig::load(std::istream& in) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  RunConfig cfg;
  cfg.load(in);
  return cfg;
}

void RunConfig::validate() const {
  flow.validate();
  solver_config().validate();
  env_config().validate();  // covers swimmer + env invariants
  train.validate();
  if (eval_n_swimmers < 1) throw ConfigError("eval.n_swimmers must be >= 1");
  if (!(eval_duration > 0.0)) throw ConfigError("eval.duration must be > 0");
  const double ratio = eval_duration / env_action_interval;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio) || ratio < 0.5) {
    throw ConfigError("eval.duration must be an integer multiple of env.action_interval");
  }
  if (!(validate_t_end > 0.0)) throw ConfigError("validate.t_end must be > 0");
  if (!(sim_t_end > 0.0)) throw ConfigError("sim.t_end must be > 0");
  for (double t : sim_snapshots) {
    if (!(t >= 0.0) || t > sim_t_end) {
      throw ConfigError("sim.snapshots entries must lie in [0, sim.t_end]");
    }
  }
  if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
}

void RunConfig::dump(std::ostream& out) const {
  out << "flow.U0 = " << format_double(flow.U0) << "\n";
  out << "flow.nu = " << format_double(flow.nu) << "\n";
  out << "flow.k = " << format_double(flow.k) << "\n";
  out << "flow.decaying = " << (flow.decaying ? "true" : "false") << "\n";
  out << "flow.L = " << format_double(flow.L) << "\n";
  out << "solver.N = " << solver_N << "\n";
  out << "solver.dt = " << format_double(solver_dt) << "\n";
  out << "solver.dealias = " << (solver_dealias ? "true" : "false") << "\n";
  out << "solver.cfl_strict = " << (solver_cfl_strict ? "true" : "false") << "\n";
  out << "swimmer.v_s = " << format_double(swimmer.v_s) << "\n";
  out << "swimmer.B = " << format_double(swimmer.B) << "\n";
  out << "swimmer.dt_phys = " << format_double(swimmer.dt_phys) << "\n";
  out << "env.action_interval = " << format_double(env_action_interval) << "\n";
  out << "env.episode_steps = " << env_episode_steps << "\n";
  out << "env.init_center_x = " << format_double(env_init.cx) << "\n";
  out << "env.init_center_y = " << format_double(env_init.cy) << "\n";
  out << "env.init_side = " << format_double(env_init.side) << "\n";
  out << "train.alpha = " << format_double(train.alpha) << "\n";
  out << "train.gamma = " << format_double(train.gamma) << "\n";
  out << "train.episodes = " << train.episodes << "\n";
  out << "train.eps_initial = " << format_double(train.eps_initial) << "\n";
  out << "train.eps_final = " << format_double(train.eps_final) << "\n";
  out << "train.eps_decay_episodes = " << train.eps_decay_episodes << "\n";
  out << "eval.n_swimmers = " << eval_n_swimmers << "\n";
  out << "eval.duration = " << format_double(eval_duration) << "\n";
  out << "validate.t_end = " << format_double(validate_t_end) << "\n";
  out << "sim.t_end = " << format_double(sim_t_end) << "\n";
  out << "sim.snapshots = " << join_list(sim_snapshots) << "\n";
  out << "seed = " << seed << "\n";
  out << "output_dir = " << output_dir << "\n";
}

SolverConfig RunConfig::solver_config() const {
  SolverConfig cfg;
  cfg.N = solver_N;
  cfg.L = flow.L;
  cfg.nu = flow.nu;
  cfg.dt = solver_dt;
  cfg.dealias = solver_dealias;
  cfg.cfl_strict = solver_cfl_strict;
  return cfg;
}

EnvConfig RunConfig::env_config() const {
  EnvConfig cfg;
  cfg.field = flow;
  cfg.swimmer = swimmer;
  cfg.action_interval = env_action_interval;
  cfg.episode_steps = env_episode_steps;
  cfg.init_region = env_init;
  cfg.seed = seed;
  return cfg;
}

int RunConfig::eval_decisions() const {
  return static_cast<int>(std::llround(eval_duration / env_action_interval));
}

}  // namespace cellflow
