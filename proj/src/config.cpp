#include "ldg/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace ldg {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size()) throw ConfigError(key + ": not a number: '" + v + "'");
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  int x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size()) throw ConfigError(key + ": not an integer: '" + v + "'");
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "on" || v == "1") return true;
  if (v == "false" || v == "off" || v == "0") return false;
  throw ConfigError(key + ": expected true/false, got '" + v + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_double(key, item));
  }
  return out;
}

}  // namespace

const char* to_string(SweepParam p) {
  switch (p) {
    case SweepParam::None: return "none";
    case SweepParam::B: return "b";
    case SweepParam::C: return "c";
    case SweepParam::Mu: return "mu";
  }
  return "?";
}

void RunConfig::validate() const {
  if (n < 32) throw ConfigError("n must be at least 32");
  if (!(mu >= 0)) throw ConfigError("mu must be non-negative");
  if (obstacle.branch == Branch::None) throw ConfigError("branch must be plus or minus");
  if (!(sigma >= 0 && sigma < 1)) throw ConfigError("sigma must lie in [0, 1)");
  if (!(jitter >= 0 && jitter < 1)) throw ConfigError("jitter must lie in [0, 1)");
  try {
    obstacle.validate();
    solver.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (sweep == SweepParam::B && obstacle.branch != Branch::Plus) throw ConfigError("b sweep needs branch plus");
  if (sweep == SweepParam::C && obstacle.branch != Branch::Minus) throw ConfigError("c sweep needs branch minus");
  if (sweep != SweepParam::None && sweep_values.empty()) throw ConfigError("sweep_values is empty");
}

RunConfig parse_config(std::istream& is) {
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  bool have_bound = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (val.empty() && key != "sweep_values") throw ConfigError(key + ": missing value");
    if (key == "n") cfg.n = to_int(key, val);
    else if (key == "mu") cfg.mu = to_double(key, val);
    else if (key == "branch") {
      try {
        cfg.obstacle.branch = parse_branch(val);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    } else if (key == "bound") {
      cfg.obstacle.bound = to_double(key, val);
      have_bound = true;
    } else if (key == "sector") cfg.solver.sector_projection = to_bool(key, val);
    else if (key == "sigma") cfg.sigma = to_double(key, val);
    else if (key == "max_iters") cfg.solver.max_iters = to_int(key, val);
    else if (key == "grad_tol") cfg.solver.grad_tol = to_double(key, val);
    else if (key == "tau0") cfg.solver.tau0 = to_double(key, val);
    else if (key == "c1") cfg.solver.c1 = to_double(key, val);
    else if (key == "shrink") cfg.solver.shrink = to_double(key, val);
    else if (key == "axis_move_interval") cfg.solver.axis_move_interval = to_int(key, val);
    else if (key == "jitter") cfg.jitter = to_double(key, val);
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_int(key, val));
    else if (key == "run_id") cfg.run_id = val;
    else if (key == "out") cfg.out_dir = val;
    else if (key == "sweep") {
      if (val == "b") cfg.sweep = SweepParam::B;
      else if (val == "c") cfg.sweep = SweepParam::C;
      else if (val == "mu") cfg.sweep = SweepParam::Mu;
      else if (val == "none") cfg.sweep = SweepParam::None;
      else throw ConfigError("sweep: expected b, c, mu or none");
    } else if (key == "sweep_values") cfg.sweep_values = to_list(key, val);
    else throw ConfigError("unknown key '" + key + "'");
  }
  // default bound per branch
  if (!have_bound) cfg.obstacle.bound = cfg.obstacle.branch == Branch::Minus ? 0.5 : -0.5;
  cfg.solver.seed_amplitude = cfg.sigma;
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  return parse_config(in);
}

}  // namespace ldg
