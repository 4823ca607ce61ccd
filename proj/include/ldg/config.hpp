#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "ldg/optimizer.hpp"

namespace ldg {

// Malformed or out-of-range configuration.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SweepParam { None, B, C, Mu };
const char* to_string(SweepParam p);

// Flat "key = value" file; '#' starts a comment. Keys:
//   n, mu, branch, bound, sector, sigma, max_iters, grad_tol, tau0, c1,
//   shrink, axis_move_interval, jitter, seed, run_id, out, sweep, sweep_values
struct RunConfig {
  int n = 128;
  double mu = 10.0;
  ObstacleSpec obstacle{Branch::Plus, -0.5};
  double sigma = 0.3;  // magnitude; the sign follows the branch
  SolverConfig solver;
  // Optional random perturbation of the start, for probing other local minima.
  double jitter = 0.0;
  std::uint64_t seed = 0;
  std::string out_dir = "out";
  std::string run_id = "run";
  SweepParam sweep = SweepParam::None;
  std::vector<double> sweep_values;

  void validate() const;
};

RunConfig parse_config(std::istream& is);
RunConfig load_config(const std::string& path);

}  // namespace ldg
