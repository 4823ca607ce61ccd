#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ldg/analysis.hpp"
#include "ldg/config.hpp"
#include "ldg/optimizer.hpp"

namespace ldg {

// Adds jitter * uniform(-1, 1) to every component of free nodes, then
// renormalizes. Same seed, same field.
void apply_jitter(Field3& u, double amplitude, std::uint64_t seed);

// Initial guess from the config (sigma signed by branch, optional jitter).
Field3 start_field(const RunConfig& cfg);

struct RunOutcome {
  double value = 0.0;  // sweep value; mu for a single run
  double mu = 0.0;
  ObstacleSpec obstacle;
  bool ok = false;
  std::string error;
  std::optional<SolveResult> solve;
  DefectReport defects;
  double distance = 0.0;  // L2 distance of L[u] to L[U*]
};

RunOutcome run_single(const RunConfig& cfg);

// Warm-started continuation over cfg.sweep_values. Values must be strictly
// monotone. A failing item is recorded and the next one restarts from the
// last good field.
std::vector<RunOutcome> run_sweep(const RunConfig& cfg,
                                  const std::function<void(const RunOutcome&)>& on_item = {});

void write_sweep_csv(std::ostream& os, SweepParam param, const std::vector<RunOutcome>& items);

}  // namespace ldg
