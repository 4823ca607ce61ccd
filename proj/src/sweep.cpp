#include "ldg/sweep.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>

#include "ldg/io.hpp"

namespace ldg {

void apply_jitter(Field3& u, double amplitude, std::uint64_t seed) {
  if (amplitude <= 0) return;
  std::mt19937_64 gen(seed);
  // explicit conversion: uniform_real_distribution differs between libraries
  auto unit = [&] { return 2.0 * static_cast<double>(gen() >> 11) * 0x1.0p-53 - 1.0; };
  const Mesh& m = u.mesh();
  for (std::size_t k = 0; k < m.num_nodes(); ++k) {
    if (!m.is_free(k)) continue;
    Vec3 d(unit(), unit(), unit());
    u[k] = (u[k] + amplitude * d).normalized();
  }
}

Field3 start_field(const RunConfig& cfg) {
  Field3 u = initial_guess(build_mesh(cfg.n), cfg.obstacle.branch, cfg.sigma, cfg.mu);
  apply_jitter(u, cfg.jitter, cfg.seed);
  return u;
}

namespace {

void finish(RunOutcome& out, SolveResult&& res) {
  out.defects = analyze_defects(res.field);
  out.distance = hedgehog_distance(res.field);
  out.solve = std::move(res);
  out.ok = true;
}

}  // namespace

RunOutcome run_single(const RunConfig& cfg) {
  cfg.validate();
  RunOutcome out;
  out.value = cfg.mu;
  out.mu = cfg.mu;
  out.obstacle = cfg.obstacle;
  SolverConfig solver = cfg.solver;
  solver.seed_amplitude = cfg.sigma;
  finish(out, minimize(start_field(cfg), cfg.mu, cfg.obstacle, solver));
  return out;
}

std::vector<RunOutcome> run_sweep(const RunConfig& cfg, const std::function<void(const RunOutcome&)>& on_item) {
  cfg.validate();
  if (cfg.sweep == SweepParam::None) throw ConfigError("no sweep parameter set");
  const auto& vals = cfg.sweep_values;
  if (vals.empty()) throw ConfigError("sweep_values is empty");
  if (vals.size() > 1) {
    const bool up = vals[1] > vals[0];
    for (std::size_t k = 1; k < vals.size(); ++k)
      if ((vals[k] > vals[k - 1]) != up || vals[k] == vals[k - 1])
        throw ConfigError("sweep_values must be strictly monotone");
  }

  std::vector<RunOutcome> items;
  std::optional<Field3> warm;
  for (double v : vals) {
    RunConfig item = cfg;
    if (cfg.sweep == SweepParam::Mu) item.mu = v;
    else item.obstacle.bound = v;
    RunOutcome out;
    out.value = v;
    out.mu = item.mu;
    out.obstacle = item.obstacle;
    try {
      item.validate();
      SolverConfig solver = item.solver;
      solver.seed_amplitude = item.sigma;
      // minimize re-projects the warm start onto the new constraint
      Field3 start = warm ? *warm : start_field(item);
      finish(out, minimize(start, item.mu, item.obstacle, solver));
      warm = out.solve->field;
    } catch (const std::exception& e) {
      out.ok = false;
      out.error = e.what();
    }
    if (on_item) on_item(out);
    items.push_back(std::move(out));
  }
  return items;
}

void write_sweep_csv(std::ostream& os, SweepParam param, const std::vector<RunOutcome>& items) {
  os << "# schema_version: " << kSchemaVersion << '\n';
  os << "# sweep: " << to_string(param) << '\n';
  os << "value,mu,bound,ok,status,iterations,dirichlet,singular,potential,total,singularities,parity,ring_radius,"
        "winding_half_turns,dumbbell_violation_fraction,hedgehog_distance,error\n";
  os << std::setprecision(17);
  for (const auto& it : items) {
    os << it.value << ',' << it.mu << ',' << it.obstacle.bound << ',' << (it.ok ? 1 : 0) << ',';
    if (!it.ok) {
      os << ",,,,,,,,,,,,";
      std::string msg = it.error;
      for (auto& ch : msg)
        if (ch == ',' || ch == '\n') ch = ' ';
      os << msg << '\n';
      continue;
    }
    const auto& s = *it.solve;
    os << to_string(s.status) << ',' << s.iterations << ',' << s.energy.dirichlet << ',' << s.energy.singular << ','
       << s.energy.potential << ',' << s.energy.total << ',' << it.defects.singularity_count() << ','
       << it.defects.parity() << ',';
    if (it.defects.ring) os << it.defects.ring->rho0 << ',' << it.defects.ring->winding_half_turns;
    else os << ',';
    os << ',';
    if (it.defects.dumbbell) os << it.defects.dumbbell->violation_fraction;
    os << ',' << it.distance << ",\n";
  }
}

}  // namespace ldg
