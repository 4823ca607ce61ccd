// Command-line driver: minimize, sweep, analyze, tangent, verify.
//
// Exit codes: 0 success, 1 run or check failure, 2 bad input.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ldg/analysis.hpp"
#include "ldg/config.hpp"
#include "ldg/io.hpp"
#include "ldg/sweep.hpp"
#include "ldg/tangent.hpp"
#include "ldg/verify.hpp"

namespace fs = std::filesystem;
using namespace ldg;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  return f;
}

void write_status(const fs::path& dir, const std::string& state, const std::string& message,
                  const std::string& solver_status = "") {
  nlohmann::json j{{"schema_version", kSchemaVersion}, {"state", state}, {"message", message}};
  if (!solver_status.empty()) j["solver_status"] = solver_status;
  auto f = open_out(dir / "status.json");
  f << j.dump(2) << '\n';
}

RunInfo run_info(const RunConfig& cfg, const RunOutcome& r) {
  RunInfo info;
  info.run_id = cfg.run_id;
  info.n = cfg.n;
  info.mu = r.mu;
  info.obstacle = r.obstacle;
  info.status = r.solve->status;
  info.iterations = r.solve->iterations;
  info.stationarity = r.solve->stationarity;
  info.axis_moves = r.solve->axis_moves;
  info.hedgehog_distance = r.distance;
  return info;
}

void write_artifacts(const fs::path& dir, const RunConfig& cfg, const RunOutcome& r) {
  const auto& s = *r.solve;
  {
    auto f = open_out(dir / "checkpoint.txt");
    write_checkpoint(f, s.field, r.mu, r.obstacle);
  }
  {
    auto f = open_out(dir / "energy_report.json");
    write_energy_report(f, s.energy, run_info(cfg, r));
  }
  {
    auto f = open_out(dir / "defect_report.json");
    write_defect_report(f, r.defects);
  }
  {
    auto f = open_out(dir / "field.csv");
    write_field_csv(f, s.field);
  }
  {
    auto f = open_out(dir / "trace.csv");
    write_trace_csv(f, s.trace);
  }
  {
    auto f = open_out(dir / "localized_energy.csv");
    write_profile_csv(f, s.field, r.mu);
  }
}

RunConfig load(const std::string& path, int threads, const std::optional<std::uint64_t>& seed) {
  RunConfig cfg;
  try {
    cfg = load_config(path);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
  cfg.solver.threads = threads;
  if (seed) cfg.seed = *seed;
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

void summary(std::ostream& os, const RunOutcome& r) {
  const auto& s = *r.solve;
  os << std::setprecision(8) << "status " << to_string(s.status) << ", iterations " << s.iterations
     << ", energy " << s.energy.total << " (" << s.energy.total / (24 * std::numbers::pi) << " x 24pi)"
     << ", axis singularities " << r.defects.singularity_count();
  if (r.defects.ring) os << ", ring at rho " << r.defects.ring->rho0;
  os << ", distance to U* " << r.distance << '\n';
}

int cmd_minimize(const RunConfig& cfg, const fs::path& out) {
  fs::create_directories(out);
  RunOutcome r;
  try {
    r = run_single(cfg);
  } catch (const std::exception& e) {
    write_status(out, "error", e.what());
    std::cerr << "minimize: " << e.what() << '\n';
    return 1;
  }
  write_artifacts(out, cfg, r);
  write_status(out, "ok", "", to_string(r.solve->status));
  summary(std::cout, r);
  return 0;
}

int cmd_sweep(const RunConfig& cfg, const fs::path& out) {
  if (cfg.sweep == SweepParam::None) throw UsageError("config has no sweep parameter");
  fs::create_directories(out);
  int failures = 0;
  std::size_t index = 0;
  std::vector<RunOutcome> items;
  try {
    items = run_sweep(cfg, [&](const RunOutcome& r) {
      std::cout << to_string(cfg.sweep) << " = " << r.value << ": ";
      if (!r.ok) {
        ++failures;
        std::cout << "failed: " << r.error << '\n';
      } else {
        summary(std::cout, r);
        const fs::path dir = out / ("item_" + std::to_string(index));
        fs::create_directories(dir);
        write_artifacts(dir, cfg, r);
      }
      ++index;
    });
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  {
    auto f = open_out(out / "sweep.csv");
    write_sweep_csv(f, cfg.sweep, items);
  }
  write_status(out, failures ? "partial" : "ok", failures ? std::to_string(failures) + " item(s) failed" : "");
  return failures ? 1 : 0;
}

int cmd_analyze(const std::string& checkpoint, const fs::path& out) {
  std::ifstream in(checkpoint);
  if (!in) throw UsageError("cannot open checkpoint '" + checkpoint + "'");
  Checkpoint cp = [&] {
    try {
      return read_checkpoint(in);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }();
  fs::create_directories(out);
  const DefectReport d = analyze_defects(cp.field);
  RunInfo info;
  info.run_id = "analyze";
  info.n = cp.field.mesh().n();
  info.mu = cp.mu;
  info.obstacle = cp.obstacle;
  info.hedgehog_distance = hedgehog_distance(cp.field);
  {
    auto f = open_out(out / "energy_report.json");
    write_energy_report(f, energy(cp.field, cp.mu), info);
  }
  {
    auto f = open_out(out / "defect_report.json");
    write_defect_report(f, d);
  }
  {
    auto f = open_out(out / "field.csv");
    write_field_csv(f, cp.field);
  }
  std::cout << defect_report_json(d) << '\n';
  return 0;
}

int cmd_tangent(const std::vector<double>& betas, double ring_const, const fs::path& out) {
  for (double b : betas)
    if (!(b > 0 && b < std::numbers::pi)) throw UsageError("beta must lie in (0, pi)");
  fs::create_directories(out);
  nlohmann::json table = nlohmann::json::array();
  auto record = [&](const TangentProfile& p, const std::string& name) {
    auto f = open_out(out / (name + ".csv"));
    write_profile_csv(f, p);
    const ProfileEnergy e = profile_energy(p);
    table.push_back({{"name", name},
                     {"ode_residual", ode_residual(p)},
                     {"first_integral_deviation", first_integral_deviation(p)},
                     {"e2", e.e2},
                     {"ball_energy", e.ball}});
  };
  record(profile(ProfileClass::I, 0.0, 1), "class_I_plus");
  record(profile(ProfileClass::I, 0.0, -1), "class_I_minus");
  for (double b : betas) {
    std::ostringstream tag;
    tag << std::setprecision(6) << b;
    for (auto [cls, cname] : {std::pair{ProfileClass::II, "II"}, std::pair{ProfileClass::III, "III"}})
      for (int var : {1, -1})
        record(profile(cls, b, var), std::string("class_") + cname + (var > 0 ? "_plus_beta_" : "_minus_beta_") + tag.str());
  }
  record(lambda_pm(1), "lambda_plus");
  record(lambda_pm(-1), "lambda_minus");

  auto f = open_out(out / "kappa_formulas.csv");
  f << "# schema_version: " << kSchemaVersion << '\n';
  f << "# ring constant: " << ring_const << '\n';
  f << "phi,ring_rho,ring_z,split_plus_rho,split_plus_z,split_minus_rho,split_minus_z\n";
  f << std::setprecision(17);
  const int samples = 400;
  for (int k = 0; k <= samples; ++k) {
    const double phi = std::numbers::pi * k / samples;
    const Vec2 r = kappa_tangent_formulas(phi, KappaFormula::Ring, ring_const);
    const Vec2 p = kappa_tangent_formulas(phi, KappaFormula::SplitPlus);
    const Vec2 m = kappa_tangent_formulas(phi, KappaFormula::SplitMinus);
    f << phi << ',' << r[0] << ',' << r[1] << ',' << p[0] << ',' << p[1] << ',' << m[0] << ',' << m[1] << '\n';
  }
  auto s = open_out(out / "profiles.json");
  s << nlohmann::json{{"schema_version", kSchemaVersion}, {"profiles", table}}.dump(2) << '\n';
  std::cout << table.dump(2) << '\n';
  return 0;
}

int cmd_verify(std::uint64_t seed, bool mutate) {
  VerifyOptions opt;
  opt.seed = seed;
  opt.mutate_eigenvalues = mutate;
  const auto checks = run_verify(opt);
  print_verify_table(std::cout, checks);
  int failed = 0;
  for (const auto& c : checks)
    if (!c.passed) ++failed;
  if (failed) {
    std::cout << failed << " check(s) failed:\n";
    for (const auto& c : checks)
      if (!c.passed) std::cout << "  " << c.name << '\n';
    return 1;
  }
  std::cout << "all " << checks.size() << " checks passed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Axially symmetric Landau-de Gennes minimizers"};
  app.require_subcommand(1);
  int threads = 1;
  std::optional<std::uint64_t> seed;
  app.add_option("--threads", threads, "worker threads for the energy kernels")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "random seed (jitter, verify sampling)");

  std::string config, out, checkpoint;
  auto* mini = app.add_subcommand("minimize", "solve one branch and write artifacts");
  mini->add_option("--config", config, "key = value config file")->required();
  mini->add_option("--out", out, "output directory (default: config 'out')");

  auto* sweep = app.add_subcommand("sweep", "warm-started continuation in b, c or mu");
  sweep->add_option("--config", config, "key = value config file")->required();
  sweep->add_option("--out", out, "output directory (default: config 'out')");

  auto* analyze = app.add_subcommand("analyze", "rerun the analysis on a checkpoint");
  analyze->add_option("--checkpoint", checkpoint, "checkpoint file")->required();
  analyze->add_option("--out", out, "output directory")->required();

  std::vector<double> betas{0.3, 1.0, 2.0};
  double ring_const = 0.0;
  auto* tangent = app.add_subcommand("tangent", "export profiles and director formula tables");
  tangent->add_option("--out", out, "output directory")->required();
  tangent->add_option("--beta", betas, "beta values for classes II and III");
  tangent->add_option("--ring-constant", ring_const, "constant for the ring director formula")->check(CLI::NonNegativeNumber);

  bool mutate = false;
  auto* verify = app.add_subcommand("verify", "run the oracle suite");
  verify->add_flag("--mutate-eigenvalues", mutate, "inject a fault into the eigenvalue formula");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*mini || *sweep) {
      const RunConfig cfg = load(config, threads, seed);
      const fs::path dir = out.empty() ? fs::path(cfg.out_dir) : fs::path(out);
      return *mini ? cmd_minimize(cfg, dir) : cmd_sweep(cfg, dir);
    }
    if (*analyze) return cmd_analyze(checkpoint, out);
    if (*tangent) return cmd_tangent(betas, ring_const, out);
    if (*verify) return cmd_verify(seed.value_or(VerifyOptions{}.seed), mutate);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
