#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "ldg/config.hpp"
#include "ldg/io.hpp"
#include "ldg/sweep.hpp"

using namespace ldg;

namespace {

RunConfig parse(const std::string& text) {
  std::istringstream is(text);
  return parse_config(is);
}

}  // namespace

TEST_CASE("config parsing") {
  const RunConfig c = parse(
      "# torus run\n"
      "n = 64\n"
      "mu = 10   # trailing comment\n"
      "branch = minus\n"
      "sector = off\n"
      "max_iters = 500\n"
      "sweep = c\n"
      "sweep_values = 0.5, 0.7, 0.9\n"
      "run_id = abc\n");
  CHECK(c.n == 64);
  CHECK(c.mu == 10.0);
  CHECK(c.obstacle.branch == Branch::Minus);
  CHECK(c.obstacle.bound == 0.5);  // default bound for the branch
  CHECK_FALSE(c.solver.sector_projection);
  CHECK(c.solver.max_iters == 500);
  CHECK(c.sweep == SweepParam::C);
  CHECK(c.sweep_values == std::vector<double>{0.5, 0.7, 0.9});
  CHECK(c.run_id == "abc");
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("malformed configs") {
  CHECK_THROWS_AS(parse("n 64\n"), ConfigError);
  CHECK_THROWS_AS(parse("n = sixty\n"), ConfigError);
  CHECK_THROWS_AS(parse("colour = red\n"), ConfigError);
  CHECK_THROWS_AS(parse("mu =\n"), ConfigError);
  CHECK_THROWS_AS(parse("branch = up\n"), ConfigError);
  CHECK_THROWS_AS(parse("n = 16\n").validate(), ConfigError);
  CHECK_THROWS_AS(parse("branch = plus\nbound = 0.2\n").validate(), ConfigError);
  CHECK_THROWS_AS(parse("sweep = mu\nsweep_values =\n").validate(), ConfigError);
  CHECK_THROWS_AS(parse("sweep = b\nbranch = minus\nsweep_values = 0.5\n").validate(), ConfigError);
}

TEST_CASE("sweep rejects non-monotone values") {
  RunConfig c = parse("n = 32\nsweep = mu\nsweep_values = 1, 10, 5\n");
  CHECK_THROWS_AS(run_sweep(c), ConfigError);
  c.sweep_values.clear();
  CHECK_THROWS_AS(run_sweep(c), ConfigError);
}

TEST_CASE("sweep records a failing item and continues") {
  // -0.4 is outside the PLUS range; only the base bound is validated up front
  RunConfig c = parse("n = 32\nbranch = plus\nsweep = b\nsweep_values = -0.6, -0.4\nmax_iters = 50\n");
  const auto items = run_sweep(c);
  REQUIRE(items.size() == 2);
  CHECK(items[0].ok);
  CHECK_FALSE(items[1].ok);
  CHECK_FALSE(items[1].error.empty());
  std::ostringstream os;
  write_sweep_csv(os, SweepParam::B, items);
  CHECK(os.str().find("# schema_version: 1\n# sweep: b\nvalue,mu,bound,") == 0);
}

TEST_CASE("checkpoint round trip is exact") {
  auto m = build_mesh(32);
  Field3 u = initial_guess(m, Branch::Plus, 0.37, 10);
  apply_jitter(u, 0.1, 9);
  std::stringstream ss;
  write_checkpoint(ss, u, 10.0 / 3, {Branch::Plus, -0.55});
  const Checkpoint cp = read_checkpoint(ss);
  CHECK(cp.mu == 10.0 / 3);
  CHECK(cp.obstacle.branch == Branch::Plus);
  CHECK(cp.obstacle.bound == -0.55);
  bool same = true;
  for (std::size_t k = 0; k < u.size(); ++k) same = same && cp.field[k] == u[k];
  CHECK(same);
  std::istringstream bad("schema_version 1\nn 32\nmu 0x1p+0\nbranch plus\nbound -0.5\nvalues 3\n");
  CHECK_THROWS(read_checkpoint(bad));
}

TEST_CASE("jitter is reproducible") {
  auto m = build_mesh(16);
  Field3 a = hedgehog_field(m), b = hedgehog_field(m), c = hedgehog_field(m);
  apply_jitter(a, 0.2, 5);
  apply_jitter(b, 0.2, 5);
  apply_jitter(c, 0.2, 6);
  bool ab = true, ac = true;
  for (std::size_t k = 0; k < a.size(); ++k) {
    ab = ab && a[k] == b[k];
    ac = ac && a[k] == c[k];
  }
  CHECK(ab);
  CHECK_FALSE(ac);
}

TEST_CASE("reports carry stable names") {
  DefectReport d;
  d.axis.singularities.push_back({0.2, 0.21, TangentLabel::LambdaPlus});
  RingInfo r;
  r.rho0 = 0.5;
  r.winding_half_turns = 0.5;
  d.ring = r;
  const auto j = nlohmann::json::parse(defect_report_json(d));
  for (const char* key : {"schema_version", "axis_crossings", "parity", "ring_radius", "winding_half_turns", "orderings"})
    CHECK(j.contains(key));
  CHECK(j["parity"] == "odd");
  CHECK(j["axis_crossings"][0]["label"] == "Lambda+");
  CHECK(j["ring_radius"] == 0.5);

  std::ostringstream os;
  RunInfo info;
  info.n = 32;
  info.mu = 10;
  write_energy_report(os, EnergyReport{1, 2, 3, 6}, info);
  const auto e = nlohmann::json::parse(os.str());
  CHECK(e["schema_version"] == kSchemaVersion);
  CHECK(e["energy"]["total"] == 6.0);
}

TEST_CASE("field CSV") {
  auto m = build_mesh(16);
  std::ostringstream a, b;
  write_field_csv(a, hedgehog_field(m));
  write_field_csv(b, hedgehog_field(m));
  CHECK(a.str() == b.str());
  std::istringstream is(a.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "# schema_version: 1");
  std::getline(is, line);
  CHECK(line == "rho,z,u1,u2,u3,lambda1,lambda2,lambda3,kappa_rho,kappa_z");
  std::size_t rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 9);
  }
  std::size_t in = 0;
  for (std::size_t k = 0; k < m->num_nodes(); ++k) in += m->in_disk(k);
  CHECK(rows == in);
}
