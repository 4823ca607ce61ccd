#include <cmath>
#include <random>

#include "doctest.h"
#include "ldg/energy.hpp"
#include "ldg/optimizer.hpp"

using namespace ldg;

namespace {

bool feasible(const Field3& u, const ObstacleSpec& obs) {
  const Mesh& m = u.mesh();
  for (std::size_t k = 0; k < m.num_nodes(); ++k) {
    if (!m.in_disk(k)) continue;
    const Vec3& v = u[k];
    if (std::abs(v.norm() - 1) > 1e-12) return false;
    const NodeClass c = m.node_class(k);
    if (c == NodeClass::Axis && (v[0] != 0 || v[2] != 0 || std::abs(v[1]) != 1)) return false;
    if (c == NodeClass::Equator) {
      if (v[2] != 0) return false;
      if (obs.branch == Branch::Plus && v[1] < obs.bound) return false;
      if (obs.branch == Branch::Minus && v[1] > obs.bound) return false;
    }
  }
  return true;
}

Field3 random_perturbation(std::shared_ptr<const Mesh> m, std::mt19937_64& g, double amp) {
  std::normal_distribution<double> nd;
  Field3 u = hedgehog_field(m);
  for (std::size_t k = 0; k < m->num_nodes(); ++k)
    if (m->is_free(k)) u[k] = (u[k] + amp * Vec3(nd(g), nd(g), nd(g))).normalized();
  return u;
}

SolverConfig quick() {
  SolverConfig c;
  c.max_iters = 4000;
  return c;
}

}  // namespace

TEST_CASE("obstacle and solver validation") {
  CHECK_NOTHROW((ObstacleSpec{Branch::Plus, -0.5}.validate()));
  CHECK_THROWS_AS((ObstacleSpec{Branch::Plus, -0.4}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ObstacleSpec{Branch::Plus, -1.0}.validate()), std::invalid_argument);
  CHECK_NOTHROW((ObstacleSpec{Branch::Minus, 0.9}.validate()));
  CHECK_THROWS_AS((ObstacleSpec{Branch::Minus, 1.0}.validate()), std::invalid_argument);
  SolverConfig c;
  c.shrink = 1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  CHECK(parse_branch("plus") == Branch::Plus);
  CHECK_THROWS_AS(parse_branch("sideways"), std::invalid_argument);
}

TEST_CASE("initial guess") {
  auto m = build_mesh(32);
  const Field3 U = hedgehog_field(m);
  const Field3 zero = initial_guess(m, Branch::Plus, 0.0, 10);
  for (std::size_t k = 0; k < m->num_nodes(); ++k) CHECK(zero[k] == U[k]);
  const Field3 plus = initial_guess(m, Branch::Plus, 0.2, 10);
  const Field3 minus = initial_guess(m, Branch::Minus, 0.2, 10);
  const double lambda = std::ceil(0.8 * std::sqrt(10.0));
  double worst = 0;
  for (std::size_t k = 0; k < m->num_nodes(); ++k) {
    worst = std::max(worst, std::abs(plus[k].norm() - 1));
    const double r = std::hypot(m->rho(m->col(k)), m->z(m->row(k)));
    if (m->is_free(k) && r < 1 / lambda) {
      CHECK(plus[k][1] >= U[k][1] - 1e-15);
      CHECK(minus[k][1] <= U[k][1] + 1e-15);
    } else {
      CHECK(plus[k] == U[k]);
    }
  }
  CHECK(worst < 1e-14);
}

TEST_CASE("equator clamp example") {
  auto m = build_mesh(16);
  Field3 u = hedgehog_field(m);
  const std::size_t k = m->index(4, 0);
  u[k] = Vec3(0.6, -0.9, 0.1).normalized();
  project_constraints(u, {Branch::Plus, -0.5}, true);
  CHECK(u[k][0] == doctest::Approx(std::sqrt(3.0) / 2));
  CHECK(u[k][1] == doctest::Approx(-0.5));
  CHECK(u[k][2] == 0.0);
  u[k] = Vec3(0.6, 0.7, 0.1).normalized();
  project_constraints(u, {Branch::Minus, 0.5}, true);
  CHECK(u[k][1] == doctest::Approx(0.5));
}

TEST_CASE("axis snapping keeps the sign, +1 on ties") {
  auto m = build_mesh(16);
  Field3 u = hedgehog_field(m);
  u.at(0, 5) = Vec3(0.3, -0.4, 0.2);
  u.at(0, 6) = Vec3(0.3, 0.0, 0.2);
  project_constraints(u, {Branch::None, 0}, false);
  CHECK(u.at(0, 5) == Vec3(0, -1, 0));
  CHECK(u.at(0, 6) == Vec3(0, 1, 0));
}

TEST_CASE("projection is idempotent") {
  std::mt19937_64 g(5);
  Field3 u = random_perturbation(build_mesh(24), g, 0.3);
  const ObstacleSpec obs{Branch::Plus, -0.6};
  project_constraints(u, obs, true);
  Field3 v = u;
  project_constraints(v, obs, true);
  double worst = 0;
  for (std::size_t k = 0; k < u.size(); ++k) worst = std::max(worst, (u[k] - v[k]).norm());
  CHECK(worst <= 1e-15);
  CHECK(feasible(u, obs));
}

TEST_CASE("sector projection never raises the energy") {
  std::mt19937_64 g(6);
  auto m = build_mesh(16);
  for (int t = 0; t < 100; ++t) {
    Field3 u = random_perturbation(m, g, 0.5);
    project_constraints(u, {Branch::None, 0}, false);
    Field3 s = u;
    project_constraints(s, {Branch::None, 0}, true);
    CHECK(energy(s, 10).total <= energy(u, 10).total + 1e-12);
  }
}

TEST_CASE("minimize: monotone trace, feasible output, below U*") {
  auto m = build_mesh(32);
  const ObstacleSpec obs{Branch::Plus, -0.5};
  const SolveResult r = minimize(initial_guess(m, Branch::Plus, 0.3, 10), 10, obs, quick());
  CHECK(r.status != SolveStatus::MaxIterations);
  for (std::size_t k = 1; k < r.trace.size(); ++k) CHECK(r.trace[k].energy <= r.trace[k - 1].energy);
  CHECK(feasible(r.field, obs));
  CHECK(r.energy.total < energy(hedgehog_field(m), 10).total);
  CHECK(r.energy.total == doctest::Approx(energy(r.field, 10).total).epsilon(1e-14));
}

TEST_CASE("minimize: restart from a minimizer is a fixed point") {
  auto m = build_mesh(32);
  const ObstacleSpec obs{Branch::Plus, -0.5};
  const SolveResult a = minimize(initial_guess(m, Branch::Plus, 0.3, 10), 10, obs, quick());
  const SolveResult b = minimize(a.field, 10, obs, quick());
  CHECK(b.iterations <= 1);
  CHECK(std::abs(b.energy.total - a.energy.total) < 1e-12);
}

TEST_CASE("minimize: deterministic") {
  auto m = build_mesh(32);
  const ObstacleSpec obs{Branch::Minus, 0.5};
  SolverConfig c = quick();
  const SolveResult a = minimize(initial_guess(m, Branch::Minus, 0.3, 10), 10, obs, c);
  c.threads = 3;
  const SolveResult b = minimize(initial_guess(m, Branch::Minus, 0.3, 10), 10, obs, c);
  CHECK(a.iterations == b.iterations);
  CHECK(a.energy.total == b.energy.total);
  bool same = true;
  for (std::size_t k = 0; k < a.field.size(); ++k) same = same && a.field[k] == b.field[k];
  CHECK(same);
}

TEST_CASE("minimize: MINUS branch flips the origin") {
  auto m = build_mesh(48);
  const ObstacleSpec obs{Branch::Minus, 0.5};
  const SolveResult r = minimize(initial_guess(m, Branch::Minus, 0.3, 10), 10, obs, quick());
  CHECK(feasible(r.field, obs));
  CHECK(r.field.at(0, 0)[1] == -1.0);
}

TEST_CASE("minimize: rejects a bad configuration") {
  auto m = build_mesh(16);
  SolverConfig c;
  c.max_iters = 0;
  CHECK_THROWS_AS(minimize(hedgehog_field(m), 10, {Branch::Plus, -0.5}, c), std::invalid_argument);
  CHECK_THROWS_AS(minimize(hedgehog_field(m), -1, {Branch::Plus, -0.5}, SolverConfig{}), std::invalid_argument);
}
