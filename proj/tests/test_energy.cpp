#include <cmath>
#include <random>

#include "doctest.h"
#include "ldg/energy.hpp"
#include "ldg/optimizer.hpp"

using namespace ldg;

namespace {

const double k24pi = 24 * M_PI;

// smooth non-critical field with hedgehog boundary data
Field3 wobbly(int n, double amp) {
  auto m = build_mesh(n);
  Field3 u = hedgehog_field(m);
  for (std::size_t k = 0; k < m->num_nodes(); ++k) {
    if (!m->is_free(k)) continue;
    const double rho = m->rho(m->col(k)), z = m->z(m->row(k));
    const double b = amp * (1 - rho * rho - z * z);
    u[k] = (u[k] + Vec3(b * std::sin(3 * z) * rho, b * std::cos(2 * rho), b * rho * z)).normalized();
  }
  project_constraints(u, ObstacleSpec{Branch::None, 0}, false);
  return u;
}

}  // namespace

TEST_CASE("hedgehog energy approaches 24 pi") {
  const double e128 = energy(hedgehog_field(build_mesh(128)), 10).total;
  const double e256 = energy(hedgehog_field(build_mesh(256)), 10).total;
  CHECK(std::abs(e128 / k24pi - 1) < 0.015);
  CHECK(std::abs(e256 / k24pi - 1) < 0.005);
  // first-order convergence: the error roughly halves
  CHECK((k24pi - e128) / (k24pi - e256) == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("report parts add up and the potential vanishes on U*") {
  auto m = build_mesh(64);
  const EnergyReport a = energy(hedgehog_field(m), 0);
  const EnergyReport b = energy(hedgehog_field(m), 100);
  CHECK(a.total == doctest::Approx(a.dirichlet + a.singular + a.potential));
  CHECK(std::abs(a.total - b.total) < 1e-10);
  CHECK(std::abs(b.potential) < 1e-10);
}

TEST_CASE("constant field has zero energy at mu=0") {
  const Field3 c = constant_field(build_mesh(32), Vec3(0, 1, 0));
  CHECK(energy(c, 0).total == 0.0);
  for (const Vec3& g : energy_gradient(c, 0)) CHECK(g.norm() == 0.0);
}

TEST_CASE("potential part is non-negative on unit fields") {
  const Field3 u = wobbly(48, 0.8);
  CHECK(energy(u, 50).potential >= -1e-12);
}

TEST_CASE("gradient matches central differences") {
  Field3 u = wobbly(24, 0.6);
  const Mesh& m = u.mesh();
  const double mu = 7.0;
  const auto g = energy_gradient(u, mu);
  std::mt19937_64 gen(11);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Vec3> d(m.num_nodes(), Vec3::Zero());
    double dot = 0;
    for (std::size_t k = 0; k < m.num_nodes(); ++k)
      if (m.is_free(k)) {
        d[k] = Vec3(nd(gen), nd(gen), nd(gen));
        dot += g[k].dot(d[k]);
      }
    const double eps = 1e-5;
    Field3 up = u, dn = u;
    for (std::size_t k = 0; k < m.num_nodes(); ++k) {
      up[k] += eps * d[k];
      dn[k] -= eps * d[k];
    }
    const double fd = (energy(up, mu).total - energy(dn, mu).total) / (2 * eps);
    CHECK(fd == doctest::Approx(dot).epsilon(1e-6));
  }
  // and node by node, axis and equator included
  for (std::size_t k : {m.index(0, 5), m.index(7, 0), m.index(6, 9)})
    for (int c = 0; c < 3; ++c) {
      Field3 up = u, dn = u;
      up[k][c] += 1e-6;
      dn[k][c] -= 1e-6;
      const double fd = (energy(up, mu).total - energy(dn, mu).total) / 2e-6;
      CHECK(g[k][c] == doctest::Approx(fd).epsilon(1e-5).scale(1e-3));
    }
}

TEST_CASE("threaded evaluation is bit-identical") {
  const Field3 u = wobbly(64, 0.5);
  std::vector<Vec3> g1, g4;
  const double e1 = energy_and_gradient(u, 10, g1, 1);
  const double e4 = energy_and_gradient(u, 10, g4, 4);
  CHECK(e1 == e4);
  CHECK(energy(u, 10, 1).total == energy(u, 10, 3).total);
  bool same = true;
  for (std::size_t k = 0; k < g1.size(); ++k) same = same && g1[k] == g4[k];
  CHECK(same);
}

TEST_CASE("energy is unchanged by the mirror convention u3 -> -u3") {
  // the quarter-disk sum represents both halves; flipping the sign of u3 is the
  // lower-half convention and must give the same value
  Field3 u = wobbly(40, 0.7);
  Field3 v = u;
  for (auto& x : v.values()) x[2] = -x[2];
  CHECK(energy(u, 5).total == doctest::Approx(energy(v, 5).total).epsilon(1e-14));
}

TEST_CASE("localized energy") {
  auto m = build_mesh(128);
  const Field3 U = hedgehog_field(m);
  const double at1 = localized_energy(U, 10, 1.0);
  CHECK(at1 == doctest::Approx(energy(U, 10).total / (4 * M_PI)).epsilon(1e-10));
  // 0-homogeneous density: flat in r up to quadrature error
  for (double r : {0.25, 0.5, 0.75}) CHECK(localized_energy(U, 10, r) == doctest::Approx(at1).epsilon(0.03));
  CHECK_THROWS_AS(localized_energy(U, 10, m->h()), std::invalid_argument);
  CHECK_THROWS_AS(localized_energy(U, 10, 1.5), std::invalid_argument);
}

TEST_CASE("Euler-Lagrange residual") {
  // U* is critical. On a fixed region away from the axis the residual falls
  // like h^2; in the band 4h < rho < const the 1/rho^2 terms leave O(h).
  auto away = [](int n) {
    auto m = build_mesh(n);
    const ResidualReport r = euler_lagrange_residual(hedgehog_field(m), 10, 0.25);
    double worst = 0;
    for (std::size_t k = 0; k < r.pointwise.size(); ++k)
      if (!std::isnan(r.pointwise[k]) && m->rho(m->col(k)) >= 0.125) worst = std::max(worst, r.pointwise[k]);
    return worst;
  };
  const double r128 = away(128), r256 = away(256);
  CHECK(away(64) / r128 == doctest::Approx(4.0).epsilon(0.1));
  CHECK(r128 / r256 == doctest::Approx(4.0).epsilon(0.1));
  CHECK(r256 < 2e-2);
  const ResidualReport w = euler_lagrange_residual(wobbly(64, 0.8), 10);
  CHECK(w.max > 0.1);
  CHECK(w.nodes > 0);
}
