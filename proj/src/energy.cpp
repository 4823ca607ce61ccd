#include "ldg/energy.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "parallel.hpp"

namespace ldg {

namespace {

const double kSqrt2 = std::sqrt(2.0);

inline double singular_density(const Vec3& u) { return 4 * u[0] * u[0] + u[2] * u[2]; }

struct RowSums {
  double dir = 0, sing = 0, pot = 0;
};

}  // namespace

double full_ball_factor() { return 4.0 * std::numbers::pi; }

EnergyReport energy(const Field3& u, double mu, int threads) {
  const Mesh& m = u.mesh();
  const int side = m.side();
  std::vector<RowSums> rows(side);
  detail::parallel_rows(side, threads, [&](int j) {
    RowSums acc;
    for (int i = 0; i < side; ++i) {
      const std::size_t k = m.index(i, j);
      if (m.node_mass(k) == 0.0) continue;
      const Vec3& v = u[k];
      if (i < side - 1) acc.dir += m.edge_rho(k) * (u[k + 1] - v).squaredNorm();
      if (j < side - 1) acc.dir += m.edge_z(k) * (u[k + side] - v).squaredNorm();
      acc.sing += m.singular_weight(k) * singular_density(v);
      acc.pot += m.node_mass(k) * (1.0 - 3.0 * potential_P(v));
    }
    rows[j] = acc;
  });
  RowSums tot;
  for (const auto& r : rows) {
    tot.dir += r.dir;
    tot.sing += r.sing;
    tot.pot += r.pot;
  }
  const double f = full_ball_factor();
  EnergyReport rep;
  rep.dirichlet = f * tot.dir;
  rep.singular = f * tot.sing;
  rep.potential = f * kSqrt2 * mu * tot.pot;
  rep.total = rep.dirichlet + rep.singular + rep.potential;
  return rep;
}

double energy_and_gradient(const Field3& u, double mu, std::vector<Vec3>& grad, int threads) {
  const Mesh& m = u.mesh();
  const int side = m.side();
  const double f = full_ball_factor();
  const double fp = f * kSqrt2 * mu;
  grad.resize(m.num_nodes());
  std::vector<double> row_energy(side, 0.0);
  detail::parallel_rows(side, threads, [&](int j) {
    double acc = 0.0;
    for (int i = 0; i < side; ++i) {
      const std::size_t k = m.index(i, j);
      Vec3& g = grad[k];
      g.setZero();
      if (m.node_mass(k) == 0.0) continue;
      const Vec3& v = u[k];
      if (i < side - 1) {
        const Vec3 d = v - u[k + 1];
        acc += f * m.edge_rho(k) * d.squaredNorm();
        g += 2 * f * m.edge_rho(k) * d;
      }
      if (i > 0) g += 2 * f * m.edge_rho(k - 1) * (v - u[k - 1]);
      if (j < side - 1) {
        const Vec3 d = v - u[k + side];
        acc += f * m.edge_z(k) * d.squaredNorm();
        g += 2 * f * m.edge_z(k) * d;
      }
      if (j > 0) g += 2 * f * m.edge_z(k - side) * (v - u[k - side]);
      const double ws = f * m.singular_weight(k);
      const double wp = fp * m.node_mass(k);
      acc += ws * singular_density(v) + wp * (1.0 - 3.0 * potential_P(v));
      g += Vec3(8 * ws * v[0], 0.0, 2 * ws * v[2]) - 3.0 * wp * grad_P(v);
      if (!m.is_free(k)) g.setZero();
    }
    row_energy[j] = acc;
  });
  double total = 0.0;
  for (double e : row_energy) total += e;
  return total;
}

std::vector<Vec3> energy_gradient(const Field3& u, double mu, int threads) {
  std::vector<Vec3> g;
  energy_and_gradient(u, mu, g, threads);
  return g;
}

double localized_energy(const Field3& u, double mu, double r) {
  const Mesh& m = u.mesh();
  const double h = m.h();
  if (!(r >= 2 * h) || r > 1.0 + 1e-12)
    throw std::invalid_argument("localized energy radius must lie in [2h, 1]");
  const int n = m.n();
  const int lim = std::min(n, static_cast<int>(std::ceil(r / h)));
  std::vector<double> s_node(m.num_nodes(), 0.0);
  for (int j = 0; j <= lim; ++j)
    for (int i = 0; i <= lim; ++i) {
      const std::size_t k = m.index(i, j);
      s_node[k] = potential_S(augment_L(u[k], 0.0));
    }
  double total = 0.0;
  for (int j = 0; j < lim; ++j) {
    for (int i = 0; i < lim; ++i) {
      const double w = clipped_cell_weight(m.rho(i), m.rho(i + 1), m.z(j), m.z(j + 1), r);
      if (w == 0.0) continue;
      const Vec3& a = u.at(i, j);
      const Vec3& b = u.at(i + 1, j);
      const Vec3& c = u.at(i, j + 1);
      const Vec3& d = u.at(i + 1, j + 1);
      const double grad2 = ((b - a).squaredNorm() + (d - c).squaredNorm() +
                            (c - a).squaredNorm() + (d - b).squaredNorm()) /
                           (2 * h * h);
      const double rc = m.rho_center(i);
      const double sing = 0.25 *
                          (singular_density(a) + singular_density(b) + singular_density(c) +
                           singular_density(d)) /
                          (rc * rc);
      const double sv = s_node[m.index(i, j)] + s_node[m.index(i + 1, j)] +
                        s_node[m.index(i, j + 1)] + s_node[m.index(i + 1, j + 1)];
      const double pot = kSqrt2 * mu * 0.25 * (4.0 - 3.0 * sv);
      total += w * (grad2 + sing + pot);
    }
  }
  return total / r;
}

ResidualReport euler_lagrange_residual(const Field3& u, double mu, double min_radius) {
  const Mesh& m = u.mesh();
  const double h = m.h();
  ResidualReport rep;
  rep.pointwise.assign(m.num_nodes(), std::numeric_limits<double>::quiet_NaN());
  double sum2 = 0.0, mass = 0.0;
  auto apply = [&](const std::vector<StencilEntry>& st) {
    Vec3 out = Vec3::Zero();
    for (const auto& e : st)
      for (int c = 0; c < 3; ++c) out[c] += e.coeff * e.parity[c] * u[e.node][c];
    return out;
  };
  for (std::size_t k = 0; k < m.num_nodes(); ++k) {
    if (m.node_class(k) != NodeClass::Interior) continue;
    const double rho = m.rho(m.col(k));
    const double z = m.z(m.row(k));
    if (rho <= 4 * h) continue;
    if (rho * rho + z * z < min_radius * min_radius) continue;
    const Stencil st = gradient_stencil(m, k);
    const Vec3& v = u[k];
    Vec3 res = -(apply(st.d_rho_rho) + apply(st.d_rho) / rho + apply(st.d_z_z));
    res += Vec3(4 * v[0], 0.0, v[2]) / (rho * rho);
    res -= 1.5 * kSqrt2 * mu * grad_P(v);
    res -= res.dot(v) * v;
    const double r = res.norm();
    rep.pointwise[k] = r;
    rep.max = std::max(rep.max, r);
    sum2 += m.node_mass(k) * r * r;
    mass += m.node_mass(k);
    ++rep.nodes;
  }
  rep.l2 = mass > 0 ? std::sqrt(sum2 / mass) : 0.0;
  return rep;
}

}  // namespace ldg
