#include "ldg/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Sparse>

namespace ldg {

namespace {

const double kSqrt2 = std::sqrt(2.0);

double clamp_u2(double u2, const ObstacleSpec& obs) {
  u2 = std::clamp(u2, -1.0, 1.0);
  if (obs.branch == Branch::Plus) return std::max(u2, obs.bound);
  if (obs.branch == Branch::Minus) return std::min(u2, obs.bound);
  return u2;
}

// Per-component SPD model of the energy Hessian: the Dirichlet graph
// Laplacian, the singular weights and a mass shift for the potential. Fixed
// nodes are eliminated. Used to turn the L2 gradient into a Sobolev gradient.
class Preconditioner {
 public:
  Preconditioner(const Mesh& m, double mu) : m_(m) {
    const double f = full_ball_factor();
    const double sing_coef[3] = {8.0, 0.0, 2.0};
    const int side = m.side();
    for (int c = 0; c < 3; ++c) {
      auto& map = index_[c];
      map.assign(m.num_nodes(), -1);
      int count = 0;
      for (std::size_t k = 0; k < m.num_nodes(); ++k)
        if (active(k, c)) map[k] = count++;
      std::vector<Eigen::Triplet<double>> trip;
      for (int j = 0; j < side; ++j)
        for (int i = 0; i < side; ++i) {
          const std::size_t k = m.index(i, j);
          if (map[k] < 0) continue;
          double diag = f * (sing_coef[c] * m.singular_weight(k) + 3 * kSqrt2 * mu * m.node_mass(k));
          auto couple = [&](std::size_t other, double w) {
            diag += 2 * f * w;
            if (map[other] >= 0) trip.emplace_back(map[k], map[other], -2 * f * w);
          };
          if (i < side - 1) couple(k + 1, m.edge_rho(k));
          if (i > 0) couple(k - 1, m.edge_rho(k - 1));
          if (j < side - 1) couple(k + side, m.edge_z(k));
          if (j > 0) couple(k - side, m.edge_z(k - side));
          trip.emplace_back(map[k], map[k], diag);
        }
      Eigen::SparseMatrix<double>& A = matrix_[c];
      A.resize(count, count);
      A.setFromTriplets(trip.begin(), trip.end());
      solver_[c].compute(A);
      if (solver_[c].info() != Eigen::Success) throw std::runtime_error("preconditioner factorization failed");
      rhs_[c].resize(count);
    }
  }

  // out = A^{-1} in, componentwise; entries of inactive nodes are zero.
  void apply(const std::vector<Vec3>& in, std::vector<Vec3>& out) {
    out.assign(in.size(), Vec3::Zero());
    for (int c = 0; c < 3; ++c) {
      const auto& map = index_[c];
      for (std::size_t k = 0; k < in.size(); ++k)
        if (map[k] >= 0) rhs_[c][map[k]] = in[k][c];
      Eigen::VectorXd x = solver_[c].solve(rhs_[c]);
      for (std::size_t k = 0; k < in.size(); ++k)
        if (map[k] >= 0) out[k][c] = x[map[k]];
    }
  }

  // sum over components of x^T A x
  double energy_norm2(const std::vector<Vec3>& x) {
    double total = 0.0;
    for (int c = 0; c < 3; ++c) {
      const auto& map = index_[c];
      for (std::size_t k = 0; k < x.size(); ++k)
        if (map[k] >= 0) rhs_[c][map[k]] = x[k][c];
      total += rhs_[c].dot(matrix_[c] * rhs_[c]);
    }
    return total;
  }

 private:
  bool active(std::size_t k, int c) const {
    const NodeClass cl = m_.node_class(k);
    if (cl == NodeClass::Interior) return true;
    if (cl == NodeClass::Equator) return c != 2;
    return false;
  }

  const Mesh& m_;
  std::vector<int> index_[3];
  Eigen::SparseMatrix<double> matrix_[3];
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver_[3];
  Eigen::VectorXd rhs_[3];
};

struct Jump {
  int lower;  // axis rows lower and lower + 1 carry opposite signs
};

std::vector<Jump> axis_jumps(const Field3& u) {
  const Mesh& m = u.mesh();
  std::vector<Jump> out;
  for (int j = 0; j < m.last_free_axis_row(); ++j)
    if ((u.at(0, j)[1] > 0) != (u.at(0, j + 1)[1] > 0)) out.push_back({j});
  return out;
}

// Copies a (K+1)-column window of rows one row up (dir = +1) or down (dir = -1)
// so the sign change at `jump` moves with its surrounding core.
Field3 shifted(const Field3& u, const Jump& jump, int dir, int K) {
  const Mesh& m = u.mesh();
  Field3 out = u;
  const int target = dir > 0 ? jump.lower + 1 : jump.lower;
  const int lo = std::max(1, target - K);
  const int hi = std::min(m.n() - 1, target + K);
  for (int r = lo; r <= hi; ++r) {
    const int src = r - dir;
    if (src < 0 || src > m.n()) continue;
    for (int i = 0; i <= std::min(K, m.n()); ++i) {
      const std::size_t k = m.index(i, r);
      const NodeClass c = m.node_class(k);
      if (c != NodeClass::Interior && c != NodeClass::Axis) continue;
      if (!m.in_disk(m.index(i, src))) continue;
      out[k] = u.at(i, src);
    }
  }
  return out;
}

bool try_axis_moves(Field3& u, double& E, double mu, const ObstacleSpec& obs, bool sector,
                    int threads) {
  const Mesh& m = u.mesh();
  const int top = m.last_free_axis_row();
  bool moved = false;
  for (const Jump& jump : axis_jumps(u)) {
    Field3* best = nullptr;
    Field3 cand_store[2] = {u, u};
    double best_e = E - 1e-12 * std::abs(E);
    int slot = 0;
    for (int dir : {+1, -1}) {
      const int flip = dir > 0 ? jump.lower + 1 : jump.lower;
      if (flip < 1 || flip > top) continue;
      for (int K : {0, 2, 4, 8, 16}) {
        Field3 cand = shifted(u, jump, dir, K);
        project_constraints(cand, obs, sector);
        const double e = energy(cand, mu, threads).total;
        if (e < best_e) {
          best_e = e;
          cand_store[slot] = std::move(cand);
          best = &cand_store[slot];
          slot ^= 1;
        }
      }
    }
    if (best) {
      u = *best;
      E = best_e;
      moved = true;
    }
  }
  return moved;
}

}  // namespace

const char* to_string(Branch b) {
  switch (b) {
    case Branch::Plus: return "plus";
    case Branch::Minus: return "minus";
    case Branch::None: return "none";
  }
  return "?";
}

Branch parse_branch(const std::string& s) {
  if (s == "plus" || s == "PLUS" || s == "+") return Branch::Plus;
  if (s == "minus" || s == "MINUS" || s == "-") return Branch::Minus;
  if (s == "none" || s == "NONE") return Branch::None;
  throw std::invalid_argument("unknown branch '" + s + "'");
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxIterations: return "max_iterations";
    case SolveStatus::LineSearchStalled: return "line_search_stalled";
  }
  return "?";
}

void ObstacleSpec::validate() const {
  if (branch == Branch::Plus && !(bound > -1.0 && bound <= -0.5))
    throw std::invalid_argument("PLUS bound must lie in (-1, -1/2]");
  if (branch == Branch::Minus && !(bound >= -0.5 && bound < 1.0))
    throw std::invalid_argument("MINUS bound must lie in [-1/2, 1)");
}

void SolverConfig::validate() const {
  if (max_iters <= 0) throw std::invalid_argument("max_iters must be positive");
  if (!(c1 > 0 && c1 < 1)) throw std::invalid_argument("c1 must lie in (0,1)");
  if (!(shrink > 0 && shrink < 1)) throw std::invalid_argument("shrink must lie in (0,1)");
  if (!(tau0 > 0)) throw std::invalid_argument("tau0 must be positive");
  if (!(std::abs(seed_amplitude) < 1)) throw std::invalid_argument("|sigma| must be < 1");
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  if (axis_move_interval < 0) throw std::invalid_argument("axis_move_interval must be >= 0");
}

Field3 initial_guess(std::shared_ptr<const Mesh> mesh, Branch branch, double sigma, double mu) {
  if (!(std::abs(sigma) < 1)) throw std::invalid_argument("|sigma| must be < 1");
  Field3 u = hedgehog_field(mesh);
  if (branch == Branch::Minus) sigma = -std::abs(sigma);
  else if (branch == Branch::Plus) sigma = std::abs(sigma);
  if (sigma == 0.0) return u;
  const double lambda = std::max(1.0, std::ceil(0.8 * std::sqrt(mu)));
  const Mesh& m = u.mesh();
  for (std::size_t k = 0; k < m.num_nodes(); ++k) {
    if (!m.is_free(k)) continue;
    const double rho = m.rho(m.col(k)), z = m.z(m.row(k));
    const double g = std::max(1.0 - lambda * std::sqrt(rho * rho + z * z), 0.0);
    if (g == 0.0) continue;
    const Vec3 e2(0.0, g, 0.0);
    const Vec3& v = u[k];
    const Vec3 pert = e2 - e2.dot(v) * v;
    u[k] = (v + sigma * pert).normalized();
  }
  return u;
}

void project_constraints(Field3& u, const ObstacleSpec& obs, bool sector) {
  const Mesh& m = u.mesh();
  for (std::size_t k = 0; k < m.num_nodes(); ++k) {
    const NodeClass c = m.node_class(k);
    Vec3& v = u[k];
    if (c == NodeClass::Equator) {
      const double u2 = clamp_u2(v[1] / std::max(v.norm(), 1e-300), obs);
      v = Vec3(std::sqrt(std::max(0.0, 1.0 - u2 * u2)), u2, 0.0);
    } else if (c == NodeClass::Axis) {
      double s = v[1] < 0 ? -1.0 : 1.0;
      if (m.row(k) == 0 && clamp_u2(s, obs) != s) s = -s;
      v = Vec3(0.0, s, 0.0);
    } else if (c == NodeClass::Interior) {
      if (sector) {
        v[0] = std::abs(v[0]);
        v[2] = std::abs(v[2]);
      }
      v.normalize();
    }
  }
}

double stationarity(const Field3& u, const std::vector<Vec3>& grad, const ObstacleSpec& obs) {
  const Mesh& m = u.mesh();
  double worst = 0.0;
  for (std::size_t k = 0; k < m.num_nodes(); ++k) {
    const NodeClass c = m.node_class(k);
    const Vec3& v = u[k];
    const Vec3& g = grad[k];
    double r = 0.0;
    if (c == NodeClass::Interior) {
      r = (g - g.dot(v) * v).norm();
    } else if (c == NodeClass::Equator) {
      const Vec3 t(-v[1], v[0], 0.0);
      const double gt = g.dot(t);
      bool blocked = false;
      if (obs.branch == Branch::Plus && v[1] <= obs.bound && gt > 0) blocked = true;
      if (obs.branch == Branch::Minus && v[1] >= obs.bound && gt < 0) blocked = true;
      r = blocked ? 0.0 : std::abs(gt);
    } else {
      continue;
    }
    worst = std::max(worst, r / m.node_mass(k));
  }
  return worst;
}

namespace {

// Gradient restricted to the directions the constraints leave free.
void free_gradient(const Field3& u, const std::vector<Vec3>& g, const ObstacleSpec& obs,
                   std::vector<Vec3>& out) {
  const Mesh& m = u.mesh();
  out.assign(m.num_nodes(), Vec3::Zero());
  for (std::size_t k = 0; k < m.num_nodes(); ++k) {
    const NodeClass c = m.node_class(k);
    const Vec3& v = u[k];
    if (c == NodeClass::Interior) {
      out[k] = g[k] - g[k].dot(v) * v;
    } else if (c == NodeClass::Equator) {
      const Vec3 t(-v[1], v[0], 0.0);
      const double gt = g[k].dot(t);
      if (obs.branch == Branch::Plus && v[1] <= obs.bound && gt > 0) continue;
      if (obs.branch == Branch::Minus && v[1] >= obs.bound && gt < 0) continue;
      out[k] = gt * t;
    }
  }
}

void tangential_part(const Field3& u, std::vector<Vec3>& p) {
  const Mesh& m = u.mesh();
  for (std::size_t k = 0; k < m.num_nodes(); ++k) {
    const NodeClass c = m.node_class(k);
    const Vec3& v = u[k];
    if (c == NodeClass::Interior) {
      p[k] -= p[k].dot(v) * v;
    } else if (c == NodeClass::Equator) {
      const Vec3 t(-v[1], v[0], 0.0);
      p[k] = p[k].dot(t) * t;
    } else {
      p[k].setZero();
    }
  }
}

}  // namespace

SolveResult minimize(const Field3& u0, double mu, const ObstacleSpec& obs, const SolverConfig& cfg) {
  obs.validate();
  cfg.validate();
  if (!(mu >= 0)) throw std::invalid_argument("mu must be non-negative");
  const Mesh& m = u0.mesh();
  const std::size_t N = m.num_nodes();
  const double tol = cfg.effective_grad_tol(m.n());
  Preconditioner precond(m, mu);

  SolveResult res{u0, {}, {}, SolveStatus::MaxIterations, 0, 0.0, 0};
  Field3& u = res.field;
  project_constraints(u, obs, cfg.sector_projection);

  std::vector<Vec3> g, g_new, gf, gf_new, p, s_vec(N);
  energy_and_gradient(u, mu, g, cfg.threads);
  free_gradient(u, g, obs, gf);
  double E = energy(u, mu, cfg.threads).total;
  if (!std::isfinite(E)) throw std::runtime_error("non-finite energy");
  double tau = cfg.tau0;
  Field3 trial = u;

  auto refresh = [&] {
    energy_and_gradient(u, mu, g, cfg.threads);
    free_gradient(u, g, obs, gf);
    tau = cfg.tau0;
  };

  int it = 0;
  for (;; ++it) {
    double stat = stationarity(u, g, obs);
    const bool move_due = cfg.axis_move_interval > 0 && it > 0 && it % cfg.axis_move_interval == 0;
    if ((stat < tol || move_due || it >= cfg.max_iters) && cfg.axis_move_interval > 0 &&
        try_axis_moves(u, E, mu, obs, cfg.sector_projection, cfg.threads)) {
      ++res.axis_moves;
      refresh();
      stat = stationarity(u, g, obs);
    }
    res.stationarity = stat;
    res.trace.push_back({it, E, stat, tau});
    if (stat < tol) {
      res.status = SolveStatus::Converged;
      break;
    }
    if (it >= cfg.max_iters) {
      res.status = SolveStatus::MaxIterations;
      break;
    }

    precond.apply(gf, p);
    tangential_part(u, p);
    bool accepted = false;
    double E_new = E;
    while (tau >= 1e-14) {
      for (std::size_t k = 0; k < N; ++k)
        if (m.is_free(k)) trial[k] = (u[k] - tau * p[k]).normalized();
      project_constraints(trial, obs, cfg.sector_projection);
      double predicted = 0.0;
      for (std::size_t k = 0; k < N; ++k) predicted += g[k].dot(trial[k] - u[k]);
      E_new = energy(trial, mu, cfg.threads).total;
      if (!std::isfinite(E_new)) throw std::runtime_error("non-finite energy");
      if (E_new < E && E_new <= E + cfg.c1 * predicted) {
        accepted = true;
        break;
      }
      tau *= cfg.shrink;
    }
    if (!accepted) {
      if (cfg.axis_move_interval > 0 && try_axis_moves(u, E, mu, obs, cfg.sector_projection, cfg.threads)) {
        ++res.axis_moves;
        refresh();
        continue;
      }
      res.status = SolveStatus::LineSearchStalled;
      break;
    }
    energy_and_gradient(trial, mu, g_new, cfg.threads);
    free_gradient(trial, g_new, obs, gf_new);
    // Barzilai-Borwein step length in the metric of the preconditioner.
    double sy = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
      s_vec[k] = trial[k] - u[k];
      sy += s_vec[k].dot(gf_new[k] - gf[k]);
    }
    const double sAs = precond.energy_norm2(s_vec);
    std::swap(u.values(), trial.values());
    std::swap(g, g_new);
    std::swap(gf, gf_new);
    E = E_new;
    tau = (sy > 0) ? std::clamp(sAs / sy, 1e-8, 1e2) : std::min(2 * tau, 1e2);
  }
  res.iterations = it;
  res.energy = energy(u, mu, cfg.threads);
  return res;
}

}  // namespace ldg
