#pragma once

#include <string>
#include <vector>

#include "ldg/energy.hpp"
#include "ldg/fields.hpp"

namespace ldg {

enum class Branch { Plus, Minus, None };

const char* to_string(Branch b);
Branch parse_branch(const std::string& s);

// PLUS: u2 >= bound on the equator, bound in (-1, -1/2].
// MINUS: u2 <= bound on the equator, bound in [-1/2, 1).
struct ObstacleSpec {
  Branch branch = Branch::None;
  double bound = 0.0;

  void validate() const;
};

struct SolverConfig {
  int max_iters = 200000;
  double grad_tol = 0.0;  // <= 0 selects 1e-5 * n
  double c1 = 1e-4;
  double shrink = 0.5;
  double tau0 = 1.0;
  bool sector_projection = true;
  double seed_amplitude = 0.3;
  int threads = 1;
  // Every this many iterations, try to translate axis sign changes by whole
  // grid rows (0 disables).
  int axis_move_interval = 25;

  void validate() const;
  double effective_grad_tol(int n) const { return grad_tol > 0 ? grad_tol : 1e-5 * n; }
};

enum class SolveStatus { Converged, MaxIterations, LineSearchStalled };

const char* to_string(SolveStatus s);

struct TraceEntry {
  int iteration;
  double energy;
  double stationarity;
  double step;
};

struct SolveResult {
  Field3 field;
  EnergyReport energy;
  std::vector<TraceEntry> trace;
  SolveStatus status = SolveStatus::MaxIterations;
  int iterations = 0;
  double stationarity = 0.0;
  int axis_moves = 0;
};

// normalize(U* + sigma * tangential part of (0, g(r), 0)) on free nodes, with
// g(r) = max(1 - lambda r, 0) and lambda = ceil(0.8 sqrt(mu)). Dirichlet and
// outside nodes keep U*.
Field3 initial_guess(std::shared_ptr<const Mesh> mesh, Branch branch, double sigma, double mu);

void project_constraints(Field3& u, const ObstacleSpec& obs, bool sector);

// Largest tangential gradient over free directions, divided by the nodal mass.
double stationarity(const Field3& u, const std::vector<Vec3>& grad, const ObstacleSpec& obs);

SolveResult minimize(const Field3& u0, double mu, const ObstacleSpec& obs, const SolverConfig& cfg);

}  // namespace ldg
