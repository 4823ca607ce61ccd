#pragma once

#include <vector>

#include "ldg/fields.hpp"

namespace ldg {

// Totals over the full ball: quarter-disk sums times 2 (z-parity) times 2*pi.
struct EnergyReport {
  double dirichlet = 0.0;
  double singular = 0.0;
  double potential = 0.0;
  double total = 0.0;
};

// 2 (z-parity) * 2 pi (azimuth).
double full_ball_factor();

EnergyReport energy(const Field3& u, double mu, int threads = 1);

// Exact gradient of energy(u, mu).total with respect to nodal values.
// Entries at arc and outside nodes are zero.
std::vector<Vec3> energy_gradient(const Field3& u, double mu, int threads = 1);

// Returns energy(u, mu).total and writes the gradient into grad.
double energy_and_gradient(const Field3& u, double mu, std::vector<Vec3>& grad, int threads = 1);

// r^-1 times the reduced-unit integral over the upper quarter disk of radius r
// (no azimuthal factor). At r = 1 this equals energy(u, mu).total / (4 pi).
double localized_energy(const Field3& u, double mu, double r);

struct ResidualReport {
  double max = 0.0;
  double l2 = 0.0;
  std::size_t nodes = 0;
  std::vector<double> pointwise;  // NaN where not evaluated
};

// Tangential residual of the strong Euler-Lagrange system on interior nodes
// with rho > 4h and rho^2 + z^2 >= min_radius^2.
ResidualReport euler_lagrange_residual(const Field3& u, double mu, double min_radius = 0.0);

}  // namespace ldg
