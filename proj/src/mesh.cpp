#include "ldg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ldg {

namespace {

constexpr double kGeomTol = 1e-12;
constexpr std::array<double, 3> kEven{1.0, 1.0, 1.0};
constexpr std::array<double, 3> kReflect{1.0, 1.0, -1.0};

double slab_integral(double c, double a, double b) {
  // integral over [a,b] of (c - z^2)
  return c * (b - a) - (b * b * b - a * a * a) / 3.0;
}

}  // namespace

const char* to_string(NodeClass c) {
  switch (c) {
    case NodeClass::Interior: return "interior";
    case NodeClass::Axis: return "axis";
    case NodeClass::Equator: return "equator";
    case NodeClass::Arc: return "arc";
    case NodeClass::Outside: return "outside";
  }
  return "?";
}

double clipped_cell_weight(double rho0, double rho1, double z0, double z1, double R) {
  const double R2 = R * R;
  if (R2 <= rho0 * rho0) return 0.0;
  const double za = std::sqrt(std::max(0.0, R2 - rho1 * rho1));
  const double zb = std::sqrt(R2 - rho0 * rho0);
  double total = 0.0;
  // full-width part
  const double f_hi = std::min(z1, za);
  if (f_hi > z0) total += 0.5 * (rho1 * rho1 - rho0 * rho0) * (f_hi - z0);
  // part where the circle cuts the cell
  const double c_lo = std::max(z0, za);
  const double c_hi = std::min(z1, zb);
  if (c_hi > c_lo) total += 0.5 * slab_integral(R2 - rho0 * rho0, c_lo, c_hi);
  return total;
}

Mesh::Mesh(int n) : n_(n), h_(1.0 / n) {
  if (n < 8) throw std::invalid_argument("mesh requires n >= 8");
  const int s = side();
  node_class_.assign(num_nodes(), NodeClass::Outside);
  const double arc_r2 = (1.0 - h_) * (1.0 - h_);
  for (int j = 0; j < s; ++j) {
    for (int i = 0; i < s; ++i) {
      const double r2 = rho(i) * rho(i) + z(j) * z(j);
      NodeClass c;
      if (r2 > 1.0 + kGeomTol) c = NodeClass::Outside;
      else if (r2 >= arc_r2 - kGeomTol) c = NodeClass::Arc;
      else if (i == 0) c = NodeClass::Axis;
      else if (j == 0) c = NodeClass::Equator;
      else c = NodeClass::Interior;
      node_class_[index(i, j)] = c;
      if (c == NodeClass::Axis) last_axis_row_ = j;
    }
  }
  cell_weights_.assign(static_cast<std::size_t>(n) * n, 0.0);
  node_mass_.assign(num_nodes(), 0.0);
  edge_rho_.assign(num_nodes(), 0.0);
  edge_z_.assign(num_nodes(), 0.0);
  singular_weight_.assign(num_nodes(), 0.0);
  const double h2 = h_ * h_;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double w = clipped_cell_weight(rho(i), rho(i + 1), z(j), z(j + 1), 1.0);
      cell_weights_[static_cast<std::size_t>(j) * n + i] = w;
      for (int dj = 0; dj < 2; ++dj)
        for (int di = 0; di < 2; ++di) {
          node_mass_[index(i + di, j + dj)] += 0.25 * w;
          singular_weight_[index(i + di, j + dj)] += 0.25 * w / (rho_center(i) * rho_center(i));
        }
      edge_rho_[index(i, j)] += 0.5 * w / h2;
      edge_rho_[index(i, j + 1)] += 0.5 * w / h2;
      edge_z_[index(i, j)] += 0.5 * w / h2;
      edge_z_[index(i + 1, j)] += 0.5 * w / h2;
    }
  }
}

std::shared_ptr<const Mesh> build_mesh(int n) { return std::make_shared<const Mesh>(n); }

Stencil gradient_stencil(const Mesh& mesh, std::size_t node) {
  if (node >= mesh.num_nodes()) throw std::invalid_argument("node index out of range");
  if (!mesh.in_disk(node)) throw std::invalid_argument("no stencil for an outside node");
  const int i = mesh.col(node);
  const int j = mesh.row(node);
  const int n = mesh.n();
  const double h = mesh.h();
  Stencil s;

  auto build = [&](int pos, auto at, std::vector<StencilEntry>& first,
                   std::vector<StencilEntry>& second) {
    const std::size_t self = at(pos);
    if (pos == 0) {
      // ghost = reflection of the neighbor at +1
      const std::size_t up = at(1);
      first = {{up, 0.5 / h, kEven}, {up, -0.5 / h, kReflect}};
      second = {{up, 1.0 / (h * h), kEven}, {self, -2.0 / (h * h), kEven},
                {up, 1.0 / (h * h), kReflect}};
    } else if (pos == n) {
      first = {{self, 1.0 / h, kEven}, {at(n - 1), -1.0 / h, kEven}};
      second = {{self, 1.0 / (h * h), kEven}, {at(n - 1), -2.0 / (h * h), kEven},
                {at(n - 2), 1.0 / (h * h), kEven}};
    } else {
      first = {{at(pos + 1), 0.5 / h, kEven}, {at(pos - 1), -0.5 / h, kEven}};
      second = {{at(pos + 1), 1.0 / (h * h), kEven}, {self, -2.0 / (h * h), kEven},
                {at(pos - 1), 1.0 / (h * h), kEven}};
    }
  };
  build(i, [&](int p) { return mesh.index(p, j); }, s.d_rho, s.d_rho_rho);
  build(j, [&](int p) { return mesh.index(i, p); }, s.d_z, s.d_z_z);
  return s;
}

}  // namespace ldg
