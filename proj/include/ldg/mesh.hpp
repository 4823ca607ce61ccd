#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

namespace ldg {

enum class NodeClass : std::uint8_t { Interior, Axis, Equator, Arc, Outside };

const char* to_string(NodeClass c);

// Uniform grid on [0,1]x[0,1] in (rho, z) covering the upper quarter disk.
// Node (i, j) sits at rho = i*h, z = j*h; cell (i, j) has node (i, j) as its
// lower-left corner.
class Mesh {
 public:
  explicit Mesh(int n);

  int n() const { return n_; }
  double h() const { return h_; }
  int side() const { return n_ + 1; }
  std::size_t num_nodes() const { return static_cast<std::size_t>(side()) * side(); }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * side() + i; }
  int col(std::size_t k) const { return static_cast<int>(k % side()); }
  int row(std::size_t k) const { return static_cast<int>(k / side()); }
  double rho(int i) const { return i * h_; }
  double z(int j) const { return j * h_; }

  NodeClass node_class(std::size_t k) const { return node_class_[k]; }
  NodeClass node_class(int i, int j) const { return node_class_[index(i, j)]; }
  bool in_disk(std::size_t k) const { return node_class_[k] != NodeClass::Outside; }
  // Nodes whose values the optimizer may change.
  bool is_free(std::size_t k) const {
    auto c = node_class_[k];
    return c == NodeClass::Interior || c == NodeClass::Axis || c == NodeClass::Equator;
  }

  // Exact integral of rho over cell (i, j) clipped to the unit disk.
  double cell_weight(int i, int j) const { return cell_weights_[static_cast<std::size_t>(j) * n_ + i]; }
  const std::vector<double>& cell_weights() const { return cell_weights_; }
  double rho_center(int i) const { return (i + 0.5) * h_; }
  // Lumped mass: a quarter of the weight of every adjacent cell.
  double node_mass(std::size_t k) const { return node_mass_[k]; }
  // Highest axis row that is not part of the Dirichlet layer.
  int last_free_axis_row() const { return last_axis_row_; }

  // Node and edge coefficients of the cell quadrature, regrouped:
  //   sum_cells w (|du|^2 terms)/(2h^2) = sum_edges edge_weight * |u_a - u_b|^2
  //   sum_cells w avg(f)/rho_c^2      = sum_nodes singular_weight * f
  // edge_rho(k) couples node k to k+1, edge_z(k) couples k to k+side().
  double edge_rho(std::size_t k) const { return edge_rho_[k]; }
  double edge_z(std::size_t k) const { return edge_z_[k]; }
  double singular_weight(std::size_t k) const { return singular_weight_[k]; }

 private:
  int n_;
  double h_;
  std::vector<NodeClass> node_class_;
  std::vector<double> cell_weights_;
  std::vector<double> node_mass_;
  std::vector<double> edge_rho_;
  std::vector<double> edge_z_;
  std::vector<double> singular_weight_;
  int last_axis_row_ = 0;
};

std::shared_ptr<const Mesh> build_mesh(int n);

// Integral of rho over [rho0,rho1]x[z0,z1] intersected with the disk of radius R.
// Requires rho0 >= 0 and z0 >= 0.
double clipped_cell_weight(double rho0, double rho1, double z0, double z1, double R);

// One term of a difference formula. The value used is
// coeff * parity[c] * u(node)[c]; parity carries reflections across z = 0 or
// rho = 0 (components 1, 2 even, component 3 odd).
struct StencilEntry {
  std::size_t node;
  double coeff;
  std::array<double, 3> parity;
};

struct Stencil {
  std::vector<StencilEntry> d_rho;
  std::vector<StencilEntry> d_z;
  std::vector<StencilEntry> d_rho_rho;
  std::vector<StencilEntry> d_z_z;
};

Stencil gradient_stencil(const Mesh& mesh, std::size_t node);

}  // namespace ldg
