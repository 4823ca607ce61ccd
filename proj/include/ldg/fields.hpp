#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "ldg/mesh.hpp"

namespace ldg {

using Vec3 = Eigen::Vector3d;
using Vec5 = Eigen::Matrix<double, 5, 1>;
using QTensor = Eigen::Matrix3d;

// Nodal S^2-valued field on a mesh. Outside nodes carry the 0-homogeneous
// extension of the boundary data so that cut cells have four corner values.
class Field3 {
 public:
  explicit Field3(std::shared_ptr<const Mesh> mesh);

  const Mesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const Mesh>& mesh_ptr() const { return mesh_; }
  std::size_t size() const { return values_.size(); }

  Vec3& operator[](std::size_t k) { return values_[k]; }
  const Vec3& operator[](std::size_t k) const { return values_[k]; }
  Vec3& at(int i, int j) { return values_[mesh_->index(i, j)]; }
  const Vec3& at(int i, int j) const { return values_[mesh_->index(i, j)]; }
  std::vector<Vec3>& values() { return values_; }
  const std::vector<Vec3>& values() const { return values_; }

 private:
  std::shared_ptr<const Mesh> mesh_;
  std::vector<Vec3> values_;
};

Vec3 hedgehog_U_star(double rho, double z);
// U* at every node (the Dirichlet data on the arc).
Field3 hedgehog_field(std::shared_ptr<const Mesh> mesh);
// Constant value on every node, including the Dirichlet layer.
Field3 constant_field(std::shared_ptr<const Mesh> mesh, const Vec3& value);

Vec5 augment_L(const Vec3& u, double theta);
QTensor q_from_u(const Vec3& u, double rho, double z, double theta);

double potential_P(const Vec3& v);
Vec3 grad_P(const Vec3& v);
double potential_S(const Vec5& w);
double potential_F_a(const Vec3& v, double a);
double compute_D_a(double a);
double H_plus(double a);

}  // namespace ldg
