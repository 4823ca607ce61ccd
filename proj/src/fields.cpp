#include "ldg/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace ldg {

namespace {
const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);
}  // namespace

Field3::Field3(std::shared_ptr<const Mesh> mesh) : mesh_(std::move(mesh)) {
  if (!mesh_) throw std::invalid_argument("field needs a mesh");
  values_.assign(mesh_->num_nodes(), Vec3::Zero());
}

Vec3 hedgehog_U_star(double rho, double z) {
  const double r2 = rho * rho + z * z;
  if (r2 == 0.0) return Vec3(0.0, 1.0, 0.0);
  return Vec3(0.5 * kSqrt3 * rho * rho / r2, 1.5 * (z * z / r2 - 1.0 / 3.0), kSqrt3 * rho * z / r2);
}

Field3 hedgehog_field(std::shared_ptr<const Mesh> mesh) {
  Field3 u(std::move(mesh));
  const Mesh& m = u.mesh();
  for (int j = 0; j < m.side(); ++j)
    for (int i = 0; i < m.side(); ++i) u.at(i, j) = hedgehog_U_star(m.rho(i), m.z(j));
  return u;
}

Field3 constant_field(std::shared_ptr<const Mesh> mesh, const Vec3& value) {
  Field3 u(std::move(mesh));
  for (auto& v : u.values()) v = value;
  return u;
}

Vec5 augment_L(const Vec3& u, double theta) {
  Vec5 w;
  w << u[0] * std::cos(2 * theta), u[0] * std::sin(2 * theta), u[1], u[2] * std::cos(theta),
      u[2] * std::sin(theta);
  return w;
}

QTensor q_from_u(const Vec3& u, double rho, double z, double theta) {
  (void)z;
  const Eigen::Vector3d ez(0, 0, 1);
  QTensor q = 0.5 * kSqrt3 * u[1] * (ez * ez.transpose() - Eigen::Matrix3d::Identity() / 3.0);
  if (rho == 0.0) {
    if (std::abs(u[0]) > 1e-14 || std::abs(u[2]) > 1e-14)
      throw std::invalid_argument("axis point requires u1 = u3 = 0");
    return q;
  }
  const Eigen::Vector3d er(std::cos(theta), std::sin(theta), 0);
  Eigen::Matrix3d i2 = Eigen::Matrix3d::Zero();
  i2(0, 0) = i2(1, 1) = 1.0;
  q += u[0] * (er * er.transpose() - 0.5 * i2);
  q += 0.5 * u[2] * (er * ez.transpose() + ez * er.transpose());
  return q;
}

double potential_P(const Vec3& v) {
  const double v1 = v[0], v2 = v[1], v3 = v[2];
  return -v2 * v1 * v1 + 0.5 * kSqrt3 * v1 * v3 * v3 + v2 * v2 * v2 / 3.0 + 0.5 * v2 * v3 * v3;
}

Vec3 grad_P(const Vec3& v) {
  const double v1 = v[0], v2 = v[1], v3 = v[2];
  return Vec3(-2 * v1 * v2 + 0.5 * kSqrt3 * v3 * v3, -v1 * v1 + v2 * v2 + 0.5 * v3 * v3,
              kSqrt3 * v1 * v3 + v2 * v3);
}

double potential_S(const Vec5& w) {
  return -w[2] * (w[0] * w[0] + w[1] * w[1]) + kSqrt3 * w[1] * w[3] * w[4] +
         0.5 * w[2] * (w[3] * w[3] + w[4] * w[4]) + w[2] * w[2] * w[2] / 3.0 +
         0.5 * kSqrt3 * w[0] * (w[3] * w[3] - w[4] * w[4]);
}

double H_plus(double a) { return (3.0 + std::sqrt(9.0 + 8.0 * a * a)) / 4.0; }

namespace {

// -3 sqrt2 a P + (a^2/2)(|v|^2-1)^2 restricted to v = t (0,1,0)
double ray_profile(double t, double a) {
  const double s = t * t - 1.0;
  return -kSqrt2 * a * t * t * t + 0.5 * a * a * s * s;
}

}  // namespace

double compute_D_a(double a) {
  if (!(a > 0.0)) throw std::invalid_argument("D_a requires a > 0");
  double hi = 1.0;
  while (ray_profile(2 * hi, a) < ray_profile(hi, a)) hi *= 2;
  double lo = 0.0;
  hi *= 2;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = ray_profile(x1, a), f2 = ray_profile(x2, a);
  for (int it = 0; it < 200 && hi - lo > 1e-12 * (1.0 + hi); ++it) {
    if (f1 < f2) {
      hi = x2; x2 = x1; f2 = f1;
      x1 = hi - g * (hi - lo); f1 = ray_profile(x1, a);
    } else {
      lo = x1; x1 = x2; f1 = f2;
      x2 = lo + g * (hi - lo); f2 = ray_profile(x2, a);
    }
  }
  double t = 0.5 * (lo + hi);
  for (int it = 0; it < 5; ++it) {
    const double d1 = -3 * kSqrt2 * a * t * t + 2 * a * a * t * (t * t - 1);
    const double d2 = -6 * kSqrt2 * a * t + 2 * a * a * (3 * t * t - 1);
    if (d2 <= 0) break;
    t -= d1 / d2;
  }
  return -ray_profile(t, a);
}

double potential_F_a(const Vec3& v, double a) {
  if (!(a > 0.0)) throw std::invalid_argument("F_a requires a > 0");
  const double s = v.squaredNorm() - 1.0;
  return compute_D_a(a) - 3 * kSqrt2 * a * potential_P(v) + 0.5 * a * a * s * s;
}

}  // namespace ldg
