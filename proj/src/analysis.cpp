#include "ldg/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ldg/energy.hpp"

namespace ldg {

namespace {
const double kSqrt3 = std::sqrt(3.0);
}  // namespace

EigenTriple eigenvalues(const Vec3& u) {
  EigenTriple e;
  const double s = u[0] + u[1] / kSqrt3;
  const double d = u[0] - kSqrt3 * u[1];
  e.delta = d * d + 4 * u[2] * u[2];
  const double r = std::sqrt(e.delta);
  e.l1 = -0.5 * s;
  e.l2 = 0.25 * (s - r);
  e.l3 = 0.25 * (s + r);
  return e;
}

const char* to_string(Phase p) { return p == Phase::Uniaxial ? "uniaxial" : "biaxial"; }

const char* to_string(Ordering o) {
  switch (o) {
    case Ordering::None: return "none";
    case Ordering::Ring: return "l3>l2>l1";
    case Ordering::Dumbbell: return "l3>l1>l2";
    case Ordering::Other: return "other";
  }
  return "?";
}

Ordering strict_ordering(const EigenTriple& e) {
  if (e.l3 > e.l2 && e.l2 > e.l1) return Ordering::Ring;
  if (e.l3 > e.l1 && e.l1 > e.l2) return Ordering::Dumbbell;
  if (e.l1 > e.l3 && e.l3 > e.l2) return Ordering::Other;
  return Ordering::None;
}

PhaseInfo classify_phase(const Vec3& u, double tol) {
  const EigenTriple e = eigenvalues(u);
  const double gap = std::min({std::abs(e.l1 - e.l2), std::abs(e.l1 - e.l3), std::abs(e.l2 - e.l3)});
  if (gap <= tol) return {Phase::Uniaxial, Ordering::None, gap};
  return {Phase::Biaxial, strict_ordering(e), gap};
}

Vec2 director_kappa(const Vec3& u) {
  const double d = u[0] - kSqrt3 * u[1];
  const double delta = d * d + 4 * u[2] * u[2];
  if (!(delta > 0)) throw std::domain_error("director undefined where Delta = 0");
  const double r = std::sqrt(delta);
  const double q = 4 * u[2] * u[2];
  // 1 + a and 1 - a with a = d / sqrt(Delta), avoiding cancellation
  const double one_plus = d >= 0 ? 1 + d / r : q / (r * (r - d));
  const double one_minus = d <= 0 ? 1 - d / r : q / (r * (r + d));
  const double sign = u[2] < 0 ? -1.0 : 1.0;
  return Vec2(std::sqrt(0.5 * one_plus), sign * std::sqrt(0.5 * one_minus));
}

Vec3 sample_field(const Field3& u, double rho, double z) {
  const Mesh& m = u.mesh();
  const double h = m.h();
  const bool lower = z < 0;
  const double az = std::abs(z);
  if (rho < 0 || rho > 1 + 1e-12 || az > 1 + 1e-12) throw std::invalid_argument("sample point outside [0,1]^2");
  const int i = std::clamp(static_cast<int>(std::floor(rho / h)), 0, m.n() - 1);
  const int j = std::clamp(static_cast<int>(std::floor(az / h)), 0, m.n() - 1);
  const double tx = rho / h - i, ty = az / h - j;
  Vec3 v = (1 - tx) * (1 - ty) * u.at(i, j) + tx * (1 - ty) * u.at(i + 1, j) +
           (1 - tx) * ty * u.at(i, j + 1) + tx * ty * u.at(i + 1, j + 1);
  if (lower) v[2] = -v[2];
  const double nv = v.norm();
  return nv > 0 ? Vec3(v / nv) : v;
}

const char* to_string(TangentLabel l) {
  return l == TangentLabel::LambdaPlus ? "Lambda+" : "Lambda-";
}

namespace {

// Lambda+ is (0, cos phi, sin phi) with phi measured from the +z direction at
// the singularity; Lambda- flips u2.
double tangent_l2(const Field3& u, const AxisSingularity& s) {
  const Mesh& m = u.mesh();
  const double R = 8 * m.h(), z0 = s.z();
  const double sign = s.label == TangentLabel::LambdaPlus ? 1.0 : -1.0;
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < m.num_nodes(); ++k) {
    const double w = m.node_mass(k);
    const double rho = m.rho(m.col(k)), dz = m.z(m.row(k)) - z0;
    if (w == 0.0 || std::hypot(rho, dz) > R) continue;
    const double phi = std::atan2(rho, dz);
    num += w * (u[k] - Vec3(0, sign * std::cos(phi), std::sin(phi))).squaredNorm();
    den += w;
  }
  return den > 0 ? std::sqrt(num / den) : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

AxisScan detect_axis_singularities(const Field3& u) {
  const Mesh& m = u.mesh();
  AxisScan scan;
  int top = 0;
  while (top + 1 <= m.n() && m.in_disk(m.index(0, top + 1))) ++top;
  int weak_run = 0;
  for (int j = 0; j <= top; ++j) {
    const double u2 = u.at(0, j)[1];
    weak_run = std::abs(u2) < 0.5 ? weak_run + 1 : 0;
    if (weak_run > 3) scan.resolution_warning = true;
    if (j == top) break;
    const double next = u.at(0, j + 1)[1];
    if ((u2 > 0) != (next > 0)) {
      const TangentLabel label = next > 0 ? TangentLabel::LambdaPlus : TangentLabel::LambdaMinus;
      scan.singularities.push_back({m.z(j), m.z(j + 1), label});
    }
  }
  for (auto& s : scan.singularities) s.tangent_l2 = tangent_l2(u, s);
  for (std::size_t k = 1; k < scan.singularities.size(); ++k)
    if (scan.singularities[k].label == scan.singularities[k - 1].label) scan.alternating = false;
  return scan;
}

std::vector<double> equator_half_crossings(const Field3& u) {
  const Mesh& m = u.mesh();
  std::vector<double> out;
  for (int i = 0; i < m.n(); ++i) {
    if (!m.in_disk(m.index(i + 1, 0))) break;
    const double a = u.at(i, 0)[1], b = u.at(i + 1, 0)[1];
    if (a > 0.5 && b <= 0.5) out.push_back(m.rho(i) + m.h() * (a - 0.5) / (a - b));
  }
  return out;
}

double director_winding(const Field3& u, double rho_c, double z_c, double radius, int samples) {
  const double two_pi = 2 * std::numbers::pi;
  if (rho_c - radius <= 0 || std::hypot(rho_c + radius, std::abs(z_c) + radius) >= 1.0)
    throw std::invalid_argument("winding loop touches the domain boundary");
  double total = 0.0;
  double prev = 0.0;
  for (int k = 0; k <= samples; ++k) {
    const double t = two_pi * k / samples;
    const Vec2 kap = director_kappa(sample_field(u, rho_c + radius * std::cos(t), z_c + radius * std::sin(t)));
    const double ang = std::atan2(kap[1], kap[0]);
    if (k > 0) {
      double d = ang - prev;
      d -= std::numbers::pi * std::round(d / std::numbers::pi);
      total += d;
    }
    prev = ang;
  }
  return total / two_pi;
}

std::optional<RingInfo> detect_ring(const Field3& u) {
  const auto crossings = equator_half_crossings(u);
  if (crossings.empty()) return std::nullopt;
  const Mesh& m = u.mesh();
  const double h = m.h();
  RingInfo info;
  info.rho0 = crossings.back();
  for (std::size_t k = 0; k < m.num_nodes(); ++k) {
    if (!m.in_disk(k)) continue;
    const double d = std::hypot(m.rho(m.col(k)) - info.rho0, m.z(m.row(k)));
    if (d <= 0.5 * h || d > 4 * h) continue;
    ++info.disk_nodes;
    if (strict_ordering(eigenvalues(u[k])) != Ordering::Ring) ++info.violations;
  }
  info.violation_fraction = info.disk_nodes ? double(info.violations) / info.disk_nodes : 1.0;
  info.ordering_ok = info.disk_nodes > 0 && info.violation_fraction < 0.05;
  info.winding_half_turns = director_winding(u, info.rho0, 0.0, 8 * h);
  return info;
}

DumbbellStats classify_dumbbell(const Field3& u, const DefectReport& report) {
  if (report.axis.singularities.empty()) throw std::invalid_argument("dumbbell needs an axis singularity");
  const Mesh& m = u.mesh();
  const double h = m.h();
  DumbbellStats st;
  st.z0 = report.axis.singularities.front().z();
  st.delta = 6 * h;
  const double eps1 = 2 * h;
  st.half_width = std::sqrt(eps1 * (2 * st.delta - eps1));
  const double rect_top = st.z0 - st.delta + eps1;
  auto inside = [&](double rho, double z) {
    const double az = std::abs(z);
    if (std::hypot(rho, az - st.z0) <= st.delta) return true;
    return rho <= st.half_width && az <= rect_top;
  };
  for (std::size_t k = 0; k < m.num_nodes(); ++k) {
    if (!m.in_disk(k)) continue;
    const double rho = m.rho(m.col(k)), z = m.z(m.row(k));
    if (rho <= 0.5 * h || !inside(rho, z)) continue;
    ++st.nodes;
    if (strict_ordering(eigenvalues(u[k])) != Ordering::Dumbbell) ++st.violations;
  }
  st.violation_fraction = st.nodes ? double(st.violations) / st.nodes : 1.0;
  st.ordering_ok = st.nodes > 0 && st.violation_fraction < 0.05;

  // Right boundary of the dumbbell, bottom to top.
  auto right_edge = [&](double z) {
    const double az = std::abs(z);
    double r = 0.0;
    const double dz = az - st.z0;
    if (std::abs(dz) <= st.delta) r = std::sqrt(st.delta * st.delta - dz * dz);
    if (az <= rect_top) r = std::max(r, st.half_width);
    return r;
  };
  const int samples = 400;
  const double zmax = st.z0 + st.delta;
  for (int k = 0; k <= samples; ++k) {
    const double z = -zmax + 2 * zmax * k / samples;
    const double rho = right_edge(z);
    if (rho < 0.5 * h) continue;
    try {
      st.contour.push_back({rho, z, director_kappa(sample_field(u, rho, z))});
    } catch (const std::domain_error&) {
    }
  }
  // Sign of the e_z component must run -, (0), + without going back.
  bool ok = !st.contour.empty();
  int last_sign = -2;
  for (const auto& c : st.contour) {
    const int sgn = std::abs(c.kappa[1]) < 1e-12 ? 0 : (c.kappa[1] > 0 ? 1 : -1);
    if (sgn < last_sign) ok = false;
    last_sign = std::max(last_sign, sgn);
  }
  if (ok) {
    ok = st.contour.front().kappa[1] < 0 && st.contour.back().kappa[1] > 0;
    // passes through e_rho where it crosses the equator
    double best = 2.0;
    Vec2 mid(0, 0);
    for (const auto& c : st.contour)
      if (std::abs(c.z) < best) {
        best = std::abs(c.z);
        mid = c.kappa;
      }
    ok = ok && mid[0] > 0.9;
  }
  st.contour_ok = ok;
  return st;
}

DefectReport analyze_defects(const Field3& u) {
  DefectReport rep;
  rep.axis = detect_axis_singularities(u);
  rep.half_crossings = equator_half_crossings(u);
  try {
    rep.ring = detect_ring(u);
  } catch (const std::exception& e) {
    rep.notes.push_back(std::string("ring: ") + e.what());
  }
  if (!rep.axis.singularities.empty()) {
    try {
      rep.dumbbell = classify_dumbbell(u, rep);
    } catch (const std::exception& e) {
      rep.notes.push_back(std::string("dumbbell: ") + e.what());
    }
  }
  if (rep.axis.resolution_warning) rep.notes.push_back("axis: unresolved sign change");
  return rep;
}

double hedgehog_distance(const Field3& u) {
  const Mesh& m = u.mesh();
  double sum = 0.0;
  for (std::size_t k = 0; k < m.num_nodes(); ++k) {
    if (m.node_mass(k) == 0.0) continue;
    const Vec3 d = u[k] - hedgehog_U_star(m.rho(m.col(k)), m.z(m.row(k)));
    sum += m.node_mass(k) * d.squaredNorm();
  }
  return std::sqrt(full_ball_factor() * sum);
}

Vec3 reduced_map_u_from_v(const Vec2& v) {
  return Vec3(0.25 * kSqrt3 * (1 - v[0]), 0.25 * (1 + 3 * v[0]), 0.5 * kSqrt3 * v[1]);
}

Field3 reduced_map_field(const Field2& v) {
  Field3 u(v.mesh);
  for (std::size_t k = 0; k < u.size(); ++k) u[k] = reduced_map_u_from_v(v.values[k]);
  return u;
}

double reduced_energy_F(const Field2& v) {
  if (!v.mesh || v.values.size() != v.mesh->num_nodes()) throw std::invalid_argument("field/mesh mismatch");
  const Mesh& m = *v.mesh;
  const int side = m.side();
  double dir = 0.0, sing = 0.0;
  for (int j = 0; j < side; ++j)
    for (int i = 0; i < side; ++i) {
      const std::size_t k = m.index(i, j);
      if (m.node_mass(k) == 0.0) continue;
      const Vec2& a = v.values[k];
      if (i < side - 1) dir += m.edge_rho(k) * (v.values[k + 1] - a).squaredNorm();
      if (j < side - 1) dir += m.edge_z(k) * (v.values[k + side] - a).squaredNorm();
      sing += m.singular_weight(k) * 2 * (1 - a[0]);
    }
  return 2 * std::numbers::pi * (dir + sing);
}

}  // namespace ldg
