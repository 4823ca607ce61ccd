#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ldg/fields.hpp"

namespace ldg {

using Vec2 = Eigen::Vector2d;

struct EigenTriple {
  double l1 = 0, l2 = 0, l3 = 0;
  double delta = 0;  // (u1 - sqrt3 u2)^2 + 4 u3^2
};

EigenTriple eigenvalues(const Vec3& u);

enum class Phase { Uniaxial, Biaxial };
// Ring: l3 > l2 > l1. Dumbbell: l3 > l1 > l2. Other: any remaining strict order.
enum class Ordering { None, Ring, Dumbbell, Other };

struct PhaseInfo {
  Phase phase;
  Ordering ordering;
  double min_gap;
};

const char* to_string(Phase p);
const char* to_string(Ordering o);

PhaseInfo classify_phase(const Vec3& u, double tol = 1e-6);
Ordering strict_ordering(const EigenTriple& e);

// Unit eigenvector of l3 as (e_rho, e_z) coefficients.
Vec2 director_kappa(const Vec3& u);

// Bilinear interpolation of the nodal field, renormalized. Points with z < 0
// use the reflection u3 -> -u3.
Vec3 sample_field(const Field3& u, double rho, double z);

enum class TangentLabel { LambdaPlus, LambdaMinus };
const char* to_string(TangentLabel l);

struct AxisSingularity {
  double z_low;
  double z_high;
  TangentLabel label;
  // RMS of u - Lambda(label) over nodes within 8h of (0, z()); NaN if none.
  double tangent_l2 = std::numeric_limits<double>::quiet_NaN();
  double z() const { return 0.5 * (z_low + z_high); }
};

struct AxisScan {
  std::vector<AxisSingularity> singularities;
  bool alternating = true;
  bool resolution_warning = false;
};

AxisScan detect_axis_singularities(const Field3& u);

struct RingInfo {
  double rho0 = 0;
  std::size_t disk_nodes = 0;
  std::size_t violations = 0;
  double violation_fraction = 0;
  bool ordering_ok = false;
  double winding_half_turns = 0;
};

// Equator points where u2 passes from above 1/2 to at most 1/2, left to right.
std::vector<double> equator_half_crossings(const Field3& u);
std::optional<RingInfo> detect_ring(const Field3& u);
// Line-field rotation of the director around a circle, total angle / (2 pi).
double director_winding(const Field3& u, double rho_c, double z_c, double radius, int samples = 512);

struct ContourSample {
  double rho, z;
  Vec2 kappa;
};

struct DumbbellStats {
  double z0 = 0;
  double delta = 0;
  double half_width = 0;
  std::size_t nodes = 0;
  std::size_t violations = 0;
  double violation_fraction = 0;
  bool ordering_ok = false;
  std::vector<ContourSample> contour;
  bool contour_ok = false;
};

struct DefectReport {
  AxisScan axis;
  std::vector<double> half_crossings;
  std::optional<RingInfo> ring;
  std::optional<DumbbellStats> dumbbell;
  std::vector<std::string> notes;

  std::size_t singularity_count() const { return axis.singularities.size(); }
  std::string parity() const { return singularity_count() % 2 == 0 ? "even" : "odd"; }
};

// Dumbbell from two disks of radius 6h around the lowest axis singularity and
// its mirror, joined by the rectangle of half-width sqrt(e1 (2 delta - e1)),
// e1 = 2h.
DumbbellStats classify_dumbbell(const Field3& u, const DefectReport& report);

DefectReport analyze_defects(const Field3& u);

// L2(B_1) distance between L[u] and L[U*].
double hedgehog_distance(const Field3& u);

// Two-component fields for the reduced functional.
struct Field2 {
  std::shared_ptr<const Mesh> mesh;
  std::vector<Vec2> values;
};

Vec3 reduced_map_u_from_v(const Vec2& v);
Field3 reduced_map_field(const Field2& v);
// F[v] over the upper half ball, by the same quadrature as energy().
double reduced_energy_F(const Field2& v);

}  // namespace ldg
