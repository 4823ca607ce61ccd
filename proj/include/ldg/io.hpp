#pragma once

#include <iosfwd>
#include <string>

#include "ldg/analysis.hpp"
#include "ldg/energy.hpp"
#include "ldg/optimizer.hpp"

namespace ldg {

constexpr int kSchemaVersion = 1;

struct RunInfo {
  std::string run_id;
  int n = 0;
  double mu = 0.0;
  ObstacleSpec obstacle;
  SolveStatus status = SolveStatus::Converged;
  int iterations = 0;
  double stationarity = 0.0;
  int axis_moves = 0;
  double hedgehog_distance = 0.0;
};

void write_energy_report(std::ostream& os, const EnergyReport& e, const RunInfo& info);
void write_defect_report(std::ostream& os, const DefectReport& d);
std::string defect_report_json(const DefectReport& d);

// One row per in-disk node: rho, z, u1, u2, u3, l1, l2, l3, kappa_rho, kappa_z.
// The director is blank where the discriminant vanishes.
void write_field_csv(std::ostream& os, const Field3& u);
void write_trace_csv(std::ostream& os, const std::vector<TraceEntry>& trace);
// r, r^-1 * localized energy on the grid radii from 8h to 1.
void write_profile_csv(std::ostream& os, const Field3& u, double mu);

// Text checkpoint with hexfloat values, so reading it back is exact.
struct Checkpoint {
  double mu = 0.0;
  ObstacleSpec obstacle;
  Field3 field;
};

void write_checkpoint(std::ostream& os, const Field3& u, double mu, const ObstacleSpec& obs);
Checkpoint read_checkpoint(std::istream& is);

}  // namespace ldg
