#include "ldg/io.hpp"

#include <cmath>
#include <numbers>
#include <cstdlib>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ldg {

using nlohmann::json;

namespace {

json obstacle_json(const ObstacleSpec& o) {
  return {{"branch", to_string(o.branch)}, {"bound", o.bound}};
}

// NaN and inf are not valid JSON numbers.
json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

void write_energy_report(std::ostream& os, const EnergyReport& e, const RunInfo& info) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["run_id"] = info.run_id;
  j["n"] = info.n;
  j["mu"] = info.mu;
  j["obstacle"] = obstacle_json(info.obstacle);
  j["energy"] = {{"dirichlet", e.dirichlet},
                 {"singular", e.singular},
                 {"potential", e.potential},
                 {"total", e.total},
                 {"total_over_24pi", e.total / (24 * std::numbers::pi)}};
  j["solver"] = {{"status", to_string(info.status)},
                 {"iterations", info.iterations},
                 {"stationarity", number_or_null(info.stationarity)},
                 {"axis_moves", info.axis_moves}};
  j["hedgehog_distance"] = info.hedgehog_distance;
  os << j.dump(2) << '\n';
}

std::string defect_report_json(const DefectReport& d) {
  json j;
  j["schema_version"] = kSchemaVersion;
  json crossings = json::array();
  for (const auto& s : d.axis.singularities)
    crossings.push_back({{"z_low", s.z_low}, {"z_high", s.z_high}, {"z", s.z()}, {"label", to_string(s.label)},
                         {"tangent_l2", number_or_null(s.tangent_l2)}});
  j["axis_crossings"] = crossings;
  j["singularity_count"] = d.singularity_count();
  j["parity"] = d.parity();
  j["alternating"] = d.axis.alternating;
  j["resolution_warning"] = d.axis.resolution_warning;
  j["half_crossings"] = d.half_crossings;

  json orderings;
  if (d.ring) {
    j["ring_radius"] = d.ring->rho0;
    j["winding_half_turns"] = number_or_null(d.ring->winding_half_turns);
    orderings["ring"] = {{"ok", d.ring->ordering_ok},
                         {"nodes", d.ring->disk_nodes},
                         {"violations", d.ring->violations},
                         {"violation_fraction", d.ring->violation_fraction}};
  } else {
    j["ring_radius"] = nullptr;
    j["winding_half_turns"] = nullptr;
  }
  if (d.dumbbell) {
    const auto& db = *d.dumbbell;
    orderings["dumbbell"] = {{"ok", db.ordering_ok},
                             {"nodes", db.nodes},
                             {"violations", db.violations},
                             {"violation_fraction", db.violation_fraction}};
    j["dumbbell"] = {{"z0", db.z0},
                     {"delta", db.delta},
                     {"half_width", db.half_width},
                     {"contour_samples", db.contour.size()},
                     {"contour_ok", db.contour_ok}};
  } else {
    j["dumbbell"] = nullptr;
  }
  j["orderings"] = orderings.is_null() ? json::object() : orderings;
  j["notes"] = d.notes;
  return j.dump(2);
}

void write_defect_report(std::ostream& os, const DefectReport& d) { os << defect_report_json(d) << '\n'; }

void write_field_csv(std::ostream& os, const Field3& u) {
  const Mesh& m = u.mesh();
  os << "# schema_version: " << kSchemaVersion << '\n';
  os << "rho,z,u1,u2,u3,lambda1,lambda2,lambda3,kappa_rho,kappa_z\n";
  os << std::setprecision(17);
  for (std::size_t k = 0; k < m.num_nodes(); ++k) {
    if (!m.in_disk(k)) continue;
    const Vec3& v = u[k];
    const EigenTriple e = eigenvalues(v);
    os << m.rho(m.col(k)) << ',' << m.z(m.row(k)) << ',' << v[0] << ',' << v[1] << ',' << v[2] << ',' << e.l1
       << ',' << e.l2 << ',' << e.l3 << ',';
    if (e.delta > 0) {
      const Vec2 kap = director_kappa(v);
      os << kap[0] << ',' << kap[1];
    } else {
      os << ',';
    }
    os << '\n';
  }
}

void write_trace_csv(std::ostream& os, const std::vector<TraceEntry>& trace) {
  os << "# schema_version: " << kSchemaVersion << '\n';
  os << "iteration,energy,stationarity,step\n";
  os << std::setprecision(17);
  for (const auto& t : trace) os << t.iteration << ',' << t.energy << ',' << t.stationarity << ',' << t.step << '\n';
}

void write_profile_csv(std::ostream& os, const Field3& u, double mu) {
  const Mesh& m = u.mesh();
  os << "# schema_version: " << kSchemaVersion << '\n';
  os << "r,localized_energy\n";
  os << std::setprecision(17);
  for (int k = 8; k <= m.n(); ++k) {
    const double r = k * m.h();
    os << r << ',' << localized_energy(u, mu, r) << '\n';
  }
}

void write_checkpoint(std::ostream& os, const Field3& u, double mu, const ObstacleSpec& obs) {
  const Mesh& m = u.mesh();
  os << "# ldg checkpoint\n";
  os << "schema_version " << kSchemaVersion << '\n';
  os << "n " << m.n() << '\n';
  os << std::hexfloat;
  os << "mu " << mu << '\n';
  os << "branch " << to_string(obs.branch) << '\n';
  os << "bound " << obs.bound << '\n';
  os << "values " << m.num_nodes() << '\n';
  for (std::size_t k = 0; k < m.num_nodes(); ++k) os << u[k][0] << ' ' << u[k][1] << ' ' << u[k][2] << '\n';
  os << std::defaultfloat;
}

namespace {

// operator>> does not accept hexfloat on every standard library; strtod does.
double parse_double(const std::string& s) {
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw std::runtime_error("checkpoint: bad number '" + s + "'");
  return x;
}

std::string expect_key(std::istream& is, const std::string& key) {
  std::string k, v;
  if (!(is >> k >> v) || k != key) throw std::runtime_error("checkpoint: expected '" + key + "'");
  return v;
}

}  // namespace

Checkpoint read_checkpoint(std::istream& is) {
  std::string line;
  while (is.peek() == '#') std::getline(is, line);
  const int version = std::stoi(expect_key(is, "schema_version"));
  if (version != kSchemaVersion) throw std::runtime_error("checkpoint: unsupported schema_version");
  const int n = std::stoi(expect_key(is, "n"));
  const double mu = parse_double(expect_key(is, "mu"));
  ObstacleSpec obs;
  obs.branch = parse_branch(expect_key(is, "branch"));
  obs.bound = parse_double(expect_key(is, "bound"));
  const auto count = std::stoull(expect_key(is, "values"));
  auto mesh = build_mesh(n);
  if (count != mesh->num_nodes()) throw std::runtime_error("checkpoint: node count does not match n");
  Checkpoint cp{mu, obs, Field3(mesh)};
  std::string a, b, c;
  for (std::size_t k = 0; k < count; ++k) {
    if (!(is >> a >> b >> c)) throw std::runtime_error("checkpoint: truncated values");
    cp.field[k] = Vec3(parse_double(a), parse_double(b), parse_double(c));
  }
  return cp;
}

}  // namespace ldg
