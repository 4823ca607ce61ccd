#include "ldg/verify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>

#include <Eigen/Eigenvalues>

#include "ldg/analysis.hpp"
#include "ldg/energy.hpp"
#include "ldg/fields.hpp"
#include "ldg/tangent.hpp"

namespace ldg {

namespace {

constexpr double kPi = std::numbers::pi;

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : gen_(seed) {}
  double uniform(double a, double b) { return a + (b - a) * static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  Vec3 unit() {
    for (;;) {
      Vec3 v(uniform(-1, 1), uniform(-1, 1), uniform(-1, 1));
      const double n = v.norm();
      if (n > 1e-3 && n <= 1) return v / n;
    }
  }

 private:
  std::mt19937_64 gen_;
};

CheckResult below(std::string name, double value, double tol, std::string detail = {}) {
  return {std::move(name), value, tol, value < tol, std::move(detail)};
}

CheckResult eigen_oracle(Sampler& rng, bool mutate) {
  double worst = 0.0;
  for (int s = 0; s < 10000; ++s) {
    const Vec3 u = rng.unit();
    const double theta = rng.uniform(0, 2 * kPi);
    const double rho = rng.uniform(0.05, 1), z = rng.uniform(-1, 1);
    Eigen::SelfAdjointEigenSolver<QTensor> es(q_from_u(u, rho, z, theta), Eigen::EigenvaluesOnly);
    EigenTriple e = eigenvalues(u);
    if (mutate) e.l2 += 1e-6;
    std::array<double, 3> ours{e.l1, e.l2, e.l3};
    std::sort(ours.begin(), ours.end());
    for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(ours[i] - es.eigenvalues()[i]));
  }
  return below("eigenvalue closed form vs matrix oracle", worst, 1e-10, "10^4 random unit u");
}

CheckResult hedgehog_identities(Sampler& rng) {
  double worst = 0.0;
  for (int s = 0; s < 10000; ++s) {
    const double t = rng.uniform(0, kPi);
    const double r = rng.uniform(0.01, 1);
    const Vec3 U = hedgehog_U_star(r * std::sin(t), r * std::cos(t));
    worst = std::max({worst, std::abs(U.norm() - 1), std::abs(potential_P(U) - 1.0 / 3)});
  }
  return below("|U*| = 1 and P(U*) = 1/3", worst, 1e-12);
}

CheckResult s_of_l(Sampler& rng) {
  double worst = 0.0;
  for (int s = 0; s < 10000; ++s) {
    const Vec3 u = rng.unit();
    const double theta = rng.uniform(0, 2 * kPi);
    worst = std::max(worst, std::abs(potential_S(augment_L(u, theta)) - potential_P(u)));
  }
  return below("S(L[u]) = P(u)", worst, 1e-12);
}

CheckResult director_checks(Sampler& rng) {
  double worst = 0.0;
  for (int s = 0; s < 10000; ++s) {
    const Vec3 u = rng.unit();
    const double theta = rng.uniform(0, 2 * kPi);
    const EigenTriple e = eigenvalues(u);
    if (e.delta < 1e-6) continue;
    const Vec2 k = director_kappa(u);
    const Vec3 k3(k[0] * std::cos(theta), k[0] * std::sin(theta), k[1]);
    const QTensor Q = q_from_u(u, 0.5, 0.3, theta);
    worst = std::max({worst, std::abs(k.norm() - 1), (Q * k3 - e.l3 * k3).cwiseAbs().maxCoeff()});
  }
  return below("director unit and Q kappa = l3 kappa", worst, 1e-10);
}

CheckResult reduced_identity(Sampler& rng) {
  auto mesh = build_mesh(32);
  double worst = 0.0;
  for (int s = 0; s < 20; ++s) {
    const double a = rng.uniform(-1, 1), b = rng.uniform(-1, 1), w = rng.uniform(1, 4);
    Field2 v{mesh, std::vector<Vec2>(mesh->num_nodes())};
    for (std::size_t k = 0; k < mesh->num_nodes(); ++k) {
      const double rho = mesh->rho(mesh->col(k)), z = mesh->z(mesh->row(k));
      const double r2 = rho * rho + z * z;
      const double alpha = std::atan2(rho, z) + rho * z * std::max(0.0, 1 - r2) * (a + b * std::sin(w * rho));
      v.values[k] = Vec2(std::cos(2 * alpha), std::sin(2 * alpha));
    }
    const double F = reduced_energy_F(v);
    const double E = energy(reduced_map_field(v), 10.0).total;
    worst = std::max(worst, std::abs(E - 1.5 * F) / (1.5 * F));
  }
  return below("E[u^v] = (3/2) F[v]", worst, 1e-10, "relative, 20 random fields, n=32, mu=10");
}

std::vector<CheckResult> ode_checks() {
  double res = 0.0, fi = 0.0;
  for (ProfileClass c : {ProfileClass::I, ProfileClass::II, ProfileClass::III})
    for (double beta : {0.3, 1.0, 2.0})
      for (int var : {1, -1}) {
        const auto p = profile(c, beta, var, 10001);
        res = std::max(res, ode_residual(p));
        fi = std::max(fi, first_integral_deviation(p));
      }
  for (int s : {1, -1}) {
    const auto p = lambda_pm(s, 10001);
    res = std::max(res, ode_residual(p));
    fi = std::max(fi, first_integral_deviation(p));
  }
  return {below("profile ODE residual", res, 1e-7, "classes I-III and Lambda+-, 10^4 samples"),
          below("profile first integral", fi, 1e-8)};
}

std::vector<CheckResult> constant_checks() {
  std::vector<CheckResult> out;
  const double target = 24 * kPi;
  for (auto [n, tol] : {std::pair{128, 0.015}, std::pair{256, 0.005}}) {
    const double E = energy(hedgehog_field(build_mesh(n)), 10.0).total;
    out.push_back(below("E[U*] = 24 pi, n=" + std::to_string(n), std::abs(E / target - 1), tol));
  }
  double worst = 0.0;
  for (int s : {1, -1}) worst = std::max(worst, std::abs(profile_energy(lambda_pm(s)).ball - 8 * kPi));
  out.push_back(below("Lambda+- energy on B1 = 8 pi", worst, 1e-6));
  return out;
}

std::vector<CheckResult> hessian_checks() {
  std::vector<CheckResult> out;
  const std::size_t N = 10001;
  const double mu = 10;
  const int lam = instability_lambda(mu);
  const double tent = hessian_radial(tent_samples(lam, N), mu);
  out.push_back({"tent direction unstable at mu=10", tent, 0.0, tent < 0, "lambda=" + std::to_string(lam)});
  std::vector<double> bump(N), ramp(N);
  for (std::size_t k = 0; k < N; ++k) {
    const double r = double(k) / (N - 1);
    bump[k] = r * (1 - r);
    ramp[k] = 1 - r;
  }
  ramp.back() = 0;
  bump.back() = 0;
  const double hb = hessian_radial(bump, 0.0);
  out.push_back({"r(1-r) direction stable at mu=0", -hb, 0.0, hb > 0, ""});
  out.push_back(below("1-r exact value", std::abs(hessian_radial(ramp, 0.0) + 64 * kPi / 15), 1e-12));
  std::vector<double> scaled(tent_samples(lam, N));
  for (auto& x : scaled) x *= 2.5;
  out.push_back(below("quadratic form scaling", std::abs(hessian_radial(scaled, mu) - 6.25 * tent) / std::abs(tent), 1e-12));
  return out;
}

CheckResult kappa_consistency() {
  double worst = 0.0;
  for (int k = 1; k <= 1000; ++k) {
    const double phi = kPi * k / 1000;
    const Vec2 a = kappa_tangent_formulas(phi, KappaFormula::SplitPlus);
    const Vec2 b = director_kappa(Vec3(0, std::cos(phi), std::sin(phi)));
    worst = std::max(worst, (a - b).cwiseAbs().maxCoeff());
  }
  return below("split_plus formula = director of (0,cos,sin)", worst, 1e-12);
}

CheckResult potential_minimum() {
  double worst = 0.0;
  for (double a : {1.0, std::sqrt(2.0), 10.0}) {
    const double amp = std::sqrt(2.0) * H_plus(a) / a;
    worst = std::max(worst, std::abs(potential_F_a(Vec3(0, amp, 0), a)));
  }
  return below("F_a vanishes at the H+ radius", worst, 1e-8, "a in {1, sqrt2, 10}");
}

}  // namespace

std::vector<CheckResult> run_verify(const VerifyOptions& opt) {
  Sampler rng(opt.seed);
  std::vector<CheckResult> out;
  out.push_back(eigen_oracle(rng, opt.mutate_eigenvalues));
  out.push_back(hedgehog_identities(rng));
  out.push_back(s_of_l(rng));
  out.push_back(director_checks(rng));
  out.push_back(reduced_identity(rng));
  for (auto& c : ode_checks()) out.push_back(c);
  out.push_back(below("Class II shooting vs closed form", shooting_check_class_II(1.0), 1e-6, "beta = 1"));
  for (auto& c : constant_checks()) out.push_back(c);
  for (auto& c : hessian_checks()) out.push_back(c);
  out.push_back(kappa_consistency());
  out.push_back(potential_minimum());
  return out;
}

void print_verify_table(std::ostream& os, const std::vector<CheckResult>& checks) {
  std::size_t width = 0;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  const auto flags = os.flags();
  for (const auto& c : checks) {
    os << (c.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(static_cast<int>(width)) << c.name << "  "
       << std::scientific << std::setprecision(3) << std::setw(11) << c.value << "  tol " << c.tolerance;
    if (!c.detail.empty()) os << "  (" << c.detail << ')';
    os << '\n';
    os.flags(flags);
  }
}

}  // namespace ldg
