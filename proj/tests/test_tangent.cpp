#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "ldg/analysis.hpp"
#include "ldg/tangent.hpp"

using namespace ldg;

namespace {

Vec3 wavy(double phi) { return Vec3(std::sin(phi) * 0.3, std::cos(2 * phi), std::sin(phi)).normalized(); }

double simpson(double (*f)(double), double a, double b, int n = 20000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int k = 1; k < n; ++k) s += f(a + k * h) * (k % 2 ? 4 : 2);
  return s * h / 3;
}

}  // namespace

TEST_CASE("J angle") {
  CHECK(J_angle(0) == 0.0);
  CHECK(J_angle(M_PI / 2) == doctest::Approx(M_PI / 2));
  CHECK(J_angle(M_PI) == doctest::Approx(M_PI));
  for (double phi : {0.2, 1.0, 2.5}) {
    const double c = std::cos(phi);
    CHECK(J_angle(phi) == doctest::Approx(std::acos(2 * c / (1 + c * c))).epsilon(1e-12));
  }
  // small angles: J ~ phi^2 / 2, where the arccos form has lost half its digits
  CHECK(J_angle(1e-5) == doctest::Approx(0.5e-10).epsilon(1e-9));
}

TEST_CASE("closed-form profiles") {
  const TangentProfile p = profile(ProfileClass::II, M_PI / 2, 1, 101);
  double worst = 0;
  for (std::size_t k = 0; k < p.v.size(); ++k)
    worst = std::max(worst, (p.v[k] - Vec3(0, std::cos(p.phi[k]), std::sin(p.phi[k]))).norm());
  CHECK(worst < 1e-15);
  // class III at beta = pi/2, phi = pi/2 gives (1, 0, 0)
  const TangentProfile q = profile(ProfileClass::III, M_PI / 2, 1, 101);
  CHECK((q.v[50] - Vec3(1, 0, 0)).norm() < 1e-14);
  CHECK_THROWS_AS(profile(ProfileClass::II, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(profile(ProfileClass::III, M_PI, 1), std::invalid_argument);
  CHECK_THROWS_AS(profile(ProfileClass::II, 1.0, 2), std::invalid_argument);
  for (ProfileClass c : {ProfileClass::I, ProfileClass::II, ProfileClass::III})
    for (double beta : {0.3, 1.0, 2.0})
      for (int var : {1, -1}) {
        const TangentProfile r = profile(c, beta, var, 1001);
        double unit = 0;
        for (const auto& v : r.v) unit = std::max(unit, std::abs(v.norm() - 1));
        CHECK(unit < 1e-14);
        CHECK(std::abs(r.v.front()[0]) + std::abs(r.v.front()[2]) < 1e-14);
        CHECK(std::abs(r.v.back()[0]) + std::abs(r.v.back()[2]) < 1e-14);
      }
}

TEST_CASE("ODE residual and first integral") {
  CHECK(ode_residual(profile(ProfileClass::I, 0, 1)) == 0.0);
  CHECK(ode_residual(lambda_pm(1, 10000)) < 1e-8);
  CHECK(ode_residual(lambda_pm(-1, 10000)) < 1e-8);
  for (ProfileClass c : {ProfileClass::II, ProfileClass::III})
    for (double beta : {0.3, 1.0, 2.0})
      for (int var : {1, -1}) {
        const TangentProfile p = profile(c, beta, var, 10000);
        CHECK(ode_residual(p) < 1e-7);
        CHECK(first_integral_deviation(p) < 1e-8);
      }
  const TangentProfile w = profile_from_function(wavy, 10000);
  CHECK(first_integral_deviation(w) > 1e-2);
  CHECK(ode_residual(w) > 1e-2);
}

TEST_CASE("profile energies") {
  const ProfileEnergy l = profile_energy(lambda_pm(1));
  CHECK(l.e2 == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(std::abs(l.ball - 8 * M_PI) < 1e-6);
  CHECK(profile_energy(profile(ProfileClass::I, 0, -1)).e2 == 0.0);
  const ProfileEnergy t = profile_energy(profile(ProfileClass::III, M_PI / 2, 1));
  CHECK(t.ball >= 8 * M_PI);
  // independent quadrature of e2 for class III at beta = pi/2 using the
  // first integral: e2 = 2 (4 v1^2 + v3^2) / sin(phi)
  const double indep = simpson(
      [](double phi) {
        if (phi == 0 || phi == M_PI) return 0.0;
        const double s = std::sin(J_angle(phi));
        return 2 * 4 * s * s / std::sin(phi);
      },
      0, M_PI);
  CHECK(t.e2 == doctest::Approx(indep).epsilon(1e-8));
  CHECK(l.ball < 24 * M_PI);
}

TEST_CASE("radial Hessian") {
  const std::size_t N = 2001;
  std::vector<double> ramp(N), bump(N);
  for (std::size_t k = 0; k < N; ++k) {
    const double r = double(k) / (N - 1);
    ramp[k] = 1 - r;
    bump[k] = r * (1 - r);
  }
  ramp.back() = bump.back() = 0;
  CHECK(hessian_radial(ramp, 0) == doctest::Approx(32 * M_PI / 5 * (1.0 / 3 - 1)).epsilon(1e-13));
  // piecewise-linear reading of r(1-r): converges to (32pi/5)(1/30)
  CHECK(hessian_radial(bump, 0) == doctest::Approx(32 * M_PI / 5 / 30).epsilon(1e-5));
  CHECK(hessian_radial(bump, 0) > 0);
  for (double mu : {1.0, 10.0, 100.0, 1000.0}) {
    const int lam = instability_lambda(mu);
    CHECK(hessian_radial(tent_samples(lam, 10001), mu) < 0);
  }
  // closed form for the tent when 1/lambda sits on the grid
  const double mu = 10;
  const int lam = instability_lambda(mu);
  CHECK(lam == 3);
  const double exact = -64 * M_PI / (15 * lam) + 72 * std::sqrt(2.0) * M_PI * mu / (150.0 * lam * lam * lam);
  CHECK(hessian_radial(tent_samples(lam, 3001), mu) == doctest::Approx(exact).epsilon(1e-12));
  // quadratic form
  std::vector<double> f = tent_samples(lam, 10001), g = f;
  for (auto& x : g) x *= -1.7;
  CHECK(std::abs(hessian_radial(g, mu) - 2.89 * hessian_radial(f, mu)) < 1e-12 * std::abs(hessian_radial(g, mu)));
  CHECK_THROWS_AS(hessian_radial(std::vector<double>{1, 1}, 0), std::invalid_argument);
}

TEST_CASE("director formulas") {
  CHECK((kappa_tangent_formulas(0, KappaFormula::SplitPlus) - Vec2(0, 1)).norm() == 0.0);
  CHECK((kappa_tangent_formulas(M_PI, KappaFormula::SplitMinus) - Vec2(0, -1)).norm() == 0.0);
  const Vec2 half = kappa_tangent_formulas(M_PI / 2, KappaFormula::SplitPlus);
  CHECK(half[0] == doctest::Approx(std::sqrt(0.5)));
  CHECK(half[1] == doctest::Approx(std::sqrt(0.5)));
  for (double phi : {0.1, 1.0, 2.0, 3.0}) {
    const Vec2 r = kappa_tangent_formulas(phi, KappaFormula::Ring, 0.0);
    CHECK(r[0] == doctest::Approx(std::sqrt(0.5)));
    CHECK(r[1] == doctest::Approx(std::sqrt(0.5)));
  }
  CHECK((kappa_tangent_formulas(0, KappaFormula::Ring, 2.0) - Vec2(1, 0)).norm() == 0.0);
  double worst = 0, unit = 0;
  for (int k = 1; k <= 2000; ++k) {
    const double phi = M_PI * k / 2000;
    const Vec2 a = kappa_tangent_formulas(phi, KappaFormula::SplitPlus);
    worst = std::max(worst, (a - director_kappa(Vec3(0, std::cos(phi), std::sin(phi)))).cwiseAbs().maxCoeff());
    for (KappaFormula f : {KappaFormula::SplitPlus, KappaFormula::SplitMinus})
      unit = std::max(unit, std::abs(kappa_tangent_formulas(phi, f).norm() - 1));
    for (double kc : {0.0, 0.5, 3.0})
      for (double sg : {-1.0, 1.0}) unit = std::max(unit, std::abs(kappa_tangent_formulas(sg * phi, KappaFormula::Ring, kc).norm() - 1));
  }
  CHECK(worst < 1e-12);
  CHECK(unit < 1e-12);
  CHECK_THROWS_AS(kappa_tangent_formulas(-0.1, KappaFormula::SplitPlus), std::invalid_argument);
  CHECK_THROWS_AS(kappa_tangent_formulas(4.0, KappaFormula::Ring, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(kappa_tangent_formulas(1.0, KappaFormula::Ring, -1.0), std::invalid_argument);
}

TEST_CASE("shooting reproduces class II") {
  CHECK(shooting_check_class_II(1.0) < 1e-6);
  CHECK(shooting_check_class_II(0.3) < 1e-6);
}

TEST_CASE("profile CSV") {
  std::ostringstream os;
  write_profile_csv(os, lambda_pm(1, 5));
  const std::string s = os.str();
  CHECK(s.rfind("# schema_version: 1", 0) == 0);
  CHECK(s.find("phi,v1,v2,v3") != std::string::npos);
  CHECK(std::count(s.begin(), s.end(), '\n') == 8);
}
