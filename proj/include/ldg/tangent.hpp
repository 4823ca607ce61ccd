#pragma once

#include <iosfwd>
#include <vector>

#include "ldg/analysis.hpp"
#include "ldg/fields.hpp"

namespace ldg {

enum class ProfileClass { I, II, III, Numeric };

const char* to_string(ProfileClass c);

// Samples of v(phi) on a uniform grid of [0, pi].
struct TangentProfile {
  std::vector<double> phi;
  std::vector<Vec3> v;
  ProfileClass cls = ProfileClass::Numeric;
  double beta = 0.0;
  int variant = 1;  // +1 first alternative, -1 second
};

constexpr std::size_t kDefaultProfileSamples = 10001;

double J_angle(double phi);

// Closed-form harmonic-map profile. Class I ignores beta and returns
// (0, variant, 0).
TangentProfile profile(ProfileClass cls, double beta, int variant,
                       std::size_t samples = kDefaultProfileSamples);
// v = (0, sign cos(phi), sin(phi)).
TangentProfile lambda_pm(int sign, std::size_t samples = kDefaultProfileSamples);
TangentProfile profile_from_function(Vec3 (*fn)(double), std::size_t samples);

double ode_residual(const TangentProfile& p);
double first_integral_deviation(const TangentProfile& p);

struct ProfileEnergy {
  double e2;    // integral of e2 over [0, pi]
  double ball;  // 2 pi e2: Dirichlet energy of the augmented map on B_1
};
ProfileEnergy profile_energy(const TangentProfile& p);

// Radial Hessian form of E_mu at U*, f sampled uniformly on [0, 1] with f(1) = 0
// and read as piecewise linear.
double hessian_radial(const std::vector<double>& f, double mu);
std::vector<double> tent_samples(double lambda, std::size_t samples);
int instability_lambda(double mu);

enum class KappaFormula { Ring, SplitPlus, SplitMinus };
const char* to_string(KappaFormula k);

// Limiting director in (e_rho, e_z) coefficients. Ring takes phi in [-pi, pi]
// and kappa_const >= 0; SplitPlus takes [0, pi]; SplitMinus takes [0, pi].
Vec2 kappa_tangent_formulas(double phi, KappaFormula which, double kappa_const = 0.0);

// Shoots the reduced Class II equation from phi ~ 0 and compares against the
// closed form; returns the max deviation of v over the grid.
double shooting_check_class_II(double beta, int steps = 20000);

void write_profile_csv(std::ostream& os, const TangentProfile& p);

}  // namespace ldg
