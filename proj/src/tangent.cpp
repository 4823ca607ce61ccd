#include "ldg/tangent.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace ldg {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEndpointGap = 1e-3;

std::vector<double> uniform_phi(std::size_t samples) {
  if (samples < 5) throw std::invalid_argument("profile needs at least 5 samples");
  std::vector<double> phi(samples);
  for (std::size_t k = 0; k < samples; ++k) phi[k] = kPi * k / (samples - 1);
  phi.back() = kPi;
  return phi;
}

struct Derivs {
  Vec3 d1, d2;
};

// Stencil stride for the residual norms. The second difference loses about
// eps/h^2 to rounding, so use the widest stride that still reaches every
// sample outside the excluded end neighborhoods.
std::size_t stride(const TangentProfile& p) {
  const double h = p.phi[1] - p.phi[0];
  const auto first = static_cast<std::size_t>(std::ceil(kEndpointGap / h));
  return std::max<std::size_t>(1, first / 2);
}

// Fourth-order central differences at index k with spacing s*h.
Derivs central(const TangentProfile& p, std::size_t k, std::size_t s = 1) {
  const double h = s * (p.phi[1] - p.phi[0]);
  const auto& v = p.v;
  Derivs d;
  d.d1 = (-v[k + 2 * s] + 8 * v[k + s] - 8 * v[k - s] + v[k - 2 * s]) / (12 * h);
  d.d2 = (-v[k + 2 * s] + 16 * v[k + s] - 30 * v[k] + 16 * v[k - s] - v[k - 2 * s]) / (12 * h * h);
  return d;
}

// First derivative with one-sided fourth-order stencils at the ends.
Vec3 derivative(const TangentProfile& p, std::size_t k) {
  const std::size_t N = p.v.size();
  const double h = p.phi[1] - p.phi[0];
  const auto& v = p.v;
  if (k >= 2 && k + 2 < N) return central(p, k).d1;
  if (k < 2)
    return (-25 * v[k] + 48 * v[k + 1] - 36 * v[k + 2] + 16 * v[k + 3] - 3 * v[k + 4]) / (12 * h);
  return (25 * v[k] - 48 * v[k - 1] + 36 * v[k - 2] - 16 * v[k - 3] + 3 * v[k - 4]) / (12 * h);
}

bool in_window(double phi) { return phi >= kEndpointGap && phi <= kPi - kEndpointGap; }

void check_beta(double beta) {
  if (!(beta > 0 && beta < kPi)) throw std::invalid_argument("beta must lie in (0, pi)");
}

}  // namespace

const char* to_string(ProfileClass c) {
  switch (c) {
    case ProfileClass::I: return "I";
    case ProfileClass::II: return "II";
    case ProfileClass::III: return "III";
    case ProfileClass::Numeric: return "numeric";
  }
  return "?";
}

double J_angle(double phi) {
  // arccos(2cos(phi)/(1+cos^2(phi))) in half-angle form: tan(J/2) = tan^2(phi/2)
  const double s = std::sin(0.5 * phi), c = std::cos(0.5 * phi);
  return 2 * std::atan2(s * s, c * c);
}

TangentProfile profile(ProfileClass cls, double beta, int variant, std::size_t samples) {
  if (variant != 1 && variant != -1) throw std::invalid_argument("variant must be +1 or -1");
  TangentProfile p;
  p.phi = uniform_phi(samples);
  p.cls = cls;
  p.beta = beta;
  p.variant = variant;
  p.v.resize(samples);
  const double sg = variant;
  if (cls == ProfileClass::I) {
    for (auto& v : p.v) v = Vec3(0, sg, 0);
    return p;
  }
  check_beta(beta);
  const double cb = std::cos(beta), sb = std::sin(beta);
  for (std::size_t k = 0; k < samples; ++k) {
    const double phi = p.phi[k];
    if (cls == ProfileClass::II) {
      const double c = std::cos(phi), s = std::sin(phi);
      const double den = 1 + sg * cb * c;
      p.v[k] = Vec3(0, (cb + sg * c) / den, sb * s / den);
    } else if (cls == ProfileClass::III) {
      const double J = J_angle(phi);
      const double c = std::cos(J), s = std::sin(J);
      const double den = 1 + sg * cb * c;
      p.v[k] = Vec3(sb * s / den, (cb + sg * c) / den, 0);
    } else {
      throw std::invalid_argument("no closed form for a numeric profile");
    }
  }
  return p;
}

TangentProfile lambda_pm(int sign, std::size_t samples) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  TangentProfile p;
  p.phi = uniform_phi(samples);
  p.cls = ProfileClass::II;
  p.beta = kPi / 2;
  p.variant = sign;
  p.v.resize(samples);
  for (std::size_t k = 0; k < samples; ++k)
    p.v[k] = Vec3(0, sign * std::cos(p.phi[k]), std::sin(p.phi[k]));
  return p;
}

TangentProfile profile_from_function(Vec3 (*fn)(double), std::size_t samples) {
  TangentProfile p;
  p.phi = uniform_phi(samples);
  p.cls = ProfileClass::Numeric;
  p.v.resize(samples);
  for (std::size_t k = 0; k < samples; ++k) p.v[k] = fn(p.phi[k]);
  return p;
}

double ode_residual(const TangentProfile& p) {
  const std::size_t N = p.v.size();
  const std::size_t st = stride(p);
  double worst = 0.0;
  for (std::size_t k = 2 * st; k + 2 * st < N; ++k) {
    const double phi = p.phi[k];
    if (!in_window(phi)) continue;
    const Derivs d = central(p, k, st);
    const Vec3& v = p.v[k];
    const double s = std::sin(phi), c = std::cos(phi);
    const double sing = 4 * v[0] * v[0] + v[2] * v[2];
    const Vec3 lhs = -(c * d.d1 + s * d.d2) + Vec3(4 * v[0], 0, v[2]) / s;
    const Vec3 rhs = (d.d1.squaredNorm() * s + sing / s) * v;
    worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  return worst;
}

double first_integral_deviation(const TangentProfile& p) {
  const std::size_t N = p.v.size();
  const std::size_t st = stride(p);
  double worst = 0.0;
  for (std::size_t k = 2 * st; k + 2 * st < N; ++k) {
    const double phi = p.phi[k];
    if (!in_window(phi)) continue;
    const Vec3 d1 = central(p, k, st).d1;
    const Vec3& v = p.v[k];
    const double s = std::sin(phi);
    worst = std::max(worst, std::abs(d1.squaredNorm() * s * s - (4 * v[0] * v[0] + v[2] * v[2])));
  }
  return worst;
}

ProfileEnergy profile_energy(const TangentProfile& p) {
  const std::size_t N = p.v.size();
  if (N < 7) throw std::invalid_argument("profile too short");
  std::vector<double> e(N, 0.0);
  for (std::size_t k = 1; k + 1 < N; ++k) {
    const Vec3& v = p.v[k];
    const double s = std::sin(p.phi[k]);
    e[k] = derivative(p, k).squaredNorm() * s + (4 * v[0] * v[0] + v[2] * v[2]) / s;
  }
  // endpoint values by quadratic extrapolation (the density is smooth there)
  e[0] = 3 * e[1] - 3 * e[2] + e[3];
  e[N - 1] = 3 * e[N - 2] - 3 * e[N - 3] + e[N - 4];
  const double h = p.phi[1] - p.phi[0];
  double total = 0.0;
  if ((N - 1) % 2 == 0) {
    for (std::size_t k = 0; k + 2 < N; k += 2) total += h / 3 * (e[k] + 4 * e[k + 1] + e[k + 2]);
  } else {
    for (std::size_t k = 0; k + 1 < N; ++k) total += 0.5 * h * (e[k] + e[k + 1]);
  }
  return {total, 2 * kPi * total};
}

double hessian_radial(const std::vector<double>& f, double mu) {
  const std::size_t N = f.size();
  if (N < 2) throw std::invalid_argument("need at least two samples");
  if (std::abs(f.back()) > 1e-14) throw std::invalid_argument("hessian form requires f(1) = 0");
  const double dr = 1.0 / (N - 1);
  // three-point Gauss-Legendre nodes on [0,1], exact for the quartic f^2 r^2
  const double gx[3] = {0.5 - 0.5 * std::sqrt(0.6), 0.5, 0.5 + 0.5 * std::sqrt(0.6)};
  const double gw[3] = {5.0 / 18, 8.0 / 18, 5.0 / 18};
  double grad = 0.0, mass = 0.0, weighted = 0.0;
  for (std::size_t k = 0; k + 1 < N; ++k) {
    const double r0 = k * dr, r1 = (k + 1) * dr;
    const double f0 = f[k], f1 = f[k + 1];
    const double s = (f1 - f0) / dr;
    grad += s * s * (r1 * r1 * r1 - r0 * r0 * r0) / 3;
    mass += dr * (f0 * f0 + f0 * f1 + f1 * f1) / 3;
    for (int q = 0; q < 3; ++q) {
      const double r = r0 + gx[q] * dr;
      const double fv = f0 + s * (r - r0);
      weighted += gw[q] * dr * fv * fv * r * r;
    }
  }
  return 32 * kPi / 5 * (grad - 3 * mass) + 72 * std::sqrt(2.0) / 5 * kPi * mu * weighted;
}

std::vector<double> tent_samples(double lambda, std::size_t samples) {
  if (!(lambda > 0)) throw std::invalid_argument("lambda must be positive");
  std::vector<double> f(samples);
  for (std::size_t k = 0; k < samples; ++k) f[k] = std::max(1.0 - lambda * k / (samples - 1.0), 0.0);
  f.back() = std::max(1.0 - lambda, 0.0);
  return f;
}

int instability_lambda(double mu) {
  return std::max(1, static_cast<int>(std::ceil(0.8 * std::sqrt(mu))));
}

const char* to_string(KappaFormula k) {
  switch (k) {
    case KappaFormula::Ring: return "ring";
    case KappaFormula::SplitPlus: return "split_plus";
    case KappaFormula::SplitMinus: return "split_minus";
  }
  return "?";
}

namespace {

// 1 + t / sqrt(4 + t^2), rewritten for t < 0 where the sum cancels
double one_plus_ratio(double t) {
  const double r = std::sqrt(4 + t * t);
  return t >= 0 ? 1 + t / r : 4 / (r * (r - t));
}

// 1 + sign * sqrt3 cos(phi) / sqrt(3 + sin^2(phi)); the difference form uses
// 3 + s^2 - 3 c^2 = 4 s^2
double split_A(double phi, double sign) {
  const double c = std::cos(phi), s = std::sin(phi);
  const double q = std::sqrt(3 + s * s);
  const double x = sign * std::sqrt(3.0) * c;
  return x >= 0 ? 1 + x / q : 4 * s * s / (q * (q - x));
}

}  // namespace

Vec2 kappa_tangent_formulas(double phi, KappaFormula which, double kappa_const) {
  const double r2 = std::sqrt(2.0) / 2;
  switch (which) {
    case KappaFormula::Ring: {
      if (!(kappa_const >= 0)) throw std::invalid_argument("ring constant must be non-negative");
      if (!(phi >= -kPi && phi <= kPi)) throw std::invalid_argument("ring angle must lie in [-pi, pi]");
      if (phi == -kPi) return Vec2(0, -1);
      if (phi == 0) return Vec2(1, 0);
      if (phi == kPi) return Vec2(0, 1);
      const double t = kappa_const * std::cos(phi) / std::sin(phi);
      const double root2 = 4 + t * t;
      const double A = one_plus_ratio(phi > 0 ? t : -t);
      const double kz = std::sqrt(2 / root2) / std::sqrt(A);
      return Vec2(r2 * std::sqrt(A), phi > 0 ? kz : -kz);
    }
    case KappaFormula::SplitPlus:
    case KappaFormula::SplitMinus: {
      const bool plus = which == KappaFormula::SplitPlus;
      if (!(phi >= 0 && phi <= kPi)) throw std::invalid_argument("split angle must lie in [0, pi]");
      if (plus && phi == 0) return Vec2(0, 1);
      if (!plus && phi == kPi) return Vec2(0, -1);
      const double s2 = std::sin(phi) * std::sin(phi);
      const double A = split_A(phi, plus ? -1.0 : 1.0);
      const double kz = std::sqrt(2 * s2 / (3 + s2)) / std::sqrt(A);
      return Vec2(r2 * std::sqrt(A), plus ? kz : -kz);
    }
  }
  throw std::invalid_argument("unknown formula");
}

namespace {

// The profile ODE multiplied by sin(phi) and written in s = log tan(phi/2):
//   v_ss = (4 v1, 0, v3) - (|v_s|^2 + 4 v1^2 + v3^2) v
using State = std::array<double, 6>;

State rhs(const State& y) {
  const Vec3 v(y[0], y[1], y[2]), w(y[3], y[4], y[5]);
  const Vec3 acc = Vec3(4 * v[0], 0, v[2]) - (w.squaredNorm() + 4 * v[0] * v[0] + v[2] * v[2]) * v;
  return {w[0], w[1], w[2], acc[0], acc[1], acc[2]};
}

State rk4_step(const State& y, double ds) {
  auto axpy = [](const State& a, const State& b, double t) {
    State r;
    for (int i = 0; i < 6; ++i) r[i] = a[i] + t * b[i];
    return r;
  };
  const State k1 = rhs(y);
  const State k2 = rhs(axpy(y, k1, ds / 2));
  const State k3 = rhs(axpy(y, k2, ds / 2));
  const State k4 = rhs(axpy(y, k3, ds));
  State out;
  for (int i = 0; i < 6; ++i) out[i] = y[i] + ds / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  return out;
}

// Start on the small-amplitude branch v ~ (0, cos a, sin a), a = amp e^s.
State start_state(double amp, double s0) {
  const double a = amp * std::exp(s0);
  return {0, std::cos(a), std::sin(a), 0, -std::sin(a) * a, std::cos(a) * a};
}

}  // namespace

double shooting_check_class_II(double beta, int steps) {
  check_beta(beta);
  const double phi0 = 1e-6;
  const double s0 = std::log(std::tan(phi0 / 2));
  const double ds = -s0 / steps;
  auto angle_at_equator = [&](double amp) {
    State y = start_state(amp, s0);
    for (int k = 0; k < steps; ++k) y = rk4_step(y, ds);
    return std::atan2(y[2], y[1]);
  };
  // bisection on the amplitude: the angle at phi = pi/2 increases with amp
  double lo = 1e-3, hi = 1e3;
  for (int it = 0; it < 200; ++it) {
    const double mid = std::sqrt(lo * hi);
    (angle_at_equator(mid) < beta ? lo : hi) = mid;
  }
  const double amp = std::sqrt(lo * hi);
  // march across the whole range and compare with the closed form
  State y = start_state(amp, s0);
  const double cb = std::cos(beta), sb = std::sin(beta);
  double worst = 0.0;
  for (int k = 0; k <= 2 * steps; ++k) {
    const double s = s0 + k * ds;
    const double phi = 2 * std::atan(std::exp(s));
    const double c = std::cos(phi);
    const Vec3 exact(0, (cb + c) / (1 + cb * c), sb * std::sin(phi) / (1 + cb * c));
    worst = std::max(worst, (Vec3(y[0], y[1], y[2]) - exact).norm());
    if (k < 2 * steps) y = rk4_step(y, ds);
  }
  return worst;
}

void write_profile_csv(std::ostream& os, const TangentProfile& p) {
  os << "# schema_version: 1\n";
  os << "# class: " << to_string(p.cls) << ", beta: " << p.beta << ", variant: " << p.variant << "\n";
  os << "phi,v1,v2,v3\n";
  os.precision(17);
  for (std::size_t k = 0; k < p.v.size(); ++k)
    os << p.phi[k] << ',' << p.v[k][0] << ',' << p.v[k][1] << ',' << p.v[k][2] << '\n';
}

}  // namespace ldg
