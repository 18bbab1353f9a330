#include "scatter2d/partialwave.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "scatter2d/errors.hpp"
#include "scatter2d/specfun.hpp"

namespace scatter2d::partialwave {
namespace {

using std::numbers::pi;
namespace pot = potentials;
namespace sf = specfun;

double abs_ell(int ell) { return std::abs(static_cast<double>(ell)); }

// Interior regular solution Z at x = r/a and a dZ/dr, with Z = (r/a)^|l| when kappa = 0.
struct Interior {
  double value;
  double a_deriv;
};

Interior interior_at(int ell, const InternalWave& w, double x) {
  const double l = abs_ell(ell);
  const double q = w.edge_argument;
  if (q == 0.0) {
    if (l == 0.0) return {1.0, 0.0};
    return {std::pow(x, l), l * std::pow(x, l - 1.0)};
  }
  if (w.basis == InteriorBasis::Oscillatory) {
    return {sf::bessel_j(l, q * x), q * sf::bessel_j_prime(l, q * x)};
  }
  return {sf::bessel_i(l, q * x), q * sf::bessel_i_prime(l, q * x)};
}

// Raw ratios c/b and d/b plus the denominator.
struct RawMatch {
  double c_over_b;
  double d_over_b;
  double denom;
};

RawMatch raw_match(int ell, const ScatteringConfig& cfg, const pot::RegularizedDelta& p) {
  cfg.validate();
  pot::validate(p);
  const double l = abs_ell(ell);
  const double k = cfg.wavenumber_k;
  const double a = p.radius_a;
  const InternalWave w = internal_wavenumber(cfg, p);
  const Interior z = interior_at(ell, w, 1.0);

  // every r-derivative below is multiplied by a
  const double ka = k * a;
  const double jv = sf::bessel_j(l, ka);
  const double jr = ka * sf::bessel_j_prime(l, ka);
  const double yv = sf::bessel_y(l, ka);
  const double yr = ka * sf::bessel_y_prime(l, ka);

  if (!std::isfinite(yv) || !std::isfinite(yr)) {
    // Y_l(ka) beyond double range: the irregular admixture is below resolution.
    if (z.value == 0.0) throw DomainError("match_at_boundary: interior node at r = a with Y overflow");
    return {0.0, jv / z.value, std::numeric_limits<double>::infinity()};
  }

  const double numer = z.value * jr - z.a_deriv * jv;
  const double denom = yr * z.value - yv * z.a_deriv;
  const double scale = std::abs(yr * z.value) + std::abs(yv * z.a_deriv);
  if (denom == 0.0 || std::abs(denom) <= 1e-15 * scale) {
    throw ResonanceError("match_at_boundary: vanishing denominator D (|tan delta| = inf) for l = " +
                         std::to_string(ell));
  }
  RawMatch m{-numer / denom, (jv * yr - jr * yv) / denom, denom / a};
  if (!std::isfinite(m.c_over_b) || !std::isfinite(m.d_over_b)) {
    throw DomainError("match_at_boundary: Bessel evaluation out of double range");
  }
  return m;
}

// Bulirsch-Stoer rational extrapolation of (us, ts) to u = 0.
double rational_at_zero(const double* us, const double* ts, int count) {
  constexpr double tiny = 1e-300;
  double c[8];
  double d[8];
  int ns = 0;
  double closest = std::abs(us[0]);
  for (int i = 0; i < count; ++i) {
    if (std::abs(us[i]) < closest) {
      ns = i;
      closest = std::abs(us[i]);
    }
    c[i] = ts[i];
    d[i] = ts[i] + tiny;
  }
  double y = ts[ns--];
  for (int m = 1; m < count; ++m) {
    for (int i = 0; i < count - m; ++i) {
      const double w = c[i + 1] - d[i];
      const double t = us[i] * d[i] / us[i + m];
      double dd = t - c[i + 1];
      if (dd == 0.0) return std::numeric_limits<double>::quiet_NaN();
      dd = w / dd;
      d[i] = c[i + 1] * dd;
      c[i] = t * dd;
    }
    y += (2 * (ns + 1) < count - m) ? c[ns + 1] : d[ns--];
  }
  return y;
}

constexpr int kMaxTerms = 60;
constexpr int kMinTerms = 8;
constexpr int kStencil = 3;

}  // namespace

double effective_order(int ell, double m, double lambda) {
  if (!std::isfinite(m) || !std::isfinite(lambda) || !(m > 0.0)) {
    throw DomainError("effective_order: m must be > 0 and lambda finite");
  }
  const double l2 = static_cast<double>(ell) * ell;
  if (lambda == 0.0) return abs_ell(ell);
  const double nu2 = l2 + 2.0 * m * lambda;
  if (nu2 <= 0.0) {
    throw FallToCenterError("effective_order: l^2 + 2m lambda = " + std::to_string(nu2) +
                            " <= 0 (fall to center)");
  }
  return std::sqrt(nu2);
}

PhaseShift inverse_square_phase_shift(int ell, double m, double lambda) {
  const double nu = effective_order(ell, m, lambda);
  return PhaseShift::from_angle(ell, 0.5 * pi * (abs_ell(ell) - nu));
}

InternalWave internal_wavenumber(const ScatteringConfig& cfg, const pot::RegularizedDelta& p) {
  cfg.validate();
  pot::validate(p);
  const double a = p.radius_a;
  const double v = pot::coupling(p.scheme, a);
  const double k = cfg.wavenumber_k;
  const double edge_sq = (k * a) * (k * a) - 2.0 * cfg.mass_m * v / pi;
  InternalWave w;
  w.kappa_sq = k * k - 2.0 * cfg.mass_m * v / (pi * a * a);
  w.basis = edge_sq < 0.0 ? InteriorBasis::Evanescent : InteriorBasis::Oscillatory;
  w.edge_argument = std::sqrt(std::abs(edge_sq));
  w.wavenumber = w.edge_argument / a;
  return w;
}

MatchingCoefficients match_at_boundary(int ell, const ScatteringConfig& cfg,
                                       const pot::RegularizedDelta& p) {
  const RawMatch raw = raw_match(ell, cfg, p);
  MatchingCoefficients m;
  m.b = 1.0 / std::hypot(1.0, raw.c_over_b);
  m.c = raw.c_over_b * m.b;
  m.d = raw.d_over_b * m.b;
  m.denom_D = raw.denom;
  return m;
}

PhaseShift phase_shift_finite_a(int ell, const ScatteringConfig& cfg,
                                const pot::RegularizedDelta& p) {
  const RawMatch raw = raw_match(ell, cfg, p);
  return PhaseShift::from_tan(ell, -raw.c_over_b);
}

ZeroRadiusSweep zero_radius_sweep(int ell, const ScatteringConfig& cfg, const pot::Scheme& s,
                                  double a_start, double shrink, double tol) {
  cfg.validate();
  if (!(a_start > 0.0) || !(shrink > 0.0 && shrink < 1.0) || !(tol > 0.0)) {
    throw DomainError("zero_radius_limit: need a_start > 0, 0 < shrink < 1, tol > 0");
  }
  if (const auto* lr = std::get_if<pot::LogRunning>(&s)) {
    if (!(a_start < 0.5 * pot::pole_radius(*lr))) {
      throw DomainError("zero_radius_limit: a_start must lie below half the pole radius a0*exp(-gamma)/2 = " +
                        std::to_string(0.5 * pot::pole_radius(*lr)));
    }
  }

  ZeroRadiusSweep sweep;
  std::vector<double> us;
  double prev_estimate = std::numeric_limits<double>::quiet_NaN();

  for (int n = 0; n < kMaxTerms; ++n) {
    const double a = a_start * std::pow(shrink, n);
    const PhaseShift ps = phase_shift_finite_a(ell, cfg, pot::RegularizedDelta{s, a});
    if (ps.resonant()) throw ResonanceError("zero_radius_limit: resonant term in sequence");
    sweep.radii.push_back(a);
    sweep.tan_deltas.push_back(ps.tan_delta);
    us.push_back(1.0 / std::log(a));

    const int count = std::min(n + 1, kStencil);
    const double estimate =
        rational_at_zero(us.data() + (n + 1 - count), sweep.tan_deltas.data() + (n + 1 - count), count);
    sweep.estimates.push_back(estimate);

    if (n + 1 >= kMinTerms && std::isfinite(prev_estimate)) {
      if (std::abs(estimate - prev_estimate) < tol) {
        if (std::holds_alternative<pot::ConstantStrength>(s) && std::abs(estimate) > 10.0 * tol) {
          throw ConvergenceError("zero_radius_limit: constant-strength limit " +
                                 std::to_string(estimate) + " does not vanish");
        }
        sweep.limit = PhaseShift::from_tan(ell, estimate);
        return sweep;
      }
    }
    prev_estimate = estimate;
  }
  throw ConvergenceError("zero_radius_limit: no convergence within " + std::to_string(kMaxTerms) +
                         " terms (last estimate " + std::to_string(prev_estimate) + ")");
}

PhaseShift zero_radius_limit(int ell, const ScatteringConfig& cfg, const pot::Scheme& s,
                             double a_start, double shrink, double tol) {
  return zero_radius_sweep(ell, cfg, s, a_start, shrink, tol).limit;
}

PhaseShift scheme_a_closed_form(double k, double a0) {
  if (!(k > 0.0) || !(a0 > 0.0)) throw DomainError("scheme_a_closed_form: need k, a0 > 0");
  const double log_term = std::log(k * a0 / 2.0);
  if (std::abs(log_term) < 1e-15) {
    return PhaseShift::from_tan(0, std::numeric_limits<double>::infinity());
  }
  return PhaseShift::from_tan(0, 0.5 * pi / log_term);
}

oracle::RadialSolution exact_radial_solution(int ell, const ScatteringConfig& cfg,
                                             const pot::PotentialSpec& p) {
  cfg.validate();
  pot::validate(p);
  const double k = cfg.wavenumber_k;
  const double wavelength = 2.0 * pi / k;
  if (const auto* s = std::get_if<pot::InverseSquare>(&p)) {
    const double nu = effective_order(ell, cfg.mass_m, s->lambda);
    return oracle::RadialSolution::closed_form(
        ell, k, nu, [nu, k](double r) { return sf::bessel_j(nu, k * r); }, 5.0 * wavelength);
  }
  const auto& d = std::get<pot::RegularizedDelta>(p);
  const MatchingCoefficients m = match_at_boundary(ell, cfg, d);
  const InternalWave w = internal_wavenumber(cfg, d);
  const double l = abs_ell(ell);
  const double a = d.radius_a;
  auto phi = [=](double r) {
    if (r <= a) return m.d * interior_at(ell, w, r / a).value;
    return m.b * sf::bessel_j(l, k * r) + m.c * sf::bessel_y(l, k * r);
  };
  return oracle::RadialSolution::closed_form(ell, k, l, phi, a + 5.0 * wavelength);
}

}  // namespace scatter2d::partialwave
