#include "scatter2d/greens.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "scatter2d/errors.hpp"
#include "scatter2d/partialwave.hpp"
#include "scatter2d/quadrature.hpp"
#include "scatter2d/specfun.hpp"

namespace scatter2d::greens {
namespace {

using std::numbers::pi;
using cplx = std::complex<double>;
namespace pot = potentials;
namespace sf = specfun;

constexpr double kMinExponent = 1e-6;
constexpr int kTailTerms = 16;

// Hankel coefficients s_k = i^k a_k(nu), H1_nu(x) ~ sqrt(2/(pi x)) e^{i w} sum s_k x^-k.
std::vector<cplx> hankel_coefficients(double nu) {
  std::vector<cplx> s(kTailTerms);
  const double mu = 4.0 * nu * nu;
  double a = 1.0;
  cplx ik = 1.0;
  for (int k = 0; k < kTailTerms; ++k) {
    if (k > 0) {
      a *= (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k);
      ik *= cplx(0.0, 1.0);
    }
    s[k] = ik * a;
  }
  return s;
}

// int_X^inf e^{2ix} x^{-s} dx by repeated integration by parts.
cplx oscillatory_tail(double s, double X) {
  const cplx two_i(0.0, 2.0);
  cplx sum = 0.0;
  cplx term = std::pow(X, -s);
  double last = std::abs(term);
  for (int j = 0; j < 60; ++j) {
    sum += term;
    const cplx next = term * (s + j) / (two_i * X);
    if (std::abs(next) > last || std::abs(next) < 1e-18 * std::abs(sum)) break;
    last = std::abs(next);
    term = next;
  }
  return -std::exp(two_i * X) / two_i * sum;
}

// int_X^inf J_alpha J_beta x^{-gamma} dx from the product of Hankel expansions.
double hankel_tail(double alpha, double beta, double gamma_exp, double X) {
  const auto sa = hankel_coefficients(alpha);
  const auto sb = hankel_coefficients(beta);
  const cplx smooth_phase = std::polar(1.0, (beta - alpha) * pi / 2.0);
  const cplx osc_phase = std::polar(1.0, -(alpha + beta + 1.0) * pi / 2.0);
  cplx total = 0.0;
  for (int n = 0; n < kTailTerms; ++n) {
    cplx p = 0.0;
    cplx q = 0.0;
    for (int j = 0; j <= n; ++j) {
      p += sa[j] * std::conj(sb[n - j]);
      q += sa[j] * sb[n - j];
    }
    const double s = n + 1.0 + gamma_exp;
    const cplx contrib = smooth_phase * p * std::pow(X, 1.0 - s) / (s - 1.0) +
                         osc_phase * q * oscillatory_tail(s, X);
    total += contrib;
    if (std::abs(contrib) < 1e-18 && n > 2) break;
  }
  return total.real() / pi;
}

// int_0^X f with f ~ C x^{p-1} at the origin: dyadic mesh toward 0 and
// the analytic remainder eps f(eps) / p.
double graded_integral(const std::function<double(double)>& f, double exponent_p, double X,
                       double abs_tol, int max_intervals) {
  double total = quadrature::gauss_kronrod(f, 1.0, X, abs_tol, 0.0, max_intervals).value;
  double hi = 1.0;
  constexpr int kLevels = 60;
  const double level_tol = abs_tol / kLevels;
  for (int j = 0; j < kLevels; ++j) {
    const double lo = 0.5 * hi;
    total += quadrature::gauss_kronrod(f, lo, hi, level_tol, 0.0, max_intervals).value;
    hi = lo;
    // f = x^{p-1} (c0 + c2 x^2 + ...), so the remainder is good to O(hi^2)
    const double remainder = hi * f(hi) / exponent_p;
    if ((hi <= 1e-3 && std::abs(remainder) * hi * hi < level_tol) || j + 1 == kLevels) {
      total += remainder;
      break;
    }
  }
  return total;
}

double abs_ell(int ell) { return std::abs(static_cast<double>(ell)); }

}  // namespace

void QuadratureSpec::validate() const {
  if (!(r_cut >= 50.0) || !(abs_tol > 0.0) || max_subdivisions < 1) {
    throw DomainError("QuadratureSpec: need r_cut >= 50, abs_tol > 0, max_subdivisions >= 1");
  }
}

std::complex<double> green_function(double k, double separation) {
  if (!(k > 0.0)) throw DomainError("green_function: k must be > 0");
  if (!(separation > 0.0)) throw DomainError("green_function: singular at zero separation");
  return cplx(0.0, 0.25) * sf::hankel0(k * separation);
}

std::complex<double> expand_plane_wave(double k, double r, double theta, int L) {
  if (L < 0) throw DomainError("expand_plane_wave: L must be >= 0");
  if (!(r >= 0.0)) throw DomainError("expand_plane_wave: r must be >= 0");
  const double x = k * r;
  const double ax = std::abs(x);
  // the -l term equals i^l J_l e^{-i l theta}
  cplx sum = sf::bessel_j(0, ax);
  cplx il = 1.0;
  for (int l = 1; l <= L; ++l) {
    il *= cplx(0.0, 1.0);
    double j = sf::bessel_j(l, ax);
    if (x < 0.0 && l % 2 == 1) j = -j;
    sum += 2.0 * il * j * std::cos(l * theta);
  }
  return sum;
}

double integral_phase_shift(int ell, const ScatteringConfig& cfg, const pot::PotentialSpec& p,
                            const oracle::RadialSolution& radial, const QuadratureSpec& q) {
  cfg.validate();
  pot::validate(p);
  q.validate();
  const double k = cfg.wavenumber_k;
  const double m = cfg.mass_m;
  const double l = abs_ell(ell);

  if (const auto* s = std::get_if<pot::InverseSquare>(&p)) {
    if (s->lambda == 0.0) return 0.0;
    const double nu = partialwave::effective_order(ell, m, s->lambda);
    const double exponent = l + nu;
    if (exponent <= kMinExponent) {
      throw DomainError("integral_phase_shift: non-integrable origin, |l| + nu = " +
                        std::to_string(exponent));
    }
    auto f = [&](double x) { return sf::bessel_j(l, x) * radial.value(x / k) / x; };
    const double finite =
        graded_integral(f, exponent, q.r_cut, 0.5 * q.abs_tol, q.max_subdivisions);
    const double tail = hankel_tail(l, nu, 1.0, q.r_cut);
    return -0.5 * pi * 2.0 * m * s->lambda * (finite + tail);
  }

  const auto& d = std::get<pot::RegularizedDelta>(p);
  const double a = d.radius_a;
  const double strength = 2.0 * m * pot::coupling(d.scheme, a) / (pi * a * a);
  if (strength == 0.0) return 0.0;
  const double lo = std::max(0.0, radial.domain_min());
  auto f = [&](double r) { return r * sf::bessel_j(l, k * r) * radial.value(r); };
  // r J phi is O(a) on [0, a]; tolerate abs_tol on the final sin delta
  const double tol = q.abs_tol / std::abs(strength);
  const auto res = quadrature::gauss_kronrod(f, lo, a, tol, 0.0, q.max_subdivisions);
  return -0.5 * pi * strength * res.value;
}

double weber_schafheitlin(double alpha, double beta, double gamma_exp) {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(gamma_exp)) {
    throw DomainError("weber_schafheitlin: non-finite parameter");
  }
  if (!(alpha + beta - gamma_exp + 1.0 > 0.0) || !(gamma_exp > 0.0)) {
    throw DomainError("weber_schafheitlin: need alpha + beta - gamma + 1 > 0 and gamma > 0");
  }
  const double num = sf::gamma_fn(gamma_exp) * sf::gamma_fn(0.5 * (alpha + beta - gamma_exp + 1.0));
  const double rden = sf::reciprocal_gamma(0.5 * (-beta + alpha + gamma_exp + 1.0)) *
                      sf::reciprocal_gamma(0.5 * (alpha + beta + gamma_exp + 1.0)) *
                      sf::reciprocal_gamma(0.5 * (beta - alpha + gamma_exp + 1.0));
  return num * rden / std::pow(2.0, gamma_exp);
}

double weber_schafheitlin_quadrature(double alpha, double beta, double gamma_exp,
                                     double abs_tol) {
  const double exponent = alpha + beta - gamma_exp + 1.0;
  if (!(exponent > 0.0) || !(gamma_exp > 0.0) || !(alpha >= 0.0) || !(beta >= 0.0)) {
    throw DomainError("weber_schafheitlin_quadrature: need alpha, beta >= 0, gamma > 0 and alpha + beta - gamma + 1 > 0");
  }
  constexpr double X = 200.0;
  auto f = [&](double x) {
    return sf::bessel_j(alpha, x) * sf::bessel_j(beta, x) * std::pow(x, -gamma_exp);
  };
  return graded_integral(f, exponent, X, abs_tol, 20000) + hankel_tail(alpha, beta, gamma_exp, X);
}

double inverse_square_sin_delta(int ell, double m, double lambda) {
  const double nu = partialwave::effective_order(ell, m, lambda);
  if (lambda == 0.0) return 0.0;
  return -0.5 * pi * 2.0 * m * lambda * weber_schafheitlin(abs_ell(ell), nu, 1.0);
}

ScatteringAmplitude make_amplitude(std::span<const PhaseShift> shifts, double k) {
  if (!(k > 0.0)) throw DomainError("scattering_amplitude: k must be > 0");
  std::map<int, cplx> by_abs;
  for (const PhaseShift& s : shifts) {
    const int key = std::abs(s.ell);
    const cplx value = s.s_element();
    auto [it, inserted] = by_abs.emplace(key, value);
    if (!inserted && std::abs(it->second - value) > 1e-12) {
      throw DomainError("scattering_amplitude: conflicting shifts for |l| = " + std::to_string(key));
    }
  }
  ScatteringAmplitude amp;
  amp.k = k;
  amp.truncation = by_abs.empty() ? 0 : by_abs.rbegin()->first;
  for (int l = 0; l <= amp.truncation; ++l) {
    auto it = by_abs.find(l);
    if (it == by_abs.end()) {
      if (by_abs.empty()) break;
      throw DomainError("scattering_amplitude: missing shift for |l| = " + std::to_string(l));
    }
    amp.s_elements[l] = it->second;
    amp.s_elements[-l] = it->second;
  }
  return amp;
}

std::complex<double> ScatteringAmplitude::operator()(double theta) const {
  cplx sum = 0.0;
  for (const auto& [l, s] : s_elements) sum += (s - 1.0) * std::polar(1.0, l * theta);
  return sum / std::sqrt(2.0 * pi * k);
}

AmplitudeValue scattering_amplitude(std::span<const PhaseShift> shifts, double k, double theta) {
  const ScatteringAmplitude amp = make_amplitude(shifts, k);
  const cplx f = amp(theta);
  return {f, std::norm(f)};
}

std::complex<double> scattered_wave(const ScatteringAmplitude& amp, double r, double theta) {
  if (!(r > 0.0)) throw DomainError("scattered_wave: r must be > 0");
  return amp(theta) * std::polar(1.0, amp.k * r - 0.25 * pi) / std::sqrt(r);
}

}  // namespace scatter2d::greens
