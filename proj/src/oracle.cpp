#include "scatter2d/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "scatter2d/errors.hpp"
#include "scatter2d/specfun.hpp"

namespace scatter2d::oracle {
namespace {

using std::numbers::pi;
namespace pot = potentials;

// Per-region data: phi'' = (nu^2 - wave_sq * r^2) phi in x = ln r.
struct Region {
  double x_begin;
  double x_end;
  double wave_sq;  // k^2 - 2m U on this region
};

struct Problem {
  double order;  // Bessel order of the regular solution at the origin
  std::vector<Region> regions;
};

double exterior_order(int ell, const ScatteringConfig& cfg, const pot::PotentialSpec& p) {
  if (const auto* s = std::get_if<pot::InverseSquare>(&p)) {
    const double l2 = static_cast<double>(ell) * ell;
    if (s->lambda == 0.0) return std::abs(static_cast<double>(ell));
    const double nu2 = l2 + 2.0 * cfg.mass_m * s->lambda;
    if (nu2 <= 0.0) throw FallToCenterError("l^2 + 2m lambda <= 0 (fall to center)");
    return std::sqrt(nu2);
  }
  return std::abs(static_cast<double>(ell));
}

Problem describe(int ell, const ScatteringConfig& cfg, const pot::PotentialSpec& p,
                 const RadialGrid& grid) {
  const double k2 = cfg.wavenumber_k * cfg.wavenumber_k;
  Problem prob;
  prob.order = exterior_order(ell, cfg, p);
  const double x0 = std::log(grid.r_min);
  const double x1 = std::log(grid.r_max);
  if (const auto* d = std::get_if<pot::RegularizedDelta>(&p)) {
    const double a = d->radius_a;
    if (!(a > grid.r_min) || !(a < grid.r_max)) {
      throw DomainError("integrate_radial: well radius must lie inside (r_min, r_max)");
    }
    const double u_in = pot::evaluate(p, a);
    const double xa = std::log(a);
    prob.regions.push_back({x0, xa, k2 - 2.0 * cfg.mass_m * u_in});
    prob.regions.push_back({xa, x1, k2});
  } else {
    prob.regions.push_back({x0, x1, k2});
  }
  return prob;
}

double g_of(double order, double wave_sq, double x) {
  return order * order - wave_sq * std::exp(2.0 * x);
}

// Ascending series of the regular solution r^nu (1 + ...), from the ODE.
void frobenius(double order, double wave_sq, double r, double& value, double& r_deriv) {
  double term = 1.0;
  double sum = 1.0;
  double dsum = order;  // sum of (nu + 2j) c_j r^{2j}
  const double r2 = r * r;
  for (int j = 1; j < 200; ++j) {
    term *= -wave_sq * r2 / (4.0 * j * (j + order));
    sum += term;
    dsum += (order + 2.0 * j) * term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  const double rn = std::pow(r, order);
  value = rn * sum;
  r_deriv = rn * dsum / r;
}

// Taylor step for phi'' = g(x) phi with g = nu^2 - w e^{2x}, from (phi, phi') at x.
double taylor_step(double order, double wave_sq, double x, double phi, double dphi, double h) {
  constexpr int kOrder = 12;
  double gder[kOrder + 1];
  const double e2x = std::exp(2.0 * x);
  gder[0] = order * order - wave_sq * e2x;
  double pow2 = 1.0;
  for (int j = 1; j <= kOrder; ++j) {
    pow2 *= 2.0;
    gder[j] = -pow2 * wave_sq * e2x;
  }
  double d[kOrder + 1];
  d[0] = phi;
  d[1] = dphi;
  for (int n = 0; n + 2 <= kOrder; ++n) {
    double binom = 1.0;
    double acc = 0.0;
    for (int j = 0; j <= n; ++j) {
      acc += binom * gder[j] * d[n - j];
      binom = binom * (n - j) / (j + 1);
    }
    d[n + 2] = acc;
  }
  double result = 0.0;
  double hp = 1.0;
  double fact = 1.0;
  for (int n = 0; n <= kOrder; ++n) {
    if (n > 0) {
      hp *= h;
      fact *= n;
    }
    result += d[n] * hp / fact;
  }
  return result;
}

// Extended precision: the recurrence runs for tens of thousands of steps.
using wide = long double;

wide numerov_next(wide h2, wide g_prev, wide g_cur, wide g_next, wide phi_prev, wide phi_cur) {
  return (2.0L * phi_cur * (1.0L + 5.0L * h2 * g_cur / 12.0L) -
          phi_prev * (1.0L - h2 * g_prev / 12.0L)) /
         (1.0L - h2 * g_next / 12.0L);
}

void solve2x2(double m00, double m01, double m10, double m11, double y0, double y1, double& b,
              double& c, double& cond) {
  const double det = m00 * m11 - m01 * m10;
  // singular values of a 2x2 matrix
  const double fro2 = m00 * m00 + m01 * m01 + m10 * m10 + m11 * m11;
  const double disc = std::sqrt(std::max(0.0, fro2 * fro2 - 4.0 * det * det));
  const double smax = std::sqrt(0.5 * (fro2 + disc));
  const double smin = std::abs(det) / smax;
  cond = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
  b = (y0 * m11 - m01 * y1) / det;
  c = (m00 * y1 - m10 * y0) / det;
}

constexpr double kMaxCondition = 1e8;

}  // namespace

void RadialGrid::validate() const {
  if (!(r_min > 0.0) || !(r_max > r_min) || !std::isfinite(r_max)) {
    throw DomainError("RadialGrid: need 0 < r_min < r_max");
  }
  if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("RadialGrid: step must be > 0");
}

RadialGrid RadialGrid::for_problem(const ScatteringConfig& cfg, const pot::PotentialSpec& p) {
  cfg.validate();
  RadialGrid g;
  const double k = cfg.wavenumber_k;
  double range = 0.0;
  if (const auto* d = std::get_if<pot::RegularizedDelta>(&p)) range = d->radius_a;
  g.r_min = 1e-6;
  if (range > 0.0 && range <= 10.0 * g.r_min) g.r_min = range * 1e-3;
  g.r_max = range + 5.0 * 2.0 * pi / k;
  g.step = std::min(0.02, 6e-3 / (k * g.r_max));
  return g;
}

RadialSolution integrate_radial(int ell, const ScatteringConfig& cfg,
                                const pot::PotentialSpec& p, const RadialGrid& grid) {
  cfg.validate();
  pot::validate(p);
  grid.validate();
  const Problem prob = describe(ell, cfg, p, grid);

  // Numerov is 4th order in h*sqrt|g|; reject steps where that product is large.
  constexpr double kMaxPhaseStep = 0.2;
  for (const Region& reg : prob.regions) {
    const double gmax = std::max(std::abs(g_of(prob.order, reg.wave_sq, reg.x_begin)),
                                 std::abs(g_of(prob.order, reg.wave_sq, reg.x_end)));
    if (grid.step * std::sqrt(gmax) > kMaxPhaseStep) {
      throw AccuracyError("integrate_radial: step " + std::to_string(grid.step) +
                          " too coarse (step*sqrt|g| = " +
                          std::to_string(grid.step * std::sqrt(gmax)) + ")");
    }
  }

  std::vector<double> xs;
  std::vector<double> phis;
  std::vector<std::size_t> starts;

  double phi_boundary = 0.0;
  double dphi_boundary = 0.0;  // d phi / dx at the start of the current region

  for (std::size_t ri = 0; ri < prob.regions.size(); ++ri) {
    const Region& reg = prob.regions[ri];
    const double span = reg.x_end - reg.x_begin;
    const int n = std::max(4, static_cast<int>(std::ceil(span / grid.step)));
    const double h = span / n;
    const wide h2 = static_cast<wide>(span) * span / (static_cast<wide>(n) * n);
    auto g = [&](wide x) {
      return static_cast<wide>(prob.order) * prob.order - reg.wave_sq * std::exp(2.0L * x);
    };

    double phi0 = 0.0;
    double phi1 = 0.0;
    if (ri == 0) {
      double v = 0.0;
      double dr = 0.0;
      frobenius(prob.order, reg.wave_sq, std::exp(reg.x_begin), v, dr);
      phi0 = v;
      frobenius(prob.order, reg.wave_sq, std::exp(reg.x_begin + h), v, dr);
      phi1 = v;
      starts.push_back(0);
      xs.push_back(reg.x_begin);
      phis.push_back(phi0);
    } else {
      phi0 = phi_boundary;
      phi1 = taylor_step(prob.order, reg.wave_sq, reg.x_begin, phi_boundary, dphi_boundary, h);
      starts.push_back(xs.size() - 1);
    }

    const wide hw = static_cast<wide>(span) / n;
    wide x_prev = reg.x_begin;
    wide x_cur = reg.x_begin + hw;
    xs.push_back(static_cast<double>(x_cur));
    phis.push_back(phi1);
    wide prev = phi0;
    wide cur = phi1;
    for (int i = 2; i <= n; ++i) {
      const wide x_next = reg.x_begin + i * hw;
      const wide next = numerov_next(h2, g(x_prev), g(x_cur), g(x_next), prev, cur);
      prev = cur;
      cur = next;
      x_prev = x_cur;
      x_cur = x_next;
      xs.push_back(i == n ? reg.x_end : static_cast<double>(x_next));
      phis.push_back(static_cast<double>(next));
    }

    if (ri + 1 < prob.regions.size()) {
      // one step past the edge with this region's g, then the Numerov-consistent derivative
      const wide x_over = reg.x_end + hw;
      const wide over = numerov_next(h2, g(x_prev), g(reg.x_end), g(x_over), prev, cur);
      const wide gp = g(x_over);
      const wide gm = g(x_prev);
      phi_boundary = static_cast<double>(cur);
      dphi_boundary = static_cast<double>((over - prev) / (2.0L * hw) - hw * (gp * over - gm * prev) / 12.0L);
    }
  }

  // normalize to unit peak so samples stay O(1) regardless of the start value
  double peak = 0.0;
  for (double v : phis) peak = std::max(peak, std::abs(v));
  std::vector<double> radii;
  radii.reserve(xs.size());
  for (double x : xs) radii.push_back(std::exp(x));
  radii.back() = grid.r_max;
  for (std::size_t s = 1; s < starts.size(); ++s) {
    if (const auto* d = std::get_if<pot::RegularizedDelta>(&p)) radii[starts[s]] = d->radius_a;
  }
  for (double& v : phis) v /= peak;
  return RadialSolution::integrated(ell, cfg.wavenumber_k, prob.order, std::move(radii),
                                    std::move(phis), std::move(starts));
}

ExtractedPhase extract_phase_shift(const RadialSolution& sol, const ScatteringConfig& cfg,
                                   int ell) {
  cfg.validate();
  const double k = cfg.wavenumber_k;
  const double quarter = pi / (2.0 * k);
  FitRadii radii;
  if (sol.provenance() == Provenance::Integrated) {
    auto r = sol.radii();
    radii.r2 = r.back();
    const double target = radii.r2 - quarter;
    auto it = std::lower_bound(r.begin(), r.end(), target);
    if (it == r.end() || it == r.begin()) {
      throw ConditioningError("extract_phase_shift: domain shorter than a quarter wavelength");
    }
    radii.r1 = (*it - target) < (target - *(it - 1)) ? *it : *(it - 1);
  } else {
    if (!std::isfinite(sol.domain_max())) {
      throw DomainError("extract_phase_shift: closed-form solution needs a finite domain_max");
    }
    radii.r2 = sol.domain_max();
    radii.r1 = radii.r2 - quarter;
  }
  return extract_phase_shift(sol, cfg, ell, radii);
}

ExtractedPhase extract_phase_shift(const RadialSolution& sol, const ScatteringConfig& cfg,
                                   int ell, FitRadii radii) {
  cfg.validate();
  if (!(radii.r1 > 0.0) || !(radii.r2 > radii.r1)) {
    throw DomainError("extract_phase_shift: need 0 < r1 < r2");
  }
  const double k = cfg.wavenumber_k;
  const double nu0 = sol.reference_order();
  const double x1 = k * radii.r1;
  const double x2 = k * radii.r2;

  ExtractedPhase out;
  out.radii = radii;
  solve2x2(specfun::bessel_j(nu0, x1), specfun::bessel_y(nu0, x1), specfun::bessel_j(nu0, x2),
           specfun::bessel_y(nu0, x2), sol.value(radii.r1), sol.value(radii.r2), out.b, out.c,
           out.condition_number);
  if (!(out.condition_number < kMaxCondition)) {
    throw ConditioningError("extract_phase_shift: fit radii ill-conditioned (cond = " +
                            std::to_string(out.condition_number) + "); re-pick r1, r2");
  }
  const double tan_sr = -out.c / out.b;
  const double l = std::abs(static_cast<double>(ell));
  if (nu0 == l) {
    out.shift = PhaseShift::from_tan(ell, tan_sr);
  } else {
    out.shift = PhaseShift::from_angle(ell, std::atan(tan_sr) + 0.5 * pi * (l - nu0));
  }
  return out;
}

RadialSolution normalized(const RadialSolution& sol, const ExtractedPhase& fit) {
  const double d = std::atan(-fit.c / fit.b);
  return sol.scaled(std::cos(d) / fit.b);
}

}  // namespace scatter2d::oracle
