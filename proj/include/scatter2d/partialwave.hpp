#pragma once

#include <vector>

#include "scatter2d/phase_shift.hpp"
#include "scatter2d/potentials.hpp"
#include "scatter2d/radial_solution.hpp"

namespace scatter2d::partialwave {

/// nu(l) = sqrt(l^2 + 2m lambda). Throws FallToCenterError when l^2 + 2m lambda <= 0
/// (lambda = 0 with l = 0 is the free S wave and returns 0).
double effective_order(int ell, double m, double lambda);

/// delta_l = (pi/2)(|l| - nu(l)), with the full angle kept via branch_offset.
/// Independent of k.
PhaseShift inverse_square_phase_shift(int ell, double m, double lambda);

enum class InteriorBasis { Oscillatory, Evanescent };

/// Interior wave inside the disc: kappa^2 = k^2 - 2m v(a) / (pi a^2).
struct InternalWave {
  double kappa_sq = 0.0;
  InteriorBasis basis = InteriorBasis::Oscillatory;
  /// sqrt|kappa^2|: kappa for the J basis, q for the I basis.
  double wavenumber = 0.0;
  /// wavenumber * a, computed without forming a^2 (finite for any a > 0).
  double edge_argument = 0.0;
};

InternalWave internal_wavenumber(const ScatteringConfig& cfg, const potentials::RegularizedDelta& p);

/// Exterior b J_l(kr) + c Y_l(kr) matched to interior d Z_l(kappa r) at r = a,
/// with Z = J (kappa^2 > 0), I (kappa^2 < 0) or (r/a)^|l| (kappa^2 = 0).
/// Normalized to b = cos delta, c = -sin delta with delta principal.
struct MatchingCoefficients {
  double b = 1.0;
  double c = 0.0;
  double d = 1.0;
  /// Y_r Z - Y Z_r at r = a (r-derivatives); kappa times the textbook D.
  double denom_D = 1.0;
};

/// Throws ResonanceError when the matching denominator vanishes.
MatchingCoefficients match_at_boundary(int ell, const ScatteringConfig& cfg,
                                       const potentials::RegularizedDelta& p);

/// tan delta = -c/b from the matching.
PhaseShift phase_shift_finite_a(int ell, const ScatteringConfig& cfg,
                                const potentials::RegularizedDelta& p);

/// Finite-a phase-shift sequence a_n = a_start * shrink^n and its a -> 0 limit.
struct ZeroRadiusSweep {
  std::vector<double> radii;
  std::vector<double> tan_deltas;
  /// Limit estimate after each term.
  std::vector<double> estimates;
  PhaseShift limit;
};

/// Extrapolates tan delta(a_n) to a -> 0 with a three-point rational
/// (Bulirsch-Stoer) tableau in u = 1/ln(a), which is exact for the
/// (pi/2)/(ln a + C) form of a fixed-strength well. Stops when successive
/// estimates agree within tol. ConstantStrength limits must vanish
/// within 10 tol. Throws ConvergenceError after 60 terms without convergence.
ZeroRadiusSweep zero_radius_sweep(int ell, const ScatteringConfig& cfg,
                                  const potentials::Scheme& s, double a_start, double shrink,
                                  double tol);

PhaseShift zero_radius_limit(int ell, const ScatteringConfig& cfg, const potentials::Scheme& s,
                             double a_start, double shrink, double tol);

/// tan delta_0 = (pi/2) / ln(k a0 / 2). At k a0 = 2 returns the resonance sentinel.
PhaseShift scheme_a_closed_form(double k, double a0);

/// Exact radial wave of the potential as a closed form: J_nu(kr) for 1/r^2,
/// the matched piecewise solution (b = cos delta) for a disc.
oracle::RadialSolution exact_radial_solution(int ell, const ScatteringConfig& cfg,
                                             const potentials::PotentialSpec& p);

}  // namespace scatter2d::partialwave
