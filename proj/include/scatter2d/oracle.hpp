#pragma once

#include "scatter2d/phase_shift.hpp"
#include "scatter2d/potentials.hpp"
#include "scatter2d/radial_solution.hpp"

namespace scatter2d::oracle {

/// Integration grid. Nodes are uniform in ln r within each smooth segment;
/// step is the spacing in ln r. A well edge r = a is always a node.
struct RadialGrid {
  double r_min = 1e-6;
  double r_max = 50.0;
  double step = 1e-4;

  void validate() const;

  /// Grid reaching five wavelengths beyond the well edge (or the origin for
  /// 1/r^2) with step chosen so that k r_max * step <= 6e-3.
  static RadialGrid for_problem(const ScatteringConfig& cfg, const potentials::PotentialSpec& p);
};

/// Regular solution of the radial equation, integrated outward from r_min.
///
/// In x = ln r the radial equation reads phi'' = (nu^2 - (k^2 - 2mU) r^2) phi
/// with no first-derivative term, so a Numerov recurrence applies directly.
/// The start is the ascending (Frobenius) series of the regular solution,
/// built from the ODE itself. Throws AccuracyError if step is too coarse.
RadialSolution integrate_radial(int ell, const ScatteringConfig& cfg,
                                const potentials::PotentialSpec& p, const RadialGrid& grid);

struct FitRadii {
  double r1 = 0.0;
  double r2 = 0.0;
};

struct ExtractedPhase {
  PhaseShift shift;
  /// phi = b J_nu0(kr) + c Y_nu0(kr) at the fit radii, nu0 the reference order.
  double b = 0.0;
  double c = 0.0;
  double condition_number = 0.0;
  FitRadii radii;
};

/// Fit (b, c) at the two outermost suitable radii (r2 = end of domain,
/// r1 about a quarter wavelength inside) and read tan delta = -c/b.
/// For 1/r^2 the fitted short-range phase is added to (pi/2)(|l| - nu).
ExtractedPhase extract_phase_shift(const RadialSolution& sol, const ScatteringConfig& cfg,
                                   int ell);
ExtractedPhase extract_phase_shift(const RadialSolution& sol, const ScatteringConfig& cfg,
                                   int ell, FitRadii radii);

/// Rescale so that the exterior part is cos(d) J - sin(d) Y, d the fitted
/// short-range phase (the normalization the integral representation assumes).
RadialSolution normalized(const RadialSolution& sol, const ExtractedPhase& fit);

}  // namespace scatter2d::oracle
