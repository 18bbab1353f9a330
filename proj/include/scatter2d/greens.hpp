#pragma once

#include <complex>
#include <map>
#include <span>

#include "scatter2d/phase_shift.hpp"
#include "scatter2d/potentials.hpp"
#include "scatter2d/radial_solution.hpp"

namespace scatter2d::greens {

/// Quadrature controls for the integral representation.
/// r_cut is in units of 1/k: the finite part runs over kr in [0, r_cut].
struct QuadratureSpec {
  double r_cut = 200.0;
  double abs_tol = 1e-10;
  int max_subdivisions = 4000;

  void validate() const;
};

/// f(theta) = (2 pi k)^{-1/2} sum_{l=-L..L} (S_l - 1) e^{i l theta}.
struct ScatteringAmplitude {
  double k = 1.0;
  std::map<int, std::complex<double>> s_elements;
  int truncation = 0;

  [[nodiscard]] std::complex<double> operator()(double theta) const;
};

struct AmplitudeValue {
  std::complex<double> f;
  double dsigma = 0.0;
};

/// G = (i/4) H0(k * separation). Throws DomainError at separation = 0.
std::complex<double> green_function(double k, double separation);

/// sum_{l=-L..L} i^l J_l(kr) e^{i l theta}
std::complex<double> expand_plane_wave(double k, double r, double theta, int L);

/// sin delta_l = -(pi/2) int_0^inf r J_l(kr) 2mU(r) phi_l(r) dr, phi_l normalized
/// to the asymptotic amplitude of J (b = cos delta for a disc, J_nu for 1/r^2).
///
/// Disc: the integrand lives on [0, a]. 1/r^2: adaptive quadrature up to
/// kr = r_cut on a mesh graded toward the origin, where the integrand goes as
/// r^{|l| + nu - 1}; beyond r_cut phi is taken as J_nu and the tail of
/// J_l J_nu / x is summed from the Hankel expansion.
/// Throws DomainError when |l| + nu <= 1e-6.
double integral_phase_shift(int ell, const ScatteringConfig& cfg,
                            const potentials::PotentialSpec& p,
                            const oracle::RadialSolution& radial, const QuadratureSpec& q = {});

/// int_0^inf J_alpha(x) J_beta(x) x^{-gamma} dx as a ratio of Gamma functions.
/// Requires alpha + beta - gamma + 1 > 0 and gamma > 0; a Gamma pole in the
/// denominator gives 0.
double weber_schafheitlin(double alpha, double beta, double gamma_exp);

/// The same integral by graded adaptive quadrature plus asymptotic tail.
double weber_schafheitlin_quadrature(double alpha, double beta, double gamma_exp,
                                     double abs_tol = 1e-12);

/// sin delta_l for 1/r^2 from the Gamma-ratio integral:
/// -(pi/2) 2m lambda * WS(|l|, nu, 1).
double inverse_square_sin_delta(int ell, double m, double lambda);

/// Builds S_l for l = -L..L from shifts given for |l| = 0..L.
/// Throws DomainError on gaps or conflicting duplicates.
ScatteringAmplitude make_amplitude(std::span<const PhaseShift> shifts, double k);

AmplitudeValue scattering_amplitude(std::span<const PhaseShift> shifts, double k, double theta);

/// Outgoing part of psi+ at large r: f(theta) e^{i(kr - pi/4)} / sqrt(r).
std::complex<double> scattered_wave(const ScatteringAmplitude& amp, double r, double theta);

}  // namespace scatter2d::greens
