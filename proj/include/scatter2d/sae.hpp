#pragma once

#include <complex>

namespace scatter2d::sae {

/// c in the boundary condition phi~'(0) = -c phi~(0), or the Infinity element.
struct ExtensionParameter {
  double c = 0.0;
  bool infinite = false;

  static ExtensionParameter finite(double c) { return {c, false}; }
  static ExtensionParameter infinity() { return {0.0, true}; }
};

/// Exterior S wave b0 (J0(kr) + tan_delta0 Y0(kr)).
struct SWaveSolution {
  double tan_delta0 = 0.0;
  double b0 = 1.0;
};

/// phi~ = sqrt(r) (A + B ln(kr/2)) + o(sqrt(r)) near the origin.
struct NearOriginExpansion {
  double A = 1.0;
  double B = 0.0;
  double k = 1.0;
};

/// alpha = (ik - c)/(ik + c); the Infinity element maps to -1.
std::complex<double> extension_alpha(ExtensionParameter c, double k);

/// lim_{r->0} (phi~1 phi~2' - phi~1' phi~2) = (2/pi) b1 b2 (t2 - t1).
double boundary_residual(const SWaveSolution& s1, const SWaveSolution& s2);

/// The same bracket evaluated from Bessel functions at radius r.
double boundary_bracket(const SWaveSolution& s1, const SWaveSolution& s2, double k, double r);

NearOriginExpansion near_origin_expansion(double tan_delta0, double k, double b0 = 1.0);

/// sqrt(r) (A + B ln(kr/2)) and its r-derivative.
double near_origin_value(const NearOriginExpansion& e, double r);
double near_origin_derivative(const NearOriginExpansion& e, double r);

/// (r d/dr + 1) acting on sqrt(r) (A + B ln(kr/2)): A' = 3A/2 + B, B' = 3B/2.
NearOriginExpansion dilation_apply(const NearOriginExpansion& e);

/// True when the dilation leaves B/A unchanged within tol (k = 1, b0 = 1).
/// A vanishing A before or after the dilation counts as a change.
bool scale_invariance_test(double tan_delta0, double tol);

}  // namespace scatter2d::sae
