#include "scatter2d/sae.hpp"

#include <cmath>
#include <numbers>

#include "scatter2d/errors.hpp"
#include "scatter2d/specfun.hpp"

namespace scatter2d::sae {

using std::numbers::pi;

std::complex<double> extension_alpha(ExtensionParameter c, double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("extension_alpha: k must be > 0");
  if (c.infinite) return -1.0;
  if (!std::isfinite(c.c)) throw DomainError("extension_alpha: c must be finite or Infinity");
  const std::complex<double> ik(0.0, k);
  return (ik - c.c) / (ik + c.c);
}

double boundary_residual(const SWaveSolution& s1, const SWaveSolution& s2) {
  return 2.0 / pi * (s1.b0 * s2.b0) * (s2.tan_delta0 - s1.tan_delta0);
}

double boundary_bracket(const SWaveSolution& s1, const SWaveSolution& s2, double k, double r) {
  if (!(k > 0.0) || !(r > 0.0)) throw DomainError("boundary_bracket: need k > 0 and r > 0");
  const double x = k * r;
  const double j = specfun::bessel_j(0, x);
  const double y = specfun::bessel_y(0, x);
  const double jp = k * specfun::bessel_j_prime(0, x);
  const double yp = k * specfun::bessel_y_prime(0, x);
  const double sr = std::sqrt(r);
  // phi~ = sqrt(r) phi, phi~' = phi / (2 sqrt(r)) + sqrt(r) phi'
  auto tilde = [&](const SWaveSolution& s, double& v, double& d) {
    const double phi = s.b0 * (j + s.tan_delta0 * y);
    const double dphi = s.b0 * (jp + s.tan_delta0 * yp);
    v = sr * phi;
    d = phi / (2.0 * sr) + sr * dphi;
  };
  double v1, d1, v2, d2;
  tilde(s1, v1, d1);
  tilde(s2, v2, d2);
  return v1 * d2 - d1 * v2;
}

NearOriginExpansion near_origin_expansion(double tan_delta0, double k, double b0) {
  if (!(k > 0.0)) throw DomainError("near_origin_expansion: k must be > 0");
  return {b0 * (1.0 + 2.0 * specfun::euler_gamma / pi * tan_delta0), b0 * (2.0 / pi) * tan_delta0, k};
}

double near_origin_value(const NearOriginExpansion& e, double r) {
  if (!(r > 0.0)) throw DomainError("near_origin_value: r must be > 0");
  return std::sqrt(r) * (e.A + e.B * std::log(e.k * r / 2.0));
}

double near_origin_derivative(const NearOriginExpansion& e, double r) {
  if (!(r > 0.0)) throw DomainError("near_origin_derivative: r must be > 0");
  const double sr = std::sqrt(r);
  return (e.A + e.B * std::log(e.k * r / 2.0)) / (2.0 * sr) + e.B / sr;
}

NearOriginExpansion dilation_apply(const NearOriginExpansion& e) {
  return {1.5 * e.A + e.B, 1.5 * e.B, e.k};
}

bool scale_invariance_test(double tan_delta0, double tol) {
  if (!(tol > 0.0)) throw DomainError("scale_invariance_test: tol must be > 0");
  if (!std::isfinite(tan_delta0)) return false;
  const NearOriginExpansion e = near_origin_expansion(tan_delta0, 1.0, 1.0);
  const NearOriginExpansion d = dilation_apply(e);
  if (e.A == 0.0 || d.A == 0.0) return false;
  return std::abs(d.B / d.A - e.B / e.A) < tol;
}

}  // namespace scatter2d::sae
