#include "scatter2d/phase_shift.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "scatter2d/errors.hpp"

namespace scatter2d {

using std::numbers::pi;

void ScatteringConfig::validate() const {
  if (!(mass_m > 0.0) || !std::isfinite(mass_m)) {
    throw DomainError("mass m must be finite and > 0");
  }
  if (!(wavenumber_k > 0.0) || !std::isfinite(wavenumber_k)) {
    throw DomainError("wavenumber k must be finite and > 0");
  }
}

PhaseShift PhaseShift::from_tan(int ell, double tan_delta) {
  PhaseShift s;
  s.ell = ell;
  if (std::isinf(tan_delta)) {
    s.tan_delta = std::numeric_limits<double>::infinity();
    s.delta_principal = pi / 2;
  } else {
    s.tan_delta = tan_delta;
    s.delta_principal = std::atan(tan_delta);
  }
  return s;
}

PhaseShift PhaseShift::from_angle(int ell, double delta) {
  // delta = principal + n*pi with principal in (-pi/2, pi/2]
  const double n = std::ceil((delta - pi / 2) / pi);
  double principal = delta - n * pi;
  PhaseShift s;
  s.ell = ell;
  s.branch_offset = static_cast<int>(n);
  if (std::abs(principal - pi / 2) < 8 * std::numeric_limits<double>::epsilon()) {
    s.delta_principal = pi / 2;
    s.tan_delta = std::numeric_limits<double>::infinity();
  } else {
    s.delta_principal = principal;
    s.tan_delta = std::tan(principal);
  }
  return s;
}

double PhaseShift::delta() const { return delta_principal + branch_offset * pi; }

double PhaseShift::sin_delta() const { return std::sin(delta()); }

bool PhaseShift::resonant() const { return std::isinf(tan_delta); }

std::complex<double> PhaseShift::s_element() const {
  return std::polar(1.0, 2.0 * delta_principal);
}

double angle_distance_mod_pi(double a, double b) {
  double d = std::remainder(a - b, pi);
  return std::abs(d);
}

}  // namespace scatter2d
