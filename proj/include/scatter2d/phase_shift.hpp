#pragma once

#include <complex>

namespace scatter2d {

/// Mass and wavenumber of the incoming particle (hbar = 1, E = k^2 / 2m).
struct ScatteringConfig {
  double mass_m = 0.5;
  double wavenumber_k = 1.0;

  [[nodiscard]] double energy() const { return wavenumber_k * wavenumber_k / (2.0 * mass_m); }
  /// Throws DomainError unless m > 0 and k > 0.
  void validate() const;
};

/// Phase shift of one partial wave.
///
/// tan_delta is the primary quantity and is +inf at resonance.
/// delta_principal lies in (-pi/2, pi/2]; branch_offset counts the extra
/// multiples of pi carried by closed forms that fix the branch.
struct PhaseShift {
  int ell = 0;
  double tan_delta = 0.0;
  double delta_principal = 0.0;
  int branch_offset = 0;

  static PhaseShift from_tan(int ell, double tan_delta);
  static PhaseShift from_angle(int ell, double delta);

  [[nodiscard]] double delta() const;
  [[nodiscard]] double sin_delta() const;
  [[nodiscard]] bool resonant() const;
  /// S-matrix element exp(2 i delta); independent of the branch.
  [[nodiscard]] std::complex<double> s_element() const;

  friend bool operator==(const PhaseShift&, const PhaseShift&) = default;
};

/// Distance between two angles modulo pi, in [0, pi/2].
double angle_distance_mod_pi(double a, double b);

}  // namespace scatter2d
