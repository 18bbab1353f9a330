#pragma once

#include <string>
#include <string_view>
#include <variant>

namespace scatter2d::potentials {

/// v(a) = 2 pi / (ln(a/a0) + gamma_E): the renormalized, running coupling.
struct LogRunning {
  double a0 = 1.0;
  friend bool operator==(const LogRunning&, const LogRunning&) = default;
};

/// v(a) = v: the scale-covariant choice. Either sign is accepted.
struct ConstantStrength {
  double v = 0.0;
  friend bool operator==(const ConstantStrength&, const ConstantStrength&) = default;
};

using Scheme = std::variant<LogRunning, ConstantStrength>;

/// U(r) = lambda / r^2.
struct InverseSquare {
  double lambda = 0.0;
  friend bool operator==(const InverseSquare&, const InverseSquare&) = default;
};

/// Disc of radius a carrying strength v(a) / (pi a^2).
struct RegularizedDelta {
  Scheme scheme;
  double radius_a = 1.0;
  friend bool operator==(const RegularizedDelta&, const RegularizedDelta&) = default;
};

using PotentialSpec = std::variant<InverseSquare, RegularizedDelta>;

/// Dilation t -> rho t, x -> rho^{-1/2} x.
struct ScaleTransformation {
  double rho = 1.0;
};

/// A transformed potential written as factor * (member of the same family).
struct ScaledPotential {
  PotentialSpec spec;
  double factor = 1.0;
};

/// Throws DomainError on a malformed spec (a <= 0, a0 <= 0, non-finite values).
void validate(const PotentialSpec& p);

/// Radius at which the running coupling has its pole, a0 * exp(-gamma_E).
double pole_radius(const LogRunning& s);

/// v(a); throws PoleError at the LogRunning pole.
double coupling(const Scheme& s, double a);

/// U(r) for r > 0.
double evaluate(const PotentialSpec& p, double r);

ScaledPotential scale_transform(const PotentialSpec& p, ScaleTransformation t);

/// v(a / sqrt(rho)) - v(a); zero iff the regularized well scales like delta^2(r).
double scale_covariance_defect(const Scheme& s, double a, double rho);

/// Flat "key=value key=value" form used by the command-line driver.
std::string to_key_value(const PotentialSpec& p);
PotentialSpec parse_key_value(std::string_view text);

}  // namespace scatter2d::potentials
