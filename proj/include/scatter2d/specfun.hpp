#pragma once

#include <complex>

namespace scatter2d::specfun {

/// Euler-Mascheroni constant.
inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

/// Real Bessel order nu >= 0.
class Order {
 public:
  constexpr Order(double nu) : nu_(nu) {}  // NOLINT: implicit by design of call sites
  [[nodiscard]] constexpr double value() const { return nu_; }
  [[nodiscard]] bool valid() const;

 private:
  double nu_;
};

double bessel_j(Order nu, double x);
double bessel_y(Order nu, double x);
double bessel_i(Order nu, double x);
/// exp(-x) * I_nu(x); finite for every x >= 0.
double bessel_i_scaled(Order nu, double x);
double bessel_k(Order nu, double x);

// Derivatives with respect to the argument, via the raising recurrences.
double bessel_j_prime(Order nu, double x);
double bessel_y_prime(Order nu, double x);
double bessel_i_prime(Order nu, double x);
double bessel_k_prime(Order nu, double x);

/// H0(x) = J0(x) + i Y0(x) on the positive real axis.
std::complex<double> hankel0(double x);
/// H1(x) = J1(x) + i Y1(x); H0' = -H1.
std::complex<double> hankel1(double x);

/// Gamma(z), reflection formula for z < 1/2. Throws DomainError at poles.
double gamma_fn(double z);
/// 1/Gamma(z), zero at the poles of Gamma.
double reciprocal_gamma(double z);

}  // namespace scatter2d::specfun
