#include "scatter2d/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/sin_pi.hpp>

#include "scatter2d/errors.hpp"

namespace scatter2d::specfun {
namespace {

namespace bmp = boost::math::policies;

// Overflow saturates to +-inf instead of throwing: Y_nu and K_nu are
// legitimately huge at tiny arguments and callers form ratios from them.
using Policy = bmp::policy<bmp::overflow_error<bmp::ignore_error>,
                           bmp::underflow_error<bmp::ignore_error>,
                           bmp::denorm_error<bmp::ignore_error>,
                           bmp::evaluation_error<bmp::ignore_error>>;

void require_order(Order nu, const char* fn) {
  if (!nu.valid()) {
    throw DomainError(std::string(fn) + ": order must be finite and >= 0, got " +
                      std::to_string(nu.value()));
  }
}

void require_nonnegative(double x, const char* fn) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(fn) + ": argument must be finite and >= 0, got " +
                      std::to_string(x));
  }
}

void require_positive(double x, const char* fn) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(fn) + ": argument must be finite and > 0, got " +
                      std::to_string(x));
  }
}

constexpr double kScaledSwitch = 600.0;

// Hankel expansion of exp(-x) I_nu(x) for large x.
double bessel_i_scaled_asymptotic(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(mu - odd * odd) / (8.0 * k * x);
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

}  // namespace

bool Order::valid() const { return std::isfinite(nu_) && nu_ >= 0.0; }

double bessel_j(Order nu, double x) {
  require_order(nu, "bessel_j");
  require_nonnegative(x, "bessel_j");
  return boost::math::cyl_bessel_j(nu.value(), x, Policy());
}

double bessel_y(Order nu, double x) {
  require_order(nu, "bessel_y");
  require_positive(x, "bessel_y");
  return boost::math::cyl_neumann(nu.value(), x, Policy());
}

double bessel_i(Order nu, double x) {
  require_order(nu, "bessel_i");
  require_nonnegative(x, "bessel_i");
  return boost::math::cyl_bessel_i(nu.value(), x, Policy());
}

double bessel_i_scaled(Order nu, double x) {
  require_order(nu, "bessel_i_scaled");
  require_nonnegative(x, "bessel_i_scaled");
  if (x < kScaledSwitch) {
    return std::exp(-x) * boost::math::cyl_bessel_i(nu.value(), x, Policy());
  }
  return bessel_i_scaled_asymptotic(nu.value(), x);
}

double bessel_k(Order nu, double x) {
  require_order(nu, "bessel_k");
  require_positive(x, "bessel_k");
  return boost::math::cyl_bessel_k(nu.value(), x, Policy());
}

double bessel_j_prime(Order nu, double x) {
  const double n = nu.value();
  if (x == 0.0) {
    require_order(nu, "bessel_j_prime");
    if (n == 1.0) return 0.5;
    return (n > 0.0 && n < 1.0) ? std::numeric_limits<double>::infinity() : 0.0;
  }
  return -bessel_j(n + 1.0, x) + (n / x) * bessel_j(nu, x);
}

double bessel_y_prime(Order nu, double x) {
  const double n = nu.value();
  return -bessel_y(n + 1.0, x) + (n / x) * bessel_y(nu, x);
}

double bessel_i_prime(Order nu, double x) {
  const double n = nu.value();
  if (x == 0.0) {
    require_order(nu, "bessel_i_prime");
    if (n == 1.0) return 0.5;
    return (n > 0.0 && n < 1.0) ? std::numeric_limits<double>::infinity() : 0.0;
  }
  return bessel_i(n + 1.0, x) + (n / x) * bessel_i(nu, x);
}

double bessel_k_prime(Order nu, double x) {
  const double n = nu.value();
  return -bessel_k(n + 1.0, x) + (n / x) * bessel_k(nu, x);
}

std::complex<double> hankel0(double x) {
  require_positive(x, "hankel0");
  return {bessel_j(0.0, x), bessel_y(0.0, x)};
}

std::complex<double> hankel1(double x) {
  require_positive(x, "hankel1");
  return {bessel_j(1.0, x), bessel_y(1.0, x)};
}

double gamma_fn(double z) {
  if (!std::isfinite(z)) throw DomainError("gamma_fn: non-finite argument");
  if (z <= 0.0 && z == std::nearbyint(z)) {
    throw DomainError("gamma_fn: pole at non-positive integer " + std::to_string(z));
  }
  if (z < 0.5) {
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::numbers::pi / (boost::math::sin_pi(z) * std::tgamma(1.0 - z));
  }
  return std::tgamma(z);
}

double reciprocal_gamma(double z) {
  if (z <= 0.0 && z == std::nearbyint(z)) return 0.0;
  if (z < 0.5) {
    return boost::math::sin_pi(z) * std::tgamma(1.0 - z) / std::numbers::pi;
  }
  const double g = std::tgamma(z);
  return std::isfinite(g) ? 1.0 / g : 0.0;
}

}  // namespace scatter2d::specfun
