#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "generators.hpp"
#include "scatter2d/errors.hpp"
#include "scatter2d/greens.hpp"
#include "scatter2d/oracle.hpp"
#include "scatter2d/partialwave.hpp"
#include "scatter2d/quadrature.hpp"
#include "scatter2d/specfun.hpp"

using namespace scatter2d;
using namespace scatter2d::greens;
namespace pot = scatter2d::potentials;
using std::numbers::pi;
using cplx = std::complex<double>;

namespace {

std::vector<PhaseShift> inverse_square_shifts(double lambda, int L) {
  std::vector<PhaseShift> out;
  for (int l = 0; l <= L; ++l) out.push_back(partialwave::inverse_square_phase_shift(l, 0.5, lambda));
  return out;
}

}  // namespace

TEST_SUITE("quadrature") {
  TEST_CASE("gauss_kronrod") {
    const auto r = quadrature::gauss_kronrod([](double x) { return std::sin(x); }, 0, pi, 1e-13);
    CHECK(std::abs(r.value - 2) < 1e-13);
    const auto s = quadrature::gauss_kronrod([](double x) { return 1 / std::sqrt(x); }, 0, 1, 1e-10);
    CHECK(std::abs(s.value - 2) < 1e-9);
    CHECK(s.intervals > 1);
    CHECK(quadrature::gauss_kronrod([](double) { return 1.0; }, 2, 2, 1e-10).value == 0);
    CHECK_THROWS_AS(quadrature::gauss_kronrod([](double x) { return 1 / x; }, 0, 1, 1e-14, 0, 50),
                    ConvergenceError);
    CHECK_THROWS_AS(quadrature::gauss_kronrod([](double x) { return x; }, 0, 1, 0), DomainError);
  }
}

TEST_SUITE("greens") {
  TEST_CASE("green_function") {
    CHECK(std::abs(green_function(1, 1) - cplx(0, 0.25) * cplx(specfun::bessel_j(0, 1), specfun::bessel_y(0, 1))) <
          1e-16);
    CHECK_THROWS_AS(green_function(1, 0), DomainError);
    CHECK_THROWS_AS(green_function(0, 1), DomainError);
  }

  TEST_CASE("Helmholtz residual off the source") {
    const double k = 1.3;
    const double h = 1e-3;
    const double x = 2, y = 0;
    auto G = [k](double px, double py) { return green_function(k, std::hypot(px, py)); };
    // 4th-order 9-point Laplacian
    const cplx lap = (-G(x + 2 * h, y) + 16. * G(x + h, y) - 30. * G(x, y) + 16. * G(x - h, y) - G(x - 2 * h, y) -
                      G(x, y + 2 * h) + 16. * G(x, y + h) - 30. * G(x, y) + 16. * G(x, y - h) - G(x, y - 2 * h)) /
                     (12 * h * h);
    CHECK(std::abs(lap + k * k * G(x, y)) < 1e-6);
  }

  TEST_CASE("unit source strength") {
    const double k = 1, eps = 1e-3, h = 1e-7;
    // flux of grad G through the circle of radius eps
    const cplx dgdr = (green_function(k, eps + h) - green_function(k, eps - h)) / (2 * h);
    const cplx flux = 2 * pi * eps * dgdr;
    CHECK(std::abs(flux - cplx(-1, 0)) < 1e-3);
  }

  TEST_CASE("plane-wave expansion") {
    CHECK(std::abs(expand_plane_wave(1, 0, 0.7, 0) - 1.0) < 1e-16);
    CHECK(std::abs(expand_plane_wave(1, 0, 2.1, 12) - 1.0) < 1e-16);
    CHECK(std::abs(expand_plane_wave(1, 2, 0, 40) - std::polar(1.0, 2.0)) < 1e-12);
    double prev = 1e300;
    for (int L = 0; L <= 40; L += 10) {
      const double err = std::abs(expand_plane_wave(1, 5, 0.3, L) - std::polar(1.0, 5 * std::cos(0.3)));
      if (L >= 10) CHECK((err < prev || err < 1e-14));
      prev = err;
    }
    gen::for_all(100, 51, [](gen::Rng& g) {
      const double k = g.uniform(-3, 3), r = g.uniform(0, 4), th = g.uniform(-pi, pi);
      CHECK(std::abs(expand_plane_wave(k, r, th, 60) - std::polar(1.0, k * r * std::cos(th))) < 1e-12);
    });
    CHECK_THROWS_AS(expand_plane_wave(1, 1, 0, -1), DomainError);
  }

  TEST_CASE("Weber-Schafheitlin closed form") {
    CHECK(std::abs(weber_schafheitlin(1, 1, 1) - 0.5) < 1e-15);
    CHECK(std::abs(weber_schafheitlin(2.5, 2.5, 1) - 1 / 5.0) < 1e-10);
    CHECK(std::abs(weber_schafheitlin_quadrature(1, 1, 1) - 0.5) < 1e-10);
    CHECK(std::abs(weber_schafheitlin_quadrature(2.5, 2.5, 1) - 0.2) < 1e-10);
    // pole in the denominator: orthogonality-type zero, alpha - beta = 2, gamma = 1
    CHECK(weber_schafheitlin(3, 1, 1) == 0.0);
    CHECK(std::abs(weber_schafheitlin_quadrature(3, 1, 1)) < 1e-9);
    CHECK_THROWS_AS(weber_schafheitlin(0, 0, 1.5), DomainError);
    CHECK_THROWS_AS(weber_schafheitlin(1, 1, 0), DomainError);
    CHECK_THROWS_AS(weber_schafheitlin_quadrature(0.2, 0.1, 1.4), DomainError);
  }

  TEST_CASE("closed form agrees with quadrature on the convergent grid") {
    gen::for_all(12, 52, [](gen::Rng& g) {
      const double gamma = g.uniform(0.3, 2);
      const double alpha = g.uniform(0, 3);
      double beta = g.uniform(0, 3);
      if (alpha + beta - gamma + 1 < 0.2) beta = gamma - alpha + 0.2;
      CHECK(std::abs(weber_schafheitlin(alpha, beta, gamma) - weber_schafheitlin_quadrature(alpha, beta, gamma)) < 1e-8);
    });
  }

  TEST_CASE("reflection formula reproduces the inverse-square shift") {
    CHECK(std::abs(inverse_square_sin_delta(1, 0.5, 3) + 1) < 1e-14);
    gen::for_all(50, 53, [](gen::Rng& g) {
      const int l = g.integer(0, 6);
      const double lambda = g.uniform(0.05, 8);
      const double expect = std::sin(partialwave::inverse_square_phase_shift(l, 0.5, lambda).delta());
      CHECK(std::abs(inverse_square_sin_delta(l, 0.5, lambda) - expect) < 1e-12);
    });
  }

  TEST_CASE("integral phase shift for 1/r^2") {
    const ScatteringConfig cfg{0.5, 1};
    const auto free = partialwave::exact_radial_solution(0, cfg, pot::InverseSquare{0});
    CHECK(integral_phase_shift(0, cfg, pot::InverseSquare{0}, free) == 0);
    for (double tml : {0.5, 3.0}) {
      for (int l : {0, 1, 2}) {
        const pot::InverseSquare p{tml};
        const double s = integral_phase_shift(l, cfg, p, partialwave::exact_radial_solution(l, cfg, p));
        CHECK(std::abs(s - std::sin(partialwave::inverse_square_phase_shift(l, 0.5, tml).delta())) < 1e-6);
      }
    }
    const pot::InverseSquare weak{1e-13};
    CHECK_THROWS_AS(integral_phase_shift(0, cfg, weak, partialwave::exact_radial_solution(0, cfg, weak)), DomainError);
    CHECK_THROWS_AS(integral_phase_shift(0, cfg, pot::InverseSquare{1}, free, QuadratureSpec{10, 1e-10, 100}),
                    DomainError);
  }

  TEST_CASE("integral phase shift for a disc") {
    gen::for_all(20, 54, [](gen::Rng& g) {
      const ScatteringConfig cfg{0.5, g.uniform(0.3, 4)};
      const pot::RegularizedDelta d{pot::ConstantStrength{g.uniform(-20, 20)}, g.log_uniform(1e-4, 1)};
      const int l = g.integer(0, 2);
      const double s = integral_phase_shift(l, cfg, d, partialwave::exact_radial_solution(l, cfg, d));
      CHECK(std::abs(s - partialwave::phase_shift_finite_a(l, cfg, d).sin_delta()) < 1e-8);
    });
    const ScatteringConfig cfg{0.5, 1};
    const pot::RegularizedDelta zero{pot::ConstantStrength{0}, 0.5};
    CHECK(integral_phase_shift(0, cfg, zero, partialwave::exact_radial_solution(0, cfg, zero)) == 0);
  }

  TEST_CASE("integral phase shift from an integrated solution") {
    const ScatteringConfig cfg{0.5, 1.5};
    const pot::RegularizedDelta d{pot::LogRunning{1}, 0.05};
    const auto sol = oracle::integrate_radial(0, cfg, d, oracle::RadialGrid::for_problem(cfg, d));
    const auto norm = oracle::normalized(sol, oracle::extract_phase_shift(sol, cfg, 0));
    const double s = integral_phase_shift(0, cfg, d, norm);
    CHECK(std::abs(s - partialwave::phase_shift_finite_a(0, cfg, d).sin_delta()) < 1e-6);
  }

  TEST_CASE("scattering amplitude") {
    const std::vector<PhaseShift> none{PhaseShift::from_tan(0, 0), PhaseShift::from_tan(1, 0)};
    const auto z = scattering_amplitude(none, 1, 0.3);
    CHECK(z.f == cplx(0, 0));
    CHECK(z.dsigma == 0);

    const std::vector<PhaseShift> res{PhaseShift::from_angle(0, pi / 2)};
    for (double k : {0.5, 2.0}) {
      const auto a = scattering_amplitude(res, k, 1.1);
      CHECK(std::abs(a.f - cplx(-2 / std::sqrt(2 * pi * k), 0)) < 1e-15);
      CHECK(std::abs(a.dsigma - 2 / (pi * k)) < 1e-15);
    }

    const auto amp = make_amplitude(inverse_square_shifts(1.3, 4), 1);
    CHECK(amp.truncation == 4);
    CHECK(amp.s_elements.size() == 9);
    for (const auto& [l, s] : amp.s_elements) {
      CHECK(std::abs(std::abs(s) - 1) < 1e-15);
      CHECK(s == amp.s_elements.at(-l));
    }

    const std::vector<PhaseShift> gap{PhaseShift::from_tan(0, 0.1), PhaseShift::from_tan(2, 0.1)};
    CHECK_THROWS_AS(make_amplitude(gap, 1), DomainError);
    const std::vector<PhaseShift> clash{PhaseShift::from_tan(1, 0.1), PhaseShift::from_tan(-1, 0.3)};
    CHECK_THROWS_AS(make_amplitude(clash, 1), DomainError);
    CHECK_THROWS_AS(make_amplitude(none, 0), DomainError);
  }

  TEST_CASE("k |f|^2 is energy independent for 1/r^2") {
    gen::for_all(20, 55, [](gen::Rng& g) {
      const double lambda = g.uniform(0.1, 4);
      const double theta = g.uniform(0, pi);
      const auto shifts = inverse_square_shifts(lambda, 8);
      const double a = 1 * scattering_amplitude(shifts, 1, theta).dsigma;
      const double b = 9 * scattering_amplitude(shifts, 9, theta).dsigma;
      CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, a));
    });
  }

  TEST_CASE("outgoing wave from the partial-wave sum") {
    // psi+ - e^{ikx} = sum_l i^l (e^{i delta} J_nu - J_l) e^{il theta}; the
    // long-range 1/r^2 tail leaves an O(1/(kr)) mismatch with f e^{i(kr - pi/4)}/sqrt(r)
    const double lambda = 0.8, theta = 0.9;
    const int L = 8;
    const auto shifts = inverse_square_shifts(lambda, L);
    const auto amp = make_amplitude(shifts, 1);
    auto mismatch = [&](double r) {
      cplx sum = 0;
      for (int l = -L; l <= L; ++l) {
        const auto& s = shifts[std::abs(l)];
        const double nu = partialwave::effective_order(l, 0.5, lambda);
        const cplx il = std::pow(cplx(0, 1), l);
        const double sign = (l < 0 && l % 2) ? -1.0 : 1.0;
        const double jl = sign * specfun::bessel_j(std::abs(l), r);
        sum += il * (std::polar(1.0, s.delta()) * sign * specfun::bessel_j(nu, r) - jl) *
               std::polar(1.0, l * theta);
      }
      return std::abs(sum - scattered_wave(amp, r, theta)) * std::sqrt(r);
    };
    const double m3 = mismatch(1e3), m4 = mismatch(1e4);
    CHECK(m3 < 0.05);
    CHECK(m3 / m4 > 5);
    CHECK(m3 / m4 < 20);
  }
}
