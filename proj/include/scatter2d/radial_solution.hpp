#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace scatter2d::oracle {

enum class Provenance { ClosedForm, Integrated };

/// Radial wave function phi_l(r) of one partial wave.
///
/// reference_order is the Bessel order of the exterior basis the solution is
/// compared against: |l| for short-range wells, nu(l) for 1/r^2.
class RadialSolution {
 public:
  using Function = std::function<double(double)>;

  static RadialSolution closed_form(int ell, double k, double reference_order, Function phi,
                                    double domain_max = std::numeric_limits<double>::infinity());

  /// Samples on a piecewise-uniform grid in ln r. segment_starts holds the
  /// index of the first node of each smooth segment (always starts with 0);
  /// a node shared by two segments appears once, as the last node of the
  /// earlier segment and the first node of the next.
  static RadialSolution integrated(int ell, double k, double reference_order,
                                   std::vector<double> radii, std::vector<double> values,
                                   std::vector<std::size_t> segment_starts);

  [[nodiscard]] int ell() const { return ell_; }
  [[nodiscard]] double k() const { return k_; }
  [[nodiscard]] double reference_order() const { return reference_order_; }
  [[nodiscard]] Provenance provenance() const { return provenance_; }
  [[nodiscard]] double domain_min() const;
  [[nodiscard]] double domain_max() const;

  /// phi(r); sampled solutions interpolate (4-point Lagrange in ln r,
  /// stencil kept inside one smooth segment).
  [[nodiscard]] double value(double r) const;

  [[nodiscard]] std::span<const double> radii() const { return radii_; }
  [[nodiscard]] std::span<const double> values() const { return values_; }
  [[nodiscard]] std::span<const std::size_t> segment_starts() const { return segment_starts_; }

  [[nodiscard]] RadialSolution scaled(double factor) const;

 private:
  RadialSolution() = default;

  int ell_ = 0;
  double k_ = 1.0;
  double reference_order_ = 0.0;
  Provenance provenance_ = Provenance::ClosedForm;
  Function phi_;
  double domain_max_ = std::numeric_limits<double>::infinity();
  std::vector<double> radii_;
  std::vector<double> log_radii_;
  std::vector<double> values_;
  std::vector<std::size_t> segment_starts_;
};

}  // namespace scatter2d::oracle
