#pragma once

#include <functional>

namespace scatter2d::quadrature {

struct Result {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

/// Adaptive 7/15-point Gauss-Kronrod on [lo, hi]. The interval with the
/// largest error estimate is bisected until the summed estimate is below
/// max(abs_tol, rel_tol * |value|). Throws ConvergenceError after
/// max_intervals intervals.
Result gauss_kronrod(const std::function<double(double)>& f, double lo, double hi,
                     double abs_tol, double rel_tol = 0.0, int max_intervals = 2000);

}  // namespace scatter2d::quadrature
