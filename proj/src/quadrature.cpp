#include "scatter2d/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "scatter2d/errors.hpp"

namespace scatter2d::quadrature {
namespace {

// QUADPACK qk15 nodes and weights.
constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Piece& o) const { return error < o.error; }
};

Piece kronrod(const std::function<double(double)>& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kron = fc * wgk[7];
  double gauss = fc * wg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * xgk[j];
    const double sum = f(center - dx) + f(center + dx);
    kron += wgk[j] * sum;
    if (j % 2 == 1) gauss += wg[j / 2] * sum;
  }
  return {lo, hi, kron * half, std::abs((kron - gauss) * half)};
}

}  // namespace

Result gauss_kronrod(const std::function<double(double)>& f, double lo, double hi,
                     double abs_tol, double rel_tol, int max_intervals) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(abs_tol > 0.0 || rel_tol > 0.0)) {
    throw DomainError("gauss_kronrod: need finite limits and a positive tolerance");
  }
  if (lo == hi) return {};

  std::priority_queue<Piece> heap;
  Piece first = kronrod(f, lo, hi);
  double value = first.value;
  double error = first.error;
  heap.push(first);
  int intervals = 1;

  while (error > std::max(abs_tol, rel_tol * std::abs(value))) {
    if (!std::isfinite(value)) throw DomainError("gauss_kronrod: non-finite integrand");
    if (intervals >= max_intervals) {
      throw ConvergenceError("gauss_kronrod: error estimate " + std::to_string(error) +
                             " above tolerance after " + std::to_string(intervals) + " intervals");
    }
    const Piece worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const Piece left = kronrod(f, worst.lo, mid);
    const Piece right = kronrod(f, mid, worst.hi);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }

  // re-sum to shed the drift of the running updates
  value = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  return {value, error, intervals};
}

}  // namespace scatter2d::quadrature
