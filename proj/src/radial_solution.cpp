#include "scatter2d/radial_solution.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "scatter2d/errors.hpp"

namespace scatter2d::oracle {

RadialSolution RadialSolution::closed_form(int ell, double k, double reference_order,
                                           Function phi, double domain_max) {
  RadialSolution s;
  s.ell_ = ell;
  s.k_ = k;
  s.reference_order_ = reference_order;
  s.provenance_ = Provenance::ClosedForm;
  s.phi_ = std::move(phi);
  s.domain_max_ = domain_max;
  return s;
}

RadialSolution RadialSolution::integrated(int ell, double k, double reference_order,
                                          std::vector<double> radii, std::vector<double> values,
                                          std::vector<std::size_t> segment_starts) {
  if (radii.size() != values.size() || radii.size() < 4) {
    throw DomainError("RadialSolution: need at least 4 samples with matching sizes");
  }
  if (segment_starts.empty() || segment_starts.front() != 0) {
    throw DomainError("RadialSolution: segment_starts must begin with 0");
  }
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i] > radii[i - 1])) throw DomainError("RadialSolution: radii must increase");
  }
  RadialSolution s;
  s.ell_ = ell;
  s.k_ = k;
  s.reference_order_ = reference_order;
  s.provenance_ = Provenance::Integrated;
  s.log_radii_.reserve(radii.size());
  for (double r : radii) s.log_radii_.push_back(std::log(r));
  s.radii_ = std::move(radii);
  s.values_ = std::move(values);
  s.segment_starts_ = std::move(segment_starts);
  s.domain_max_ = s.radii_.back();
  return s;
}

double RadialSolution::domain_min() const {
  return provenance_ == Provenance::ClosedForm ? 0.0 : radii_.front();
}

double RadialSolution::domain_max() const { return domain_max_; }

double RadialSolution::value(double r) const {
  if (provenance_ == Provenance::ClosedForm) return phi_(r);

  if (r < radii_.front() || r > radii_.back()) {
    throw DomainError("RadialSolution::value: r outside sampled domain");
  }
  const double x = std::log(r);
  auto it = std::upper_bound(radii_.begin(), radii_.end(), r);
  std::size_t hi = static_cast<std::size_t>(std::distance(radii_.begin(), it));
  if (hi == radii_.size()) return values_.back();
  std::size_t lo = hi - 1;
  if (radii_[lo] == r) return values_[lo];

  // smooth segment [seg_begin, seg_end] containing the bracket [lo, hi]
  std::size_t seg_begin = 0;
  for (std::size_t start : segment_starts_) {
    if (start <= lo) seg_begin = start;
  }
  std::size_t seg_end = radii_.size() - 1;
  for (std::size_t start : segment_starts_) {
    if (start > lo) {
      seg_end = start;
      break;
    }
  }
  std::size_t first = lo >= seg_begin + 1 ? lo - 1 : seg_begin;
  if (first + 3 > seg_end) first = seg_end >= 3 ? std::max(seg_begin, seg_end - 3) : 0;

  double result = 0.0;
  for (std::size_t i = first; i < first + 4; ++i) {
    double w = values_[i];
    for (std::size_t j = first; j < first + 4; ++j) {
      if (j != i) w *= (x - log_radii_[j]) / (log_radii_[i] - log_radii_[j]);
    }
    result += w;
  }
  return result;
}

RadialSolution RadialSolution::scaled(double factor) const {
  RadialSolution s = *this;
  if (provenance_ == Provenance::ClosedForm) {
    Function f = phi_;
    s.phi_ = [f, factor](double r) { return factor * f(r); };
  } else {
    for (double& v : s.values_) v *= factor;
  }
  return s;
}

}  // namespace scatter2d::oracle
