#include "fdepth/finite_dim.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace fdepth {

PointSample::PointSample(std::size_t m_, std::size_t p_, std::vector<double> v)
    : m(m_), p(p_), values(std::move(v)) {
  if (m == 0) throw std::invalid_argument("sample needs at least one point");
  if (values.size() != m * p)
    throw std::invalid_argument("sample matrix does not match dimensions");
}

namespace {

void check_dims(std::span<const double> x, const PointSample& sample,
                std::span<const double> tau) {
  if (x.size() != sample.p || tau.size() != sample.p)
    throw std::invalid_argument("dimension mismatch");
  for (double t : tau)
    if (!(t >= 0.0)) throw std::invalid_argument("tau entries must be >= 0");
}

}  // namespace

double slab_region_prob_direct(std::span<const double> x,
                               const PointSample& sample,
                               std::span<const double> tau, SlabSide side) {
  check_dims(x, sample, tau);
  std::size_t count = 0;
  for (std::size_t i = 0; i < sample.m; ++i) {
    const double* z = sample.values.data() + i * sample.p;
    bool inside = true;
    for (std::size_t j = 0; j < sample.p; ++j) {
      double lo = side == SlabSide::lower ? x[j] - tau[j] : x[j];
      double hi = side == SlabSide::lower ? x[j] : x[j] + tau[j];
      if (z[j] < lo || z[j] > hi) {
        inside = false;
        break;
      }
    }
    count += inside;
  }
  return static_cast<double>(count) / static_cast<double>(sample.m);
}

double slab_region_prob_ie(std::span<const double> x, const PointSample& sample,
                           std::span<const double> tau, SlabSide side) {
  check_dims(x, sample, tau);
  std::size_t p = sample.p;
  if (p > 20) throw std::invalid_argument("inclusion-exclusion limited to p <= 20");

  // The upper slab is the lower slab of the reflected sample at -x.
  if (side == SlabSide::upper) {
    std::vector<double> rx(x.begin(), x.end());
    for (auto& v : rx) v = -v;
    PointSample refl(sample.m, p, sample.values);
    for (auto& v : refl.values) v = -v;
    return slab_region_prob_ie(rx, refl, tau, SlabSide::lower);
  }

  double total = 0.0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << p); ++mask) {
    // Mixed empirical CDF term: strict below x_j - tau_j on coordinates in
    // the subset, weak below x_j elsewhere.
    std::size_t count = 0;
    for (std::size_t i = 0; i < sample.m; ++i) {
      const double* z = sample.values.data() + i * p;
      bool ok = true;
      for (std::size_t j = 0; j < p; ++j) {
        if (mask & (std::size_t{1} << j)) {
          if (!(z[j] < x[j] - tau[j])) { ok = false; break; }
        } else {
          if (!(z[j] <= x[j])) { ok = false; break; }
        }
      }
      count += ok;
    }
    double term = static_cast<double>(count) / static_cast<double>(sample.m);
    total += (std::popcount(mask) % 2 == 0) ? term : -term;
  }
  return total;
}

double local_depth_hr_finite(std::span<const double> x,
                             const PointSample& sample,
                             std::span<const double> tau) {
  return std::min(slab_region_prob_direct(x, sample, tau, SlabSide::lower),
                  slab_region_prob_direct(x, sample, tau, SlabSide::upper));
}

double local_halfspace_depth_1d(double x, const PointSample& sample,
                                double tau) {
  if (sample.p != 1) throw std::invalid_argument("sample must be 1-dimensional");
  if (!(tau >= 0.0)) throw std::invalid_argument("tau must be >= 0");
  double m = static_cast<double>(sample.m);
  std::size_t le_x = 0, lt_low = 0, le_hi = 0, lt_x = 0;
  for (std::size_t i = 0; i < sample.m; ++i) {
    double z = sample.values[i];
    le_x += z <= x;
    lt_low += z < x - tau;
    le_hi += z <= x + tau;
    lt_x += z < x;
  }
  double lower = (static_cast<double>(le_x) - static_cast<double>(lt_low)) / m;
  double upper = (static_cast<double>(le_hi) - static_cast<double>(lt_x)) / m;
  return std::min(lower, upper);
}

}  // namespace fdepth
