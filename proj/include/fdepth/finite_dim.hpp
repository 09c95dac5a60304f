#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fdepth {

// Empirical distribution on R^p: each row carries mass 1/m.
struct PointSample {
  std::size_t m = 0;
  std::size_t p = 0;
  std::vector<double> values;  // m x p, row-major

  PointSample() = default;
  PointSample(std::size_t m_, std::size_t p_, std::vector<double> v);
  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * p, p};
  }
};

enum class SlabSide { lower, upper };

// Fraction of sample rows inside the axis-aligned box [x - tau, x]
// (lower) or [x, x + tau] (upper), bounds inclusive.
double slab_region_prob_direct(std::span<const double> x,
                               const PointSample& sample,
                               std::span<const double> tau, SlabSide side);

// Same probability via the alternating sum over coordinate subsets of the
// empirical CDF, with left limits taken as strict counts on the shifted
// coordinates. O(m * 2^p); kept as a verification oracle. p <= 20.
double slab_region_prob_ie(std::span<const double> x, const PointSample& sample,
                           std::span<const double> tau, SlabSide side);

double local_depth_hr_finite(std::span<const double> x,
                             const PointSample& sample,
                             std::span<const double> tau);

// min(F(x) - F((x-tau)^-), F(x+tau) - F(x^-)) on a 1-d sample.
double local_halfspace_depth_1d(double x, const PointSample& sample, double tau);

}  // namespace fdepth
