#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "fdepth/finite_dim.hpp"
#include "test_util.hpp"

using namespace fdepth;
using testutil::Rng;

namespace {

PointSample random_sample(Rng& rng, std::size_t m, std::size_t p) {
  std::vector<double> v(m * p);
  // A coarse lattice keeps boundary ties frequent.
  for (auto& x : v) x = rng.index(9) * 0.5 - 2.0;
  return PointSample(m, p, std::move(v));
}

}  // namespace

TEST_CASE("two-dimensional slab counts") {
  PointSample s(4, 2, {0, 0, 1, 1, 2, 2, 0, 2});
  std::vector<double> x = {1, 1}, tau = {1, 1};
  CHECK(slab_region_prob_direct(x, s, tau, SlabSide::lower) ==
        doctest::Approx(0.5));
  CHECK(slab_region_prob_direct(x, s, tau, SlabSide::upper) ==
        doctest::Approx(0.5));
  CHECK(local_depth_hr_finite(x, s, tau) == doctest::Approx(0.5));
}

TEST_CASE("one-dimensional example") {
  PointSample s(5, 1, {0, 1, 2, 3, 4});
  std::vector<double> x = {2}, tau = {1};
  CHECK(local_depth_hr_finite(x, s, tau) == doctest::Approx(0.4));
  CHECK(local_halfspace_depth_1d(2.0, s, 1.0) == doctest::Approx(0.4));
}

TEST_CASE("alternating-sum form agrees with direct counting") {
  Rng rng(53);
  for (int rep = 0; rep < 200; ++rep) {
    std::size_t p = 1 + rng.index(4);
    std::size_t m = 2 + rng.index(30);
    PointSample s = random_sample(rng, m, p);
    std::vector<double> x(p), tau(p);
    for (std::size_t k = 0; k < p; ++k) {
      x[k] = rng.index(9) * 0.5 - 2.0;
      tau[k] = rng.index(5) * 0.5;
    }
    for (SlabSide side : {SlabSide::lower, SlabSide::upper}) {
      double direct = slab_region_prob_direct(x, s, tau, side);
      double ie = slab_region_prob_ie(x, s, tau, side);
      CHECK(ie == doctest::Approx(direct).epsilon(1e-12));
    }
  }
}

TEST_CASE("p = 1 finite depth equals the cdf-difference form") {
  Rng rng(59);
  for (int rep = 0; rep < 200; ++rep) {
    std::size_t m = 1 + rng.index(40);
    PointSample s = random_sample(rng, m, 1);
    double x = rng.index(9) * 0.5 - 2.0;
    double tau = rng.index(5) * 0.5;
    std::vector<double> xv = {x}, tv = {tau};
    CHECK(local_depth_hr_finite(xv, s, tv) ==
          doctest::Approx(local_halfspace_depth_1d(x, s, tau)));
  }
}

TEST_CASE("tau = 0 isolates duplicates; huge tau recovers box tails") {
  PointSample s(4, 2, {0, 0, 1, 1, 2, 2, 0, 2});
  std::vector<double> x = {1, 1}, zero = {0, 0}, big = {100, 100};
  CHECK(local_depth_hr_finite(x, s, zero) == doctest::Approx(0.25));
  std::vector<double> outside = {5, 5};
  CHECK(local_depth_hr_finite(outside, s, zero) == 0.0);
  // With tau covering the range, the lower slab is the lower-left orthant.
  double lower = slab_region_prob_direct(x, s, big, SlabSide::lower);
  CHECK(lower == doctest::Approx(0.5));
}

TEST_CASE("slab probability is monotone in tau") {
  Rng rng(61);
  for (int rep = 0; rep < 50; ++rep) {
    std::size_t p = 1 + rng.index(3);
    PointSample s = random_sample(rng, 2 + rng.index(20), p);
    std::vector<double> x(p);
    for (auto& v : x) v = rng.uniform(-2, 2);
    double prev = -1;
    for (double t : {0.0, 0.5, 1.0, 2.0, 5.0}) {
      std::vector<double> tau(p, t);
      double v = local_depth_hr_finite(x, s, tau);
      CHECK(v >= prev - 1e-14);
      prev = v;
    }
  }
}

TEST_CASE("invariance under positive coordinate scaling") {
  Rng rng(67);
  for (int rep = 0; rep < 30; ++rep) {
    std::size_t p = 1 + rng.index(3);
    std::size_t m = 3 + rng.index(15);
    PointSample s = random_sample(rng, m, p);
    double c = rng.uniform(0.5, 4.0);
    PointSample scaled = s;
    for (auto& v : scaled.values) v *= c;
    std::vector<double> x(p), tau(p), xs(p), taus(p);
    std::size_t pick = rng.index(m);
    for (std::size_t k = 0; k < p; ++k) {
      x[k] = s.values[pick * p + k];
      tau[k] = rng.index(4) * 0.5;
      xs[k] = c * x[k];
      taus[k] = c * tau[k];
    }
    CHECK(local_depth_hr_finite(xs, scaled, taus) ==
          doctest::Approx(local_depth_hr_finite(x, s, tau)).epsilon(1e-12));
  }
}

TEST_CASE("argument validation") {
  PointSample s(2, 2, {0, 0, 1, 1});
  std::vector<double> short_x = {1.0}, tau = {1.0, 1.0};
  CHECK_THROWS_AS(local_depth_hr_finite(short_x, s, tau),
                  std::invalid_argument);
  std::vector<double> x = {1.0, 1.0}, neg_tau = {1.0, -1.0};
  CHECK_THROWS_AS(local_depth_hr_finite(x, s, neg_tau), std::invalid_argument);
  PointSample wide(1, 21, std::vector<double>(21, 0.0));
  std::vector<double> xw(21, 0.0), tw(21, 1.0);
  CHECK_THROWS_AS(slab_region_prob_ie(xw, wide, tw, SlabSide::lower),
                  std::invalid_argument);
}
