#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "fdepth/depth.hpp"
#include "test_util.hpp"

using namespace fdepth;
using testutil::Rng;

TEST_CASE("half-region depth on three constant curves") {
  auto ds = testutil::make_d3();
  auto rep = depth_all(ds, DepthMethod::HR);
  REQUIRE(rep.values.size() == 3);
  CHECK(rep.values[0] == doctest::Approx(1.0 / 3.0));
  CHECK(rep.values[1] == doctest::Approx(2.0 / 3.0));
  CHECK(rep.values[2] == doctest::Approx(1.0 / 3.0));
  CHECK(rep.ranks == std::vector<int>{2, 1, 3});
}

TEST_CASE("modified depth on three constant curves") {
  auto ds = testutil::make_d3();
  auto rep = depth_all(ds, DepthMethod::MHR);
  // el(curve1) = (1 + 1 + 1)/3 ... the middle curve is deepest either way.
  CHECK(rep.values[1] > rep.values[0]);
  CHECK(rep.values[1] > rep.values[2]);
  CHECK(rep.values[0] == doctest::Approx(rep.values[2]));
  CHECK(rep.ranks[1] == 1);
}

TEST_CASE("single-curve dataset has depth one") {
  FunctionalDataset ds(Grid::uniform(3), {1.0, 2.0, 3.0}, 1);
  CHECK(depth_hr(ds.curve(0), ds) == 1.0);
  CHECK(depth_mhr(ds.curve(0), ds) == doctest::Approx(1.0));
}

TEST_CASE("ranks: descending values, ties by index") {
  CHECK(ranks_from_values({0.5, 0.9, 0.5, 0.1}) ==
        std::vector<int>{2, 1, 3, 4});
  CHECK(ranks_from_values({1.0, 1.0, 1.0}) == std::vector<int>{1, 2, 3});
}

TEST_CASE("kernels match brute-force oracles on random data") {
  Rng rng(101);
  for (int rep = 0; rep < 50; ++rep) {
    auto ds = testutil::random_dataset(rng, 3 + rng.index(20), 1 + rng.index(8));
    for (std::size_t i = 0; i < ds.n_curves(); ++i) {
      auto y = testutil::curve_of(ds, i);
      CHECK(depth_hr(ds.curve(i), ds) ==
            doctest::Approx(testutil::oracle_hr(y, ds)).epsilon(1e-14));
      CHECK(depth_mhr(ds.curve(i), ds) ==
            doctest::Approx(testutil::oracle_mhr(y, ds)).epsilon(1e-12));
    }
  }
}

TEST_CASE("half-region depth never exceeds the modified depth") {
  Rng rng(202);
  for (int rep = 0; rep < 30; ++rep) {
    auto ds = testutil::random_dataset(rng, 4 + rng.index(15), 2 + rng.index(6));
    for (std::size_t i = 0; i < ds.n_curves(); ++i)
      CHECK(depth_hr(ds.curve(i), ds) <=
            depth_mhr(ds.curve(i), ds) + 1e-12);
  }
}

TEST_CASE("depths are invariant under monotone affine transforms") {
  Rng rng(303);
  for (int rep = 0; rep < 20; ++rep) {
    std::size_t p = 2 + rng.index(5);
    auto ds = testutil::random_dataset(rng, 8, p);
    std::vector<double> a(p), b(p);
    double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
    for (std::size_t k = 0; k < p; ++k) {
      a[k] = sign * rng.uniform(0.2, 3.0);
      b[k] = rng.uniform(-2, 2);
    }
    auto t = affine_transform(ds, a, b);
    for (std::size_t i = 0; i < ds.n_curves(); ++i) {
      CHECK(depth_hr(t.curve(i), t) ==
            doctest::Approx(depth_hr(ds.curve(i), ds)).epsilon(1e-12));
      CHECK(depth_mhr(t.curve(i), t) ==
            doctest::Approx(depth_mhr(ds.curve(i), ds)).epsilon(1e-12));
    }
  }
}

TEST_CASE("p = 1 half-region depth reduces to min of cdf tails") {
  Rng rng(404);
  for (int rep = 0; rep < 40; ++rep) {
    std::size_t n = 3 + rng.index(25);
    auto ds = testutil::random_dataset(rng, n, 1);
    for (std::size_t i = 0; i < n; ++i) {
      double x = ds.at(i, 0);
      double le = 0, ge = 0;
      for (std::size_t j = 0; j < n; ++j) {
        le += ds.at(j, 0) <= x;
        ge += ds.at(j, 0) >= x;
      }
      double expect = std::min(le, ge) / static_cast<double>(n);
      CHECK(depth_hr(ds.curve(i), ds) == doctest::Approx(expect));
    }
  }
}

TEST_CASE("report json carries method, values, ranks") {
  auto rep = depth_all(testutil::make_d3(), DepthMethod::HR);
  std::string j = rep.to_json();
  CHECK(j.find("\"method\":\"HR\"") != std::string::npos);
  CHECK(j.find("\"values\"") != std::string::npos);
  CHECK(j.find("\"ranks\"") != std::string::npos);
  CHECK(j.find("\"tau\"") == std::string::npos);
}

TEST_CASE("depth_all is identical across thread counts") {
  Rng rng(505);
  auto ds = testutil::random_dataset(rng, 40, 12);
  auto one = depth_all(ds, DepthMethod::MHR, 1);
  auto four = depth_all(ds, DepthMethod::MHR, 4);
  CHECK(one.values == four.values);
  CHECK(one.ranks == four.ranks);
}
