#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fdepth/dataset.hpp"

namespace fdepth {

// Stateless counter RNG (splitmix64 mix of key + index): value i of a
// stream depends only on (key, i), so parallel replicates are reproducible.
struct CounterRng {
  std::uint64_t key = 0;
  std::uint64_t counter = 0;

  explicit CounterRng(std::uint64_t key_) : key(key_) {}
  static std::uint64_t mix(std::uint64_t z);
  // Uniform on (0, 1).
  double next_uniform();
};

std::uint64_t derive_stream_key(std::uint64_t seed, std::uint64_t a,
                                std::uint64_t b);

double normal_cdf(double x);
double normal_quantile(double u);

struct Marginal {
  enum class Kind { uniform, gaussian };
  Kind kind = Kind::gaussian;
  double a = 0.0;  // lower bound / mean
  double b = 1.0;  // upper bound / standard deviation

  static Marginal uniform(double lo, double hi);
  static Marginal gaussian(double mu, double sigma);
  double cdf(double x) const;
  double quantile(double u) const;
};

// iid-marginal surrogate process: one continuous marginal per grid point.
struct IidProcessSpec {
  std::vector<Marginal> marginals;
  std::uint64_t seed = 0;

  std::size_t p() const { return marginals.size(); }
  static IidProcessSpec broadcast(const Marginal& m, std::size_t p,
                                  std::uint64_t seed);
};

// min over the two slabs of the product of marginal interval probabilities;
// exact population value of the local HR depth for independent marginals.
double population_local_depth_iid(const IidProcessSpec& spec,
                                  std::span<const double> y,
                                  const TauFunction& tau);

FunctionalDataset sample_dataset(const IidProcessSpec& spec, std::size_t n,
                                 std::uint64_t stream_key);

struct ConsistencyReport {
  std::vector<std::size_t> sizes;
  std::vector<double> mean_abs_error;  // per size, averaged over replicates
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
  double population_value = 0.0;

  std::string to_json() const;
};

ConsistencyReport consistency_experiment(const IidProcessSpec& spec,
                                         std::span<const double> y,
                                         const TauFunction& tau,
                                         const std::vector<std::size_t>& sizes,
                                         std::size_t replicates,
                                         std::uint64_t seed,
                                         std::size_t threads = 0);

}  // namespace fdepth
