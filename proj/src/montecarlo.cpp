#include "fdepth/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fdepth/local_depth.hpp"
#include "fdepth/parallel.hpp"
#include "json.hpp"

namespace fdepth {

std::uint64_t CounterRng::mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double CounterRng::next_uniform() {
  std::uint64_t v = mix(key + counter);
  ++counter;
  return (static_cast<double>(v >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t derive_stream_key(std::uint64_t seed, std::uint64_t a,
                                std::uint64_t b) {
  return CounterRng::mix(CounterRng::mix(seed ^ (a * 0xd1342543de82ef95ULL)) ^
                         (b * 0xaf251af3b0f025b5ULL));
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Acklam's rational approximation with one Halley refinement.
double normal_quantile(double u) {
  if (!(u > 0.0 && u < 1.0))
    throw std::invalid_argument("quantile argument must be in (0,1)");
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1.0 - plow;
  double x;
  if (u < plow) {
    double q = std::sqrt(-2.0 * std::log(u));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (u <= phigh) {
    double q = u - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    double q = std::sqrt(-2.0 * std::log(1.0 - u));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  double e = normal_cdf(x) - u;
  double g = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
  return x - g / (1.0 + x * g / 2.0);
}

Marginal Marginal::uniform(double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("uniform requires a < b");
  return Marginal{Kind::uniform, lo, hi};
}

Marginal Marginal::gaussian(double mu, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian requires sigma > 0");
  return Marginal{Kind::gaussian, mu, sigma};
}

double Marginal::cdf(double x) const {
  if (kind == Kind::uniform) {
    if (x <= a) return 0.0;
    if (x >= b) return 1.0;
    return (x - a) / (b - a);
  }
  return normal_cdf((x - a) / b);
}

double Marginal::quantile(double u) const {
  if (kind == Kind::uniform) return a + (b - a) * u;
  return a + b * normal_quantile(u);
}

IidProcessSpec IidProcessSpec::broadcast(const Marginal& m, std::size_t p,
                                         std::uint64_t seed) {
  IidProcessSpec spec;
  spec.marginals.assign(p, m);
  spec.seed = seed;
  return spec;
}

double population_local_depth_iid(const IidProcessSpec& spec,
                                  std::span<const double> y,
                                  const TauFunction& tau) {
  std::size_t p = spec.p();
  if (y.size() != p || tau.size() != p)
    throw std::invalid_argument("dimension mismatch");
  double lower = 1.0, upper = 1.0;
  for (std::size_t k = 0; k < p; ++k) {
    if (!(tau[k] >= 0.0))
      throw std::invalid_argument("tau entries must be >= 0");
    const Marginal& m = spec.marginals[k];
    lower *= m.cdf(y[k]) - m.cdf(y[k] - tau[k]);
    upper *= m.cdf(y[k] + tau[k]) - m.cdf(y[k]);
  }
  return std::min(lower, upper);
}

FunctionalDataset sample_dataset(const IidProcessSpec& spec, std::size_t n,
                                 std::uint64_t stream_key) {
  std::size_t p = spec.p();
  CounterRng rng(stream_key);
  std::vector<double> values(n * p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < p; ++k)
      values[i * p + k] = spec.marginals[k].quantile(rng.next_uniform());
  return FunctionalDataset(Grid::uniform(p), std::move(values), n);
}

std::string ConsistencyReport::to_json() const {
  nlohmann::json j;
  j["sizes"] = sizes;
  j["mean_abs_error"] = mean_abs_error;
  j["replicates"] = replicates;
  j["seed"] = seed;
  j["population_value"] = population_value;
  return j.dump();
}

ConsistencyReport consistency_experiment(const IidProcessSpec& spec,
                                         std::span<const double> y,
                                         const TauFunction& tau,
                                         const std::vector<std::size_t>& sizes,
                                         std::size_t replicates,
                                         std::uint64_t seed,
                                         std::size_t threads) {
  if (replicates < 1) throw std::invalid_argument("replicates must be >= 1");
  for (std::size_t s = 0; s + 1 < sizes.size(); ++s)
    if (!(sizes[s] < sizes[s + 1]))
      throw std::invalid_argument("sizes must be increasing");

  ConsistencyReport rep;
  rep.sizes = sizes;
  rep.replicates = replicates;
  rep.seed = seed;
  rep.population_value = population_local_depth_iid(spec, y, tau);
  rep.mean_abs_error.assign(sizes.size(), 0.0);

  std::vector<double> query(y.begin(), y.end());
  for (std::size_t s = 0; s < sizes.size(); ++s) {
    std::vector<double> errs(replicates);
    parallel_for(
        0, replicates,
        [&](std::size_t r) {
          std::uint64_t key = derive_stream_key(seed, s, r);
          FunctionalDataset sample = sample_dataset(spec, sizes[s], key);
          double ld = local_depth_hr(query, sample, tau);
          errs[r] = std::abs(ld - rep.population_value);
        },
        threads);
    double sum = 0.0;
    for (double e : errs) sum += e;
    rep.mean_abs_error[s] = sum / static_cast<double>(replicates);
  }
  return rep;
}

}  // namespace fdepth
