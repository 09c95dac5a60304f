#include "fdepth/local_depth.hpp"

#include <algorithm>
#include <stdexcept>

#include "fdepth/parallel.hpp"

namespace fdepth {

namespace {

void check_tau(const TauFunction& tau, std::size_t p) {
  if (tau.size() != p)
    throw std::invalid_argument("tau must have one entry per grid point");
  for (double v : tau.values)
    if (!(v >= 0.0)) throw std::invalid_argument("tau entries must be >= 0");
}

}  // namespace

bool band_contains(std::span<const double> member, std::span<const double> center,
                   const TauFunction& tau) {
  if (member.size() != center.size())
    throw std::invalid_argument("curve length mismatch");
  check_tau(tau, center.size());
  for (std::size_t k = 0; k < center.size(); ++k)
    if (member[k] < center[k] - tau[k] || member[k] > center[k] + tau[k])
      return false;
  return true;
}

std::pair<double, double> local_hypo_epi_proportions(std::span<const double> y,
                                                     const FunctionalDataset& ds,
                                                     const TauFunction& tau) {
  std::size_t p = ds.n_points();
  if (y.size() != p) throw std::invalid_argument("curve length mismatch");
  check_tau(tau, p);
  std::size_t n = ds.n_curves();
  std::size_t in_lo = 0, in_hi = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* yi = ds.values().data() + i * p;
    bool lo = true, hi = true;
    for (std::size_t k = 0; k < p && (lo || hi); ++k) {
      if (yi[k] < y[k] - tau[k] || yi[k] > y[k]) lo = false;
      if (yi[k] < y[k] || yi[k] > y[k] + tau[k]) hi = false;
    }
    in_lo += lo;
    in_hi += hi;
  }
  double dn = static_cast<double>(n);
  return {static_cast<double>(in_lo) / dn, static_cast<double>(in_hi) / dn};
}

double local_depth_hr(std::span<const double> y, const FunctionalDataset& ds,
                      const TauFunction& tau) {
  auto [lo, hi] = local_hypo_epi_proportions(y, ds, tau);
  return std::min(lo, hi);
}

std::pair<double, double> local_length_proportions(std::span<const double> y,
                                                   const FunctionalDataset& ds,
                                                   const TauFunction& tau) {
  std::size_t p = ds.n_points();
  if (y.size() != p) throw std::invalid_argument("curve length mismatch");
  check_tau(tau, p);
  std::size_t n = ds.n_curves();
  const std::vector<double>& w = ds.grid().weights;
  double el = 0.0, hl = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* yi = ds.values().data() + i * p;
    bool in_band = true;
    double fe = 0.0, fh = 0.0;
    for (std::size_t k = 0; k < p; ++k) {
      double v = yi[k];
      if (v < y[k] - tau[k] || v > y[k] + tau[k]) {
        in_band = false;
        break;
      }
      if (v >= y[k]) fe += w[k];
      if (v <= y[k]) fh += w[k];
    }
    if (in_band) {
      el += fe;
      hl += fh;
    }
  }
  double dn = static_cast<double>(n);
  return {el / dn, hl / dn};
}

double local_depth_mhr(std::span<const double> y, const FunctionalDataset& ds,
                       const TauFunction& tau) {
  auto [el, hl] = local_length_proportions(y, ds, tau);
  return std::min(el, hl);
}

DepthReport local_depth_all(const FunctionalDataset& ds, const TauFunction& tau,
                            DepthMethod method, std::size_t threads) {
  check_tau(tau, ds.n_points());
  DepthReport rep;
  rep.method = method;
  rep.tau = tau;
  rep.values.resize(ds.n_curves());
  parallel_for(
      0, ds.n_curves(),
      [&](std::size_t i) {
        rep.values[i] = method == DepthMethod::HR
                            ? local_depth_hr(ds.curve(i), ds, tau)
                            : local_depth_mhr(ds.curve(i), ds, tau);
      },
      threads);
  rep.ranks = ranks_from_values(rep.values);
  return rep;
}

}  // namespace fdepth
