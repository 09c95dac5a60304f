#include "fdepth/depth.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "fdepth/parallel.hpp"
#include "json.hpp"

namespace fdepth {

std::string method_name(DepthMethod m) {
  return m == DepthMethod::HR ? "HR" : "MHR";
}

std::vector<int> ranks_from_values(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] > values[b];
  });
  std::vector<int> ranks(values.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos)
    ranks[order[pos]] = static_cast<int>(pos + 1);
  return ranks;
}

std::string DepthReport::to_json() const {
  nlohmann::json j;
  j["method"] = method_name(method);
  if (tau) j["tau"] = tau->values;
  j["values"] = values;
  j["ranks"] = ranks;
  return j.dump();
}

void DepthReport::write_csv(const std::string& path,
                            const std::vector<std::string>& labels) const {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open file for writing: " + path);
  f << "label,value,rank\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::string lab = i < labels.size() ? labels[i] : std::to_string(i + 1);
    f << lab << ',' << values[i] << ',' << ranks[i] << '\n';
  }
}

std::pair<double, double> hypo_epi_proportions(std::span<const double> y,
                                               const FunctionalDataset& ds) {
  std::size_t p = ds.n_points();
  if (y.size() != p) throw std::invalid_argument("curve length mismatch");
  std::size_t n = ds.n_curves();
  std::size_t in_hyp = 0, in_epi = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* yi = ds.values().data() + i * p;
    bool below = true, above = true;
    for (std::size_t k = 0; k < p && (below || above); ++k) {
      if (yi[k] > y[k]) below = false;
      if (yi[k] < y[k]) above = false;
    }
    in_hyp += below;
    in_epi += above;
  }
  double dn = static_cast<double>(n);
  return {static_cast<double>(in_hyp) / dn, static_cast<double>(in_epi) / dn};
}

double depth_hr(std::span<const double> y, const FunctionalDataset& ds) {
  auto [h, e] = hypo_epi_proportions(y, ds);
  return std::min(h, e);
}

std::pair<double, double> length_proportions(std::span<const double> y,
                                             const FunctionalDataset& ds) {
  std::size_t p = ds.n_points();
  if (y.size() != p) throw std::invalid_argument("curve length mismatch");
  std::size_t n = ds.n_curves();
  const std::vector<double>& w = ds.grid().weights;
  double el = 0.0, hl = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* yi = ds.values().data() + i * p;
    for (std::size_t k = 0; k < p; ++k) {
      if (y[k] <= yi[k]) el += w[k];
      if (y[k] >= yi[k]) hl += w[k];
    }
  }
  double dn = static_cast<double>(n);
  return {el / dn, hl / dn};
}

double depth_mhr(std::span<const double> y, const FunctionalDataset& ds) {
  auto [el, hl] = length_proportions(y, ds);
  return std::min(el, hl);
}

DepthReport depth_all(const FunctionalDataset& ds, DepthMethod method,
                      std::size_t threads) {
  DepthReport rep;
  rep.method = method;
  rep.values.resize(ds.n_curves());
  parallel_for(
      0, ds.n_curves(),
      [&](std::size_t i) {
        rep.values[i] = method == DepthMethod::HR ? depth_hr(ds.curve(i), ds)
                                                  : depth_mhr(ds.curve(i), ds);
      },
      threads);
  rep.ranks = ranks_from_values(rep.values);
  return rep;
}

}  // namespace fdepth
