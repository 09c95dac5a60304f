#pragma once

#include <optional>
#include <string>
#include <utility>

#include "fdepth/dataset.hpp"

namespace fdepth {

enum class DepthMethod { HR, MHR };

std::string method_name(DepthMethod m);

// Per-curve depth values in [0,1] with ranks (1 = deepest, ties by index).
struct DepthReport {
  DepthMethod method = DepthMethod::HR;
  std::optional<TauFunction> tau;
  std::vector<double> values;
  std::vector<int> ranks;

  std::string to_json() const;
  void write_csv(const std::string& path,
                 const std::vector<std::string>& labels = {}) const;
};

// Rank by descending value, ties broken by ascending index; 1 = deepest.
std::vector<int> ranks_from_values(const std::vector<double>& values);

// Fractions of sample curves lying entirely on or below / on or above y.
std::pair<double, double> hypo_epi_proportions(std::span<const double> y,
                                               const FunctionalDataset& ds);

double depth_hr(std::span<const double> y, const FunctionalDataset& ds);

// Mean fraction of time sample curves spend above (el) / below (hl) y,
// weighted by the grid weights.
std::pair<double, double> length_proportions(std::span<const double> y,
                                             const FunctionalDataset& ds);

double depth_mhr(std::span<const double> y, const FunctionalDataset& ds);

DepthReport depth_all(const FunctionalDataset& ds, DepthMethod method,
                      std::size_t threads = 0);

}  // namespace fdepth
