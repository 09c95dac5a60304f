#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fdepth {

// Shared sampling grid: strictly increasing time points plus positive
// weights summing to one that stand in for normalized Lebesgue measure.
struct Grid {
  std::vector<double> points;
  std::vector<double> weights;

  std::size_t size() const { return points.size(); }

  // Index grid 1..p with uniform weights 1/p.
  static Grid uniform(std::size_t p);
  // Trapezoidal weights for a possibly non-uniform set of points.
  static Grid trapezoidal(std::vector<double> points);
};

// Nonnegative per-grid-point locality threshold.
struct TauFunction {
  std::vector<double> values;

  TauFunction() = default;
  explicit TauFunction(std::vector<double> v) : values(std::move(v)) {}
  static TauFunction constant(double v, std::size_t p) {
    return TauFunction(std::vector<double>(p, v));
  }
  std::size_t size() const { return values.size(); }
  double operator[](std::size_t k) const { return values[k]; }
};

// n curves sampled on a common grid, stored row-major.
class FunctionalDataset {
 public:
  FunctionalDataset() = default;
  FunctionalDataset(Grid grid, std::vector<double> values, std::size_t n,
                    std::vector<std::string> labels = {});

  std::size_t n_curves() const { return n_; }
  std::size_t n_points() const { return grid_.size(); }
  const Grid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(std::size_t i) const;

  double at(std::size_t i, std::size_t k) const {
    return values_[i * grid_.size() + k];
  }
  std::span<const double> curve(std::size_t i) const {
    return {values_.data() + i * grid_.size(), grid_.size()};
  }

 private:
  Grid grid_;
  std::vector<double> values_;  // n x p, row-major
  std::size_t n_ = 0;
  std::vector<std::string> labels_;
};

struct TauSelection {
  std::vector<double> probs;
  std::vector<double> quantiles;
  std::optional<std::vector<double>> stats;  // all pairwise distances

  std::string to_json() const;
};

// CSV ingestion. byrow: rows are curves (otherwise the table is transposed).
// Missing ("NA", empty, non-finite) and non-numeric cells throw with the
// offending row/column named.
FunctionalDataset load_csv(const std::string& path, bool byrow = true,
                           bool has_header = false,
                           const std::optional<Grid>& grid_spec = std::nullopt);
FunctionalDataset parse_csv(const std::string& text, bool byrow,
                            bool has_header,
                            const std::optional<Grid>& grid_spec = std::nullopt);

// Writes the curves as a plain numeric matrix, one curve per row, with
// enough digits that reading the file back reproduces the doubles exactly.
void write_csv(const FunctionalDataset& ds, const std::string& path);

// One entry per violated type invariant; empty means valid.
std::vector<std::string> validate(const FunctionalDataset& ds);

double sup_distance(std::span<const double> a, std::span<const double> b);

// Distances for pairs (i,j), i<j, in row-major pair order.
std::vector<double> pairwise_sup_distances(const FunctionalDataset& ds,
                                           std::size_t threads = 0);

// Quantile by linear interpolation of order statistics, h = (m-1)*prob.
double interpolated_quantile(const std::vector<double>& sorted, double prob);

TauSelection select_tau(const FunctionalDataset& ds,
                        const std::vector<double>& probs,
                        bool keep_stats = false, std::size_t threads = 0);

// y_i(t_k) -> a_k*y_i(t_k) + b_k; a must be nonzero with constant sign.
FunctionalDataset affine_transform(const FunctionalDataset& ds,
                                   const std::vector<double>& a,
                                   const std::vector<double>& b);

// Per-coordinate (x - median)/MAD, MAD without consistency constant.
FunctionalDataset mad_standardize(const FunctionalDataset& ds);

}  // namespace fdepth
