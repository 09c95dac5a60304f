#include "fdepth/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fdepth/parallel.hpp"
#include "json.hpp"

namespace fdepth {

Grid Grid::uniform(std::size_t p) {
  if (p == 0) throw std::invalid_argument("grid must have at least one point");
  Grid g;
  g.points.resize(p);
  g.weights.assign(p, 1.0 / static_cast<double>(p));
  for (std::size_t k = 0; k < p; ++k) g.points[k] = static_cast<double>(k + 1);
  return g;
}

Grid Grid::trapezoidal(std::vector<double> points) {
  std::size_t p = points.size();
  if (p == 0) throw std::invalid_argument("grid must have at least one point");
  for (std::size_t k = 0; k + 1 < p; ++k)
    if (!(points[k] < points[k + 1]))
      throw std::invalid_argument("grid points must be strictly increasing");
  Grid g;
  g.points = std::move(points);
  if (p == 1) {
    g.weights = {1.0};
    return g;
  }
  g.weights.assign(p, 0.0);
  for (std::size_t k = 0; k + 1 < p; ++k) {
    double h = 0.5 * (g.points[k + 1] - g.points[k]);
    g.weights[k] += h;
    g.weights[k + 1] += h;
  }
  double total = g.points[p - 1] - g.points[0];
  for (auto& w : g.weights) w /= total;
  return g;
}

FunctionalDataset::FunctionalDataset(Grid grid, std::vector<double> values,
                                     std::size_t n,
                                     std::vector<std::string> labels)
    : grid_(std::move(grid)),
      values_(std::move(values)),
      n_(n),
      labels_(std::move(labels)) {
  if (n_ == 0) throw std::invalid_argument("dataset needs at least one curve");
  if (values_.size() != n_ * grid_.size())
    throw std::invalid_argument("curve matrix does not match grid size");
  if (!labels_.empty() && labels_.size() != n_)
    throw std::invalid_argument("label count does not match curve count");
}

std::string FunctionalDataset::label(std::size_t i) const {
  if (i < labels_.size()) return labels_[i];
  return std::to_string(i + 1);
}

std::string TauSelection::to_json() const {
  nlohmann::json j;
  j["probs"] = probs;
  j["quantiles"] = quantiles;
  if (stats) j["stats"] = *stats;
  return j.dump();
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool is_missing_token(std::string t) {
  for (auto& c : t) c = static_cast<char>(std::tolower(c));
  return t.empty() || t == "na" || t == "nan" || t == "n/a" || t == "null";
}

double parse_cell(const std::string& token, std::size_t row, std::size_t col) {
  std::string t = trim(token);
  auto where = [&] {
    return "row " + std::to_string(row) + ", column " + std::to_string(col);
  };
  if (is_missing_token(t))
    throw std::invalid_argument("missing value at " + where());
  char* endp = nullptr;
  double v = std::strtod(t.c_str(), &endp);
  if (endp != t.c_str() + t.size())
    throw std::invalid_argument("non-numeric cell '" + t + "' at " + where());
  if (!std::isfinite(v))
    throw std::invalid_argument("missing value at " + where());
  return v;
}

}  // namespace

FunctionalDataset parse_csv(const std::string& text, bool byrow,
                            bool has_header,
                            const std::optional<Grid>& grid_spec) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<double>> table;
  std::vector<std::string> header;
  std::size_t row_no = 0;
  bool want_header = has_header;
  while (std::getline(in, line)) {
    ++row_no;
    if (trim(line).empty()) continue;
    std::vector<std::string> tokens;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) tokens.push_back(cell);
    if (!line.empty() && line.back() == ',') tokens.push_back("");
    if (want_header) {
      for (auto& t : tokens) header.push_back(trim(t));
      want_header = false;
      continue;
    }
    std::vector<double> row;
    row.reserve(tokens.size());
    for (std::size_t c = 0; c < tokens.size(); ++c)
      row.push_back(parse_cell(tokens[c], row_no, c + 1));
    if (!table.empty() && row.size() != table.front().size())
      throw std::invalid_argument("ragged row " + std::to_string(row_no) +
                               ": expected " +
                               std::to_string(table.front().size()) +
                               " cells, found " + std::to_string(row.size()));
    table.push_back(std::move(row));
  }
  if (table.empty()) throw std::invalid_argument("empty table");

  std::size_t rows = table.size();
  std::size_t cols = table.front().size();
  std::size_t n = byrow ? rows : cols;
  std::size_t p = byrow ? cols : rows;
  std::vector<double> values(n * p);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      if (byrow)
        values[r * p + c] = table[r][c];
      else
        values[c * p + r] = table[r][c];
    }
  std::vector<std::string> labels;
  if (!byrow && !header.empty() && header.size() == n) labels = header;

  Grid grid = grid_spec ? *grid_spec : Grid::uniform(p);
  if (grid.size() != p)
    throw std::invalid_argument("grid has " + std::to_string(grid.size()) +
                             " points but curves have " + std::to_string(p));
  return FunctionalDataset(std::move(grid), std::move(values), n,
                           std::move(labels));
}

FunctionalDataset load_csv(const std::string& path, bool byrow,
                           bool has_header,
                           const std::optional<Grid>& grid_spec) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_csv(ss.str(), byrow, has_header, grid_spec);
}

void write_csv(const FunctionalDataset& ds, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open file for writing: " + path);
  char buf[64];
  for (std::size_t i = 0; i < ds.n_curves(); ++i) {
    for (std::size_t k = 0; k < ds.n_points(); ++k) {
      std::snprintf(buf, sizeof(buf), "%.17g", ds.at(i, k));
      if (k) f << ',';
      f << buf;
    }
    f << '\n';
  }
}

std::vector<std::string> validate(const FunctionalDataset& ds) {
  std::vector<std::string> out;
  const Grid& g = ds.grid();
  if (g.size() == 0) out.push_back("grid is empty");
  for (std::size_t k = 0; k + 1 < g.size(); ++k)
    if (!(g.points[k] < g.points[k + 1])) {
      out.push_back("grid not strictly increasing");
      break;
    }
  double wsum = 0.0;
  bool pos = true;
  for (double w : g.weights) {
    wsum += w;
    if (!(w > 0.0)) pos = false;
  }
  if (!pos) out.push_back("grid weights not all positive");
  if (std::abs(wsum - 1.0) > 1e-12) out.push_back("weights not normalized");
  if (g.weights.size() != g.points.size())
    out.push_back("weights length differs from grid size");
  for (double v : ds.values())
    if (!std::isfinite(v)) {
      out.push_back("curve matrix contains non-finite entries");
      break;
    }
  return out;
}

double sup_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("curve length mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

std::vector<double> pairwise_sup_distances(const FunctionalDataset& ds,
                                           std::size_t threads) {
  std::size_t n = ds.n_curves();
  if (n < 2)
    throw std::invalid_argument("pairwise distances need at least 2 curves");
  std::vector<double> out(n * (n - 1) / 2);
  parallel_for(
      0, n - 1,
      [&](std::size_t i) {
        std::size_t base = i * (2 * n - i - 1) / 2;
        for (std::size_t j = i + 1; j < n; ++j)
          out[base + (j - i - 1)] = sup_distance(ds.curve(i), ds.curve(j));
      },
      threads);
  return out;
}

double interpolated_quantile(const std::vector<double>& sorted, double prob) {
  if (sorted.empty()) throw std::invalid_argument("empty sample");
  if (prob < 0.0 || prob > 1.0)
    throw std::invalid_argument("quantile order outside [0,1]");
  double h = (static_cast<double>(sorted.size()) - 1.0) * prob;
  std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

TauSelection select_tau(const FunctionalDataset& ds,
                        const std::vector<double>& probs, bool keep_stats,
                        std::size_t threads) {
  for (double p : probs)
    if (p < 0.0 || p > 1.0)
      throw std::invalid_argument("quantile order outside [0,1]");
  std::vector<double> dist = pairwise_sup_distances(ds, threads);
  std::vector<double> sorted = dist;
  std::sort(sorted.begin(), sorted.end());
  TauSelection sel;
  sel.probs = probs;
  sel.quantiles.reserve(probs.size());
  for (double p : probs) sel.quantiles.push_back(interpolated_quantile(sorted, p));
  if (keep_stats) sel.stats = std::move(dist);
  return sel;
}

FunctionalDataset affine_transform(const FunctionalDataset& ds,
                                   const std::vector<double>& a,
                                   const std::vector<double>& b) {
  std::size_t p = ds.n_points();
  if (a.size() != p || b.size() != p)
    throw std::invalid_argument("a and b must have one entry per grid point");
  bool all_pos = true, all_neg = true;
  for (double v : a) {
    if (!(v > 0.0)) all_pos = false;
    if (!(v < 0.0)) all_neg = false;
  }
  if (!all_pos && !all_neg)
    throw std::invalid_argument("a must be nonzero with constant sign");
  std::vector<double> values(ds.values().size());
  for (std::size_t i = 0; i < ds.n_curves(); ++i)
    for (std::size_t k = 0; k < p; ++k)
      values[i * p + k] = a[k] * ds.at(i, k) + b[k];
  return FunctionalDataset(ds.grid(), std::move(values), ds.n_curves(),
                           ds.labels());
}

FunctionalDataset mad_standardize(const FunctionalDataset& ds) {
  std::size_t n = ds.n_curves(), p = ds.n_points();
  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t m = v.size();
    return m % 2 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
  };
  std::vector<double> values(n * p);
  std::vector<double> col(n);
  for (std::size_t k = 0; k < p; ++k) {
    for (std::size_t i = 0; i < n; ++i) col[i] = ds.at(i, k);
    double med = median(col);
    std::vector<double> dev(n);
    for (std::size_t i = 0; i < n; ++i) dev[i] = std::abs(col[i] - med);
    double mad = median(std::move(dev));
    if (mad == 0.0)
      throw std::invalid_argument("zero MAD at grid point " + std::to_string(k + 1));
    for (std::size_t i = 0; i < n; ++i)
      values[i * p + k] = (col[i] - med) / mad;
  }
  return FunctionalDataset(ds.grid(), std::move(values), n, ds.labels());
}

}  // namespace fdepth
