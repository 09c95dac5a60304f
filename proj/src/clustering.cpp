#include "fdepth/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "fdepth/parallel.hpp"
#include "json.hpp"

namespace fdepth {

std::string Dendrogram::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  auto arr = nlohmann::json::array();
  for (const auto& m : merges)
    arr.push_back({m.left, m.right, m.height, m.size});
  j["merges"] = arr;
  return j.dump();
}

std::string Dendrogram::to_newick(const std::vector<std::string>& labels) const {
  if (merges.empty()) {
    std::string leaf = labels.empty() ? "1" : labels[0];
    return leaf + ";";
  }
  std::size_t total = n + merges.size();
  std::vector<double> height(total + 1, 0.0);
  for (std::size_t j = 0; j < merges.size(); ++j)
    height[n + j + 1] = merges[j].height;

  std::function<std::string(int)> render = [&](int id) -> std::string {
    if (id <= static_cast<int>(n)) {
      if (static_cast<std::size_t>(id - 1) < labels.size())
        return labels[id - 1];
      return std::to_string(id);
    }
    const Merge& m = merges[id - static_cast<int>(n) - 1];
    double h = height[id];
    auto branch = [&](int child) {
      double len = std::max(0.0, h - height[child]);
      std::ostringstream os;
      os << render(child) << ':' << len;
      return os.str();
    };
    return "(" + branch(m.left) + "," + branch(m.right) + ")";
  };
  return render(static_cast<int>(total)) + ";";
}

namespace {

using PairKey = std::pair<int, int>;

struct Agglomerator {
  std::size_t n;
  std::vector<double> dist;  // n x n, distances between active slots
  std::vector<bool> active;
  std::vector<int> cid;   // current cluster id per slot
  std::vector<int> size;
  std::vector<std::size_t> best_j;
  std::vector<double> best_d;

  explicit Agglomerator(const DissimilarityMatrix& d, bool squared)
      : n(d.n),
        dist(d.values),
        active(d.n, true),
        cid(d.n),
        size(d.n, 1),
        best_j(d.n),
        best_d(d.n) {
    if (squared)
      for (auto& v : dist) v *= v;
    for (std::size_t i = 0; i < n; ++i) cid[i] = static_cast<int>(i + 1);
    for (std::size_t i = 0; i < n; ++i) compute_best(i);
  }

  PairKey key(std::size_t a, std::size_t b) const {
    return {std::min(cid[a], cid[b]), std::max(cid[a], cid[b])};
  }

  bool better(double d1, PairKey k1, double d2, PairKey k2) const {
    if (d1 != d2) return d1 < d2;
    return k1 < k2;
  }

  void compute_best(std::size_t i) {
    best_d[i] = std::numeric_limits<double>::infinity();
    best_j[i] = i;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || !active[j]) continue;
      double dij = dist[i * n + j];
      if (best_j[i] == i ||
          better(dij, key(i, j), best_d[i], key(i, best_j[i]))) {
        best_d[i] = dij;
        best_j[i] = j;
      }
    }
  }

  Dendrogram run(bool sqrt_heights) {
    Dendrogram dg;
    dg.n = n;
    for (std::size_t step = 1; step < n; ++step) {
      // Globally closest active pair, ties by smallest (left id, right id).
      std::size_t a = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (!active[i] || best_j[i] == i) continue;
        if (a == n || better(best_d[i], key(i, best_j[i]), best_d[a],
                             key(a, best_j[a])))
          a = i;
      }
      std::size_t b = best_j[a];
      if (a > b) std::swap(a, b);

      double dab = dist[a * n + b];
      Dendrogram::Merge m;
      m.left = std::min(cid[a], cid[b]);
      m.right = std::max(cid[a], cid[b]);
      m.height = sqrt_heights ? std::sqrt(dab) : dab;
      m.size = size[a] + size[b];
      dg.merges.push_back(m);

      double na = size[a], nb = size[b];
      for (std::size_t k = 0; k < n; ++k) {
        if (!active[k] || k == a || k == b) continue;
        double nk = size[k];
        double upd = ((na + nk) * dist[a * n + k] + (nb + nk) * dist[b * n + k] -
                      nk * dab) /
                     (na + nb + nk);
        dist[a * n + k] = upd;
        dist[k * n + a] = upd;
      }
      active[b] = false;
      cid[a] = static_cast<int>(n + step);
      size[a] = m.size;

      for (std::size_t k = 0; k < n; ++k) {
        if (!active[k] || k == a) continue;
        if (best_j[k] == a || best_j[k] == b) {
          compute_best(k);
        } else if (better(dist[k * n + a], key(k, a), best_d[k],
                          key(k, best_j[k]))) {
          best_d[k] = dist[k * n + a];
          best_j[k] = a;
        }
      }
      compute_best(a);
    }
    return dg;
  }
};

}  // namespace

Dendrogram ward_linkage(const DissimilarityMatrix& d, bool ward_d2) {
  if (d.n < 2) throw std::invalid_argument("clustering needs at least 2 items");
  Agglomerator agg(d, ward_d2);
  return agg.run(ward_d2);
}

ClusterLabels cut_tree(const Dendrogram& dg, int k) {
  std::size_t n = dg.n;
  if (k < 1 || static_cast<std::size_t>(k) > n)
    throw std::invalid_argument("k must be in [1, n]");
  // Union-find over cluster ids; apply the first n-k merges.
  std::vector<int> parent(n + dg.merges.size() + 1);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::size_t applied = n - static_cast<std::size_t>(k);
  for (std::size_t j = 0; j < applied; ++j) {
    const auto& m = dg.merges[j];
    int id = static_cast<int>(n + j + 1);
    parent[find(m.left)] = id;
    parent[find(m.right)] = id;
  }
  ClusterLabels out;
  out.k = k;
  out.labels.resize(n);
  std::map<int, int> seen;  // root -> label, by first appearance
  for (std::size_t i = 0; i < n; ++i) {
    int root = find(static_cast<int>(i + 1));
    auto it = seen.find(root);
    if (it == seen.end())
      it = seen.emplace(root, static_cast<int>(seen.size()) + 1).first;
    out.labels[i] = it->second;
  }
  return out;
}

SilhouetteReport silhouette(const ClusterLabels& labels,
                            const DissimilarityMatrix& d, std::size_t threads) {
  std::size_t n = d.n;
  if (labels.labels.size() != n)
    throw std::invalid_argument("label count does not match matrix size");
  int k = labels.k;
  SilhouetteReport rep;
  rep.widths.assign(n, 0.0);
  rep.cluster_means.assign(static_cast<std::size_t>(k), 0.0);
  if (k <= 1) {
    rep.degenerate = true;
    return rep;
  }
  std::vector<std::size_t> cluster_size(static_cast<std::size_t>(k), 0);
  for (int lab : labels.labels) cluster_size[lab - 1]++;

  parallel_for(
      0, n,
      [&](std::size_t i) {
        int own = labels.labels[i] - 1;
        if (cluster_size[own] <= 1) {
          rep.widths[i] = 0.0;
          return;
        }
        std::vector<double> sums(static_cast<std::size_t>(k), 0.0);
        for (std::size_t j = 0; j < n; ++j)
          if (j != i) sums[labels.labels[j] - 1] += d.at(i, j);
        double a = sums[own] / static_cast<double>(cluster_size[own] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (int c = 0; c < k; ++c) {
          if (c == own || cluster_size[c] == 0) continue;
          b = std::min(b, sums[c] / static_cast<double>(cluster_size[c]));
        }
        double m = std::max(a, b);
        rep.widths[i] = m > 0.0 ? (b - a) / m : 0.0;
      },
      threads);

  for (std::size_t i = 0; i < n; ++i)
    rep.cluster_means[labels.labels[i] - 1] += rep.widths[i];
  for (int c = 0; c < k; ++c)
    if (cluster_size[c] > 0)
      rep.cluster_means[c] /= static_cast<double>(cluster_size[c]);
  rep.overall_mean =
      std::accumulate(rep.widths.begin(), rep.widths.end(), 0.0) /
      static_cast<double>(n);
  return rep;
}

void SilhouetteReport::write_csv(const std::string& path,
                                 const ClusterLabels& labels,
                                 const std::vector<std::string>& names) const {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open file for writing: " + path);
  f << "label,cluster,width\n";
  for (std::size_t i = 0; i < widths.size(); ++i) {
    std::string nm = i < names.size() ? names[i] : std::to_string(i + 1);
    f << nm << ',' << labels.labels[i] << ',' << widths[i] << '\n';
  }
}

double adjusted_rand_index(const std::vector<int>& a,
                           const std::vector<int>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("labelings must have equal length");
  std::size_t n = a.size();
  std::map<std::pair<int, int>, double> cells;
  std::map<int, double> rows, cols;
  for (std::size_t i = 0; i < n; ++i) {
    cells[{a[i], b[i]}] += 1.0;
    rows[a[i]] += 1.0;
    cols[b[i]] += 1.0;
  }
  auto choose2 = [](double x) { return x * (x - 1.0) / 2.0; };
  double sum_cells = 0.0, sum_rows = 0.0, sum_cols = 0.0;
  for (auto& [key, v] : cells) sum_cells += choose2(v);
  for (auto& [key, v] : rows) sum_rows += choose2(v);
  for (auto& [key, v] : cols) sum_cols += choose2(v);
  double total = choose2(static_cast<double>(n));
  double expected = sum_rows * sum_cols / total;
  double max_index = 0.5 * (sum_rows + sum_cols);
  if (max_index == expected) return 1.0;
  return (sum_cells - expected) / (max_index - expected);
}

}  // namespace fdepth
