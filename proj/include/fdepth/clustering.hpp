#pragma once

#include <string>
#include <vector>

#include "fdepth/similarity.hpp"

namespace fdepth {

// Agglomerative merge sequence. Leaves carry ids 1..n; the cluster created
// by merge j (1-based) has id n + j. left < right within each record.
struct Dendrogram {
  struct Merge {
    int left = 0;
    int right = 0;
    double height = 0.0;
    int size = 0;
  };
  std::size_t n = 0;
  std::vector<Merge> merges;

  std::string to_json() const;
  std::string to_newick(const std::vector<std::string>& labels = {}) const;
};

struct ClusterLabels {
  std::vector<int> labels;  // values in 1..k
  int k = 0;
};

struct SilhouetteReport {
  std::vector<double> widths;
  std::vector<double> cluster_means;  // indexed by label - 1
  double overall_mean = 0.0;
  bool degenerate = false;  // k == 1, all widths zero

  void write_csv(const std::string& path, const ClusterLabels& labels,
                 const std::vector<std::string>& names = {}) const;
};

// Lance-Williams Ward update applied to the raw dissimilarities (legacy
// Ward.D); ward_d2 squares the input first and reports sqrt heights.
// Ties in the minimum are broken by the smallest (left id, right id).
Dendrogram ward_linkage(const DissimilarityMatrix& d, bool ward_d2 = false);

// Partition from undoing the last k-1 merges; labels numbered by first
// appearance in leaf order.
ClusterLabels cut_tree(const Dendrogram& dg, int k);

SilhouetteReport silhouette(const ClusterLabels& labels,
                            const DissimilarityMatrix& d,
                            std::size_t threads = 0);

// Adjusted Rand index between two labelings.
double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace fdepth
