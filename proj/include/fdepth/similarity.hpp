#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <utility>

#include "fdepth/dataset.hpp"

namespace fdepth {

// An invariant the library itself should have guaranteed was broken.
struct internal_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SimilarityMethod { HR, LocalHR, LocalMHR };

std::string similarity_method_name(SimilarityMethod m);

// Symmetric n x n similarity; diagonal entries are the curve depths.
struct SimilarityMatrix {
  std::size_t n = 0;
  SimilarityMethod method = SimilarityMethod::HR;
  std::optional<TauFunction> tau;
  std::vector<double> values;  // row-major

  double at(std::size_t i, std::size_t j) const { return values[i * n + j]; }
};

// Symmetric, zero diagonal, nonnegative.
struct DissimilarityMatrix {
  std::size_t n = 0;
  std::vector<double> values;

  DissimilarityMatrix() = default;
  DissimilarityMatrix(std::size_t n_, std::vector<double> v);
  double at(std::size_t i, std::size_t j) const { return values[i * n + j]; }
};

// Pointwise min and max of two curves.
std::pair<std::vector<double>, std::vector<double>> envelope(
    std::span<const double> x, std::span<const double> y);

double sim_hr(std::span<const double> x, std::span<const double> y,
              const FunctionalDataset& ds);

double local_sim_hr(std::span<const double> x, std::span<const double> y,
                    const FunctionalDataset& ds, const TauFunction& tau);

double local_sim_mhr(std::span<const double> x, std::span<const double> y,
                     const FunctionalDataset& ds, const TauFunction& tau);

double similarity_entry(const FunctionalDataset& ds, SimilarityMethod method,
                        const TauFunction* tau, std::size_t i, std::size_t j);

SimilarityMatrix similarity_matrix(const FunctionalDataset& ds,
                                   SimilarityMethod method,
                                   const std::optional<TauFunction>& tau,
                                   std::size_t threads = 0);

// d_ij = sqrt(s_ii + s_jj - 2 s_ij); tiny negative radicands clamp to 0.
DissimilarityMatrix gower_dissimilarity(const SimilarityMatrix& s);

void write_matrix_csv(std::ostream& out, const std::vector<double>& values,
                      std::size_t n, const std::vector<std::string>& labels);
// Binary layout: "FDSIMM01" magic, u64 n, then n*n little-endian doubles.
void write_matrix_binary(std::ostream& out, const std::vector<double>& values,
                         std::size_t n);

// Streams the (dis)similarity matrix in blocks of rows so only
// O(block_rows * n) entries are resident; output matches the in-memory path.
void stream_similarity(std::ostream& out, const FunctionalDataset& ds,
                       SimilarityMethod method,
                       const std::optional<TauFunction>& tau, bool gower,
                       bool binary, std::size_t block_rows,
                       std::size_t threads = 0);

}  // namespace fdepth
