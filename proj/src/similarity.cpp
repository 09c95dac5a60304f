#include "fdepth/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <ostream>
#include <stdexcept>

#include "fdepth/depth.hpp"
#include "fdepth/local_depth.hpp"
#include "fdepth/parallel.hpp"

namespace fdepth {

std::string similarity_method_name(SimilarityMethod m) {
  switch (m) {
    case SimilarityMethod::HR: return "HR";
    case SimilarityMethod::LocalHR: return "localHR";
    default: return "localMHR";
  }
}

DissimilarityMatrix::DissimilarityMatrix(std::size_t n_, std::vector<double> v)
    : n(n_), values(std::move(v)) {
  if (values.size() != n * n)
    throw std::invalid_argument("matrix size does not match n");
}

std::pair<std::vector<double>, std::vector<double>> envelope(
    std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw std::invalid_argument("curve length mismatch");
  std::vector<double> w(x.size()), z(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    w[k] = std::min(x[k], y[k]);
    z[k] = std::max(x[k], y[k]);
  }
  return {std::move(w), std::move(z)};
}

double sim_hr(std::span<const double> x, std::span<const double> y,
              const FunctionalDataset& ds) {
  auto [w, z] = envelope(x, y);
  double r_hyp = hypo_epi_proportions(w, ds).first;
  double r_epi = hypo_epi_proportions(z, ds).second;
  return std::min(r_hyp, r_epi);
}

double local_sim_hr(std::span<const double> x, std::span<const double> y,
                    const FunctionalDataset& ds, const TauFunction& tau) {
  auto [w, z] = envelope(x, y);
  double lr_hyp = local_hypo_epi_proportions(w, ds, tau).first;
  double lr_epi = local_hypo_epi_proportions(z, ds, tau).second;
  return std::min(lr_hyp, lr_epi);
}

double local_sim_mhr(std::span<const double> x, std::span<const double> y,
                     const FunctionalDataset& ds, const TauFunction& tau) {
  std::size_t p = ds.n_points();
  if (x.size() != p || y.size() != p)
    throw std::invalid_argument("curve length mismatch");
  if (tau.size() != p)
    throw std::invalid_argument("tau must have one entry per grid point");
  for (double t : tau.values)
    if (!(t >= 0.0)) throw std::invalid_argument("tau entries must be >= 0");

  auto [w, z] = envelope(x, y);
  std::size_t n = ds.n_curves();
  const std::vector<double>& gw = ds.grid().weights;
  double el = 0.0, hl = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* yi = ds.values().data() + i * p;
    // Joint band [z - tau, w + tau]; empty for well separated pairs.
    bool in_band = true;
    double fe = 0.0, fh = 0.0;
    for (std::size_t k = 0; k < p; ++k) {
      double v = yi[k];
      if (v < z[k] - tau[k] || v > w[k] + tau[k]) {
        in_band = false;
        break;
      }
      if (v >= z[k] && v <= z[k] + tau[k]) fe += gw[k];
      if (v >= w[k] - tau[k] && v <= w[k]) fh += gw[k];
    }
    if (in_band) {
      el += fe;
      hl += fh;
    }
  }
  double dn = static_cast<double>(n);
  return std::min(el / dn, hl / dn);
}

double similarity_entry(const FunctionalDataset& ds, SimilarityMethod method,
                        const TauFunction* tau, std::size_t i, std::size_t j) {
  switch (method) {
    case SimilarityMethod::HR:
      return sim_hr(ds.curve(i), ds.curve(j), ds);
    case SimilarityMethod::LocalHR:
      return local_sim_hr(ds.curve(i), ds.curve(j), ds, *tau);
    default:
      return local_sim_mhr(ds.curve(i), ds.curve(j), ds, *tau);
  }
}

namespace {

const TauFunction* require_tau(SimilarityMethod method,
                               const std::optional<TauFunction>& tau) {
  if (method == SimilarityMethod::HR) return nullptr;
  if (!tau)
    throw std::invalid_argument("tau is required for local similarity methods");
  return &*tau;
}

}  // namespace

SimilarityMatrix similarity_matrix(const FunctionalDataset& ds,
                                   SimilarityMethod method,
                                   const std::optional<TauFunction>& tau,
                                   std::size_t threads) {
  const TauFunction* t = require_tau(method, tau);
  std::size_t n = ds.n_curves();
  SimilarityMatrix s;
  s.n = n;
  s.method = method;
  s.tau = tau;
  s.values.resize(n * n);
  parallel_for(
      0, n,
      [&](std::size_t i) {
        for (std::size_t j = i; j < n; ++j) {
          double v = similarity_entry(ds, method, t, i, j);
          s.values[i * n + j] = v;
          s.values[j * n + i] = v;
        }
      },
      threads);
  return s;
}

DissimilarityMatrix gower_dissimilarity(const SimilarityMatrix& s) {
  std::size_t n = s.n;
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double r = s.at(i, i) + s.at(j, j) - 2.0 * s.at(i, j);
      if (r < -1e-12)
        throw internal_error(
            "similarity matrix violates s_ij <= min(s_ii, s_jj)");
      d[i * n + j] = std::sqrt(std::max(r, 0.0));
    }
  return DissimilarityMatrix(n, std::move(d));
}

void write_matrix_csv(std::ostream& out, const std::vector<double>& values,
                      std::size_t n, const std::vector<std::string>& labels) {
  auto label = [&](std::size_t i) {
    return i < labels.size() ? labels[i] : std::to_string(i + 1);
  };
  out << "label";
  for (std::size_t j = 0; j < n; ++j) out << ',' << label(j);
  out << '\n';
  char buf[64];
  for (std::size_t i = 0; i < n; ++i) {
    out << label(i);
    for (std::size_t j = 0; j < n; ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", values[i * n + j]);
      out << ',' << buf;
    }
    out << '\n';
  }
}

void write_matrix_binary(std::ostream& out, const std::vector<double>& values,
                         std::size_t n) {
  out.write("FDSIMM01", 8);
  std::uint64_t n64 = n;
  out.write(reinterpret_cast<const char*>(&n64), sizeof(n64));
  out.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(double)));
}

void stream_similarity(std::ostream& out, const FunctionalDataset& ds,
                       SimilarityMethod method,
                       const std::optional<TauFunction>& tau, bool gower,
                       bool binary, std::size_t block_rows,
                       std::size_t threads) {
  const TauFunction* t = require_tau(method, tau);
  std::size_t n = ds.n_curves();
  if (block_rows == 0) block_rows = n;

  std::vector<double> diag(n);
  if (gower) {
    parallel_for(
        0, n,
        [&](std::size_t i) { diag[i] = similarity_entry(ds, method, t, i, i); },
        threads);
  }

  if (binary) {
    out.write("FDSIMM01", 8);
    std::uint64_t n64 = n;
    out.write(reinterpret_cast<const char*>(&n64), sizeof(n64));
  } else {
    auto label = [&](std::size_t j) {
      const auto& labels = ds.labels();
      return j < labels.size() ? labels[j] : std::to_string(j + 1);
    };
    out << "label";
    for (std::size_t j = 0; j < n; ++j) out << ',' << label(j);
    out << '\n';
  }

  std::vector<double> block(block_rows * n);
  char buf[64];
  for (std::size_t r0 = 0; r0 < n; r0 += block_rows) {
    std::size_t r1 = std::min(n, r0 + block_rows);
    parallel_for(
        r0, r1,
        [&](std::size_t i) {
          double* row = block.data() + (i - r0) * n;
          for (std::size_t j = 0; j < n; ++j) {
            double v = similarity_entry(ds, method, t, std::min(i, j),
                                        std::max(i, j));
            if (gower) {
              double rad = diag[i] + diag[j] - 2.0 * v;
              v = std::sqrt(std::max(rad, 0.0));
            }
            row[j] = v;
          }
        },
        threads);
    if (binary) {
      out.write(reinterpret_cast<const char*>(block.data()),
                static_cast<std::streamsize>((r1 - r0) * n * sizeof(double)));
    } else {
      const auto& labels = ds.labels();
      for (std::size_t i = r0; i < r1; ++i) {
        out << (i < labels.size() ? labels[i] : std::to_string(i + 1));
        for (std::size_t j = 0; j < n; ++j) {
          std::snprintf(buf, sizeof(buf), "%.17g", block[(i - r0) * n + j]);
          out << ',' << buf;
        }
        out << '\n';
      }
    }
  }
}

}  // namespace fdepth
