#pragma once

#include <utility>

#include "fdepth/dataset.hpp"
#include "fdepth/depth.hpp"

namespace fdepth {

// True iff center - tau <= member <= center + tau at every grid point.
bool band_contains(std::span<const double> member, std::span<const double> center,
                   const TauFunction& tau);

// Fractions of sample curves lying entirely in [y - tau, y] / [y, y + tau].
std::pair<double, double> local_hypo_epi_proportions(std::span<const double> y,
                                                     const FunctionalDataset& ds,
                                                     const TauFunction& tau);

double local_depth_hr(std::span<const double> y, const FunctionalDataset& ds,
                      const TauFunction& tau);

// Banded mean time fractions: each sample curve contributes its weighted
// time in [y, y + tau] (el) or [y - tau, y] (hl), gated by the band
// indicator over [y - tau, y + tau].
std::pair<double, double> local_length_proportions(std::span<const double> y,
                                                   const FunctionalDataset& ds,
                                                   const TauFunction& tau);

double local_depth_mhr(std::span<const double> y, const FunctionalDataset& ds,
                       const TauFunction& tau);

DepthReport local_depth_all(const FunctionalDataset& ds, const TauFunction& tau,
                            DepthMethod method, std::size_t threads = 0);

}  // namespace fdepth
