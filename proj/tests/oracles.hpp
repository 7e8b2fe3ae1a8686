#pragma once

// Independent reference implementations used to verify the library. These
// deliberately re-derive every quantity with their own code paths (direct
// 2D convolutions, std::set-based flooding, pair enumeration) instead of
// calling into the library internals they check.

#include <cstdint>
#include <vector>

#include "pallor/raster.hpp"
#include "pallor/regions.hpp"

namespace oracle {

struct SobelResult {
  pallor::ScalarGrid magnitude;
  pallor::ScalarGrid direction;
};

// Brute-force 3x3 convolution with replicate borders.
SobelResult sobel(const pallor::ScalarGrid& plane);

// Direct (non-separable) truncated Gaussian convolution.
pallor::ScalarGrid gaussian(const pallor::ScalarGrid& plane, double sigma);

// Frangi response by explicit finite differences on the smoothed image.
pallor::ScalarGrid frangi(const pallor::ScalarGrid& plane, const std::vector<double>& scales,
                          double beta, double c, bool dark_ridges);

// Meyer priority flood built on std::set, with its own morphological
// gradient; same policy as the library (raster-order neighbors and seeds,
// FIFO among equal relief values).
pallor::RegionLabeling watershed(const pallor::ScalarGrid& plane, const pallor::RegionMask& mask,
                                 int se_radius);

// Canonical form of a labeling for permutation-insensitive comparison:
// per-region pixel index sets, sorted.
std::vector<std::vector<int>> partition_signature(const pallor::RegionLabeling& labeling);

// Per-pixel bilinear formula with pixel-center alignment.
double bilinear_at(const pallor::RasterImage& img, int out_x, int out_y, int out_w, int out_h,
                   int channel);

struct Stats {
  double max;
  double mean;
  double variance;
};

// Enumeration statistics over the masked pixels.
Stats region_stats(const pallor::ScalarGrid& plane, const pallor::RegionMask& mask);

// AUC by positive-negative pair enumeration; ties count 0.5.
double auc_pairs(const std::vector<double>& scores, const std::vector<int>& labels);

}  // namespace oracle
