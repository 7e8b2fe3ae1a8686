#pragma once

#include <vector>

#include "pallor/raster.hpp"
#include "pallor/regions.hpp"
#include "pallor/site.hpp"

namespace pallor {

struct EyeRois {
  RegionMask iris;
  RegionMask sclera;
  RegionMask conjunctiva;
};

struct TongueRois {
  RegionMask inner;
  RegionMask outer;
};

// Pallor-site foreground: largest 8-connected component of an Otsu threshold
// on the value plane (eye) or the saturation*value product (tongue), closed
// with a disk of radius 3. Degenerate constant images raise EmptyMask.
RegionMask detect_foreground_mask(const RasterImage& img, Site site);

// 8-connected components of {p < threshold} with area strictly greater than
// min_area, in raster order.
std::vector<RegionMask> threshold_dark_regions(const ScalarGrid& plane, double threshold,
                                               long min_area);

// As above, with candidate pixels restricted to a mask.
std::vector<RegionMask> threshold_dark_regions(const ScalarGrid& plane, double threshold,
                                               long min_area, const RegionMask& within);

// Eye ROI extraction:
//   iris   — dark red-plane region (threshold 0.1, area > 100, inside g) with
//            the highest major/minor axis ratio
//   sclera — watershed regions of the masked green plane that touch the
//            1-pixel dilated iris boundary, iris pixels removed
//   conjunctiva — g minus iris minus sclera
EyeRois segment_eye(const RasterImage& img, const RegionMask& g);

// Tongue ROI extraction: watershed regions of the masked green plane that
// intersect the outer-edge band (Sobel magnitude >= 0.5 of the band maximum,
// within 5 px of the g boundary) form the outer region; the rest is inner.
TongueRois segment_tongue(const RasterImage& img, const RegionMask& g);

struct SegmentationConfig {
  double iris_red_threshold = 0.1;
  long iris_min_area = 100;
  int watershed_se_radius = 5;
  double tongue_edge_threshold_fraction = 0.5;
  int tongue_edge_band_distance = 5;
};

EyeRois segment_eye(const RasterImage& img, const RegionMask& g, const SegmentationConfig& cfg);
TongueRois segment_tongue(const RasterImage& img, const RegionMask& g,
                          const SegmentationConfig& cfg);

}  // namespace pallor
