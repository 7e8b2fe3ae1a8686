#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "pallor/edge_filters.hpp"
#include "pallor/raster.hpp"
#include "pallor/regions.hpp"
#include "pallor/segmentation.hpp"
#include "pallor/site.hpp"

namespace pallor {

struct SchemaEntry {
  std::string region;
  std::string plane;
  std::string stat;  // max | mean | variance
  std::string name() const { return region + "." + plane + "." + stat; }
};

struct FeatureSchema {
  std::vector<SchemaEntry> entries;

  std::size_t size() const { return entries.size(); }
  std::vector<std::string> names() const;
  std::uint64_t hash() const;  // FNV-1a over the entry names

  // 54-entry schema: per region (eye: sclera, conjunctiva; tongue: inner,
  // outer), (max, mean, variance) of red, green, blue, hue, saturation,
  // intensity, green gradient magnitude, green gradient direction and green
  // vesselness.
  static FeatureSchema m1(Site site);

  // 108-entry schema: (max, mean, variance) over the foreground mask for each
  // of the 36 extrapolated planes.
  static FeatureSchema m2();
};

struct FeatureVector {
  std::vector<double> values;
  std::string image_id;
  Site site = Site::eye;
  int grade = 0;
};

struct RegionStatistics {
  double max = 0.0;
  double mean = 0.0;
  double variance = 0.0;  // population variance
};

// Statistics over the masked pixels, accumulated in raster order.
RegionStatistics region_stats(const ScalarGrid& plane, const RegionMask& region);

FeatureVector extract_m1_features(const RasterImage& img, const EyeRois& rois,
                                  const FrangiOptions& frangi = {});
FeatureVector extract_m1_features(const RasterImage& img, const TongueRois& rois,
                                  const FrangiOptions& frangi = {});

enum class Enhancement { none, gradient, frangi };
std::string_view enhancement_name(Enhancement e);

// The 36 extrapolated planes: the 12 color planes raw, with their own Sobel
// magnitude superimposed, and with their own vesselness response
// superimposed, in that order.
struct ExtrapolatedPlaneSet {
  struct Entry {
    PlaneId plane;
    Enhancement enhancement;
    ScalarGrid pixels;  // [0,1]
  };
  std::vector<Entry> planes;
};

ExtrapolatedPlaneSet extrapolate_m2_planes(const RasterImage& img,
                                           const FrangiOptions& frangi = {});

struct PlaneFeature {
  PlaneId plane;
  Enhancement enhancement;
  RegionStatistics stats;
};

// Per-plane (max, mean, variance) over the foreground mask; one entry per
// extrapolated plane.
std::vector<PlaneFeature> m2_plane_features(const ExtrapolatedPlaneSet& planes,
                                            const RegionMask& g);

// Flattens the 36 per-plane statistics into one vector aligned with
// FeatureSchema::m2().
std::vector<double> flatten_m2_features(const std::vector<PlaneFeature>& features);

// CSV export: header of schema entry names plus trailing image_id, site,
// grade columns, one row per image.
void write_feature_csv(const std::filesystem::path& path, const FeatureSchema& schema,
                       const std::vector<FeatureVector>& rows);

}  // namespace pallor
