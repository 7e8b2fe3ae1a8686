#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pallor/edge_filters.hpp"
#include "pallor/evaluation.hpp"
#include "pallor/features.hpp"
#include "pallor/manifest.hpp"
#include "pallor/segmentation.hpp"
#include "pallor/synthetic.hpp"

namespace pallor {

struct PipelineOptions {
  SegmentationConfig segmentation;
  FrangiOptions frangi;
};

// One image through the pipeline. M2 products always exist; M1 products are
// absent when ROI extraction failed (m1_failure carries the reason and the
// image stays usable for M2).
struct ProcessedImage {
  std::string image_id;
  Site site = Site::eye;
  int grade = 0;
  RasterImage image;       // resized to 125x125
  RegionMask foreground;   // detected or supplied
  bool has_rois = false;
  EyeRois eye_rois;
  TongueRois tongue_rois;
  std::optional<FeatureVector> m1;
  FeatureVector m2;                    // 108 values over the foreground
  std::vector<PlaneFeature> m2_planes; // 36 per-plane statistics
  std::string m1_failure;
};

// Loads, resizes to 125x125, detects (or adopts) the foreground, segments,
// and extracts both feature families. Mask overrides are nearest-resampled
// to 125x125 when needed.
ProcessedImage process_image(const std::filesystem::path& image_path, Site site, int grade,
                             const std::optional<std::filesystem::path>& mask_path,
                             const PipelineOptions& options);

// In-memory variant used for synthetic data.
ProcessedImage process_image(const RasterImage& image, const std::string& image_id, Site site,
                             int grade, const std::optional<RegionMask>& mask_override,
                             const PipelineOptions& options);

struct BatchResult {
  std::vector<ProcessedImage> images;  // manifest order
  std::vector<std::string> warnings;
};

BatchResult process_manifest(const DatasetManifest& manifest, const PipelineOptions& options);

// Per-plane feature groups (36) collected across a batch, for the plane-rate
// analysis. All images contribute; grades come from the manifest.
std::vector<PerPlaneGroup> collect_plane_groups(const BatchResult& batch);

}  // namespace pallor
