#include "pallor/pipeline.hpp"

#include <cmath>

#include "pallor/image_io.hpp"

namespace pallor {
namespace {

RegionMask mask_from_raster(const RasterImage& raster, int target_size) {
  RegionMask mask(target_size, target_size);
  const int sw = raster.width();
  const int sh = raster.height();
  for (int y = 0; y < target_size; ++y) {
    for (int x = 0; x < target_size; ++x) {
      // Nearest-neighbor resampling.
      int sx = static_cast<int>((x + 0.5) * sw / target_size);
      int sy = static_cast<int>((y + 0.5) * sh / target_size);
      sx = std::min(sx, sw - 1);
      sy = std::min(sy, sh - 1);
      if (raster.at(sx, sy, 0) > 0.5) mask.set(x, y, true);
    }
  }
  return mask;
}

}  // namespace

ProcessedImage process_image(const RasterImage& image, const std::string& image_id, Site site,
                             int grade, const std::optional<RegionMask>& mask_override,
                             const PipelineOptions& options) {
  ProcessedImage out;
  out.image_id = image_id;
  out.site = site;
  out.grade = grade;
  out.image = image.width() == kSyntheticSize && image.height() == kSyntheticSize
                  ? image
                  : resize_bilinear(image, kSyntheticSize, kSyntheticSize);

  if (mask_override) {
    if (mask_override->empty()) {
      throw Error(ErrorCode::empty_mask, image_id + ": supplied mask is empty");
    }
    out.foreground = *mask_override;
  } else {
    out.foreground = detect_foreground_mask(out.image, site);
  }

  try {
    if (site == Site::eye) {
      out.eye_rois = segment_eye(out.image, out.foreground, options.segmentation);
      out.m1 = extract_m1_features(out.image, out.eye_rois, options.frangi);
    } else {
      out.tongue_rois = segment_tongue(out.image, out.foreground, options.segmentation);
      out.m1 = extract_m1_features(out.image, out.tongue_rois, options.frangi);
    }
    out.has_rois = true;
    out.m1->image_id = image_id;
    out.m1->site = site;
    out.m1->grade = grade;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::iris_not_found && e.code() != ErrorCode::empty_region) throw;
    out.m1_failure = e.what();
  }

  const ExtrapolatedPlaneSet planes = extrapolate_m2_planes(out.image, options.frangi);
  out.m2_planes = m2_plane_features(planes, out.foreground);
  out.m2.values = flatten_m2_features(out.m2_planes);
  out.m2.image_id = image_id;
  out.m2.site = site;
  out.m2.grade = grade;
  return out;
}

ProcessedImage process_image(const std::filesystem::path& image_path, Site site, int grade,
                             const std::optional<std::filesystem::path>& mask_path,
                             const PipelineOptions& options) {
  const RasterImage raw = load_raster(image_path);
  std::optional<RegionMask> mask;
  if (mask_path) {
    mask = mask_from_raster(load_raster(*mask_path), kSyntheticSize);
  }
  return process_image(raw, image_path.stem().string(), site, grade, mask, options);
}

BatchResult process_manifest(const DatasetManifest& manifest, const PipelineOptions& options) {
  BatchResult out;
  out.images.reserve(manifest.rows.size());
  for (const ManifestRow& row : manifest.rows) {
    ProcessedImage processed =
        process_image(row.image_path, row.site, row.grade, row.mask_path, options);
    if (!processed.has_rois) {
      out.warnings.push_back(processed.image_id + " excluded from m1: " +
                             processed.m1_failure);
    }
    out.images.push_back(std::move(processed));
  }
  return out;
}

std::vector<PerPlaneGroup> collect_plane_groups(const BatchResult& batch) {
  std::vector<PerPlaneGroup> groups;
  groups.reserve(36);
  if (batch.images.empty()) return groups;
  for (const PlaneFeature& f : batch.images[0].m2_planes) {
    groups.push_back({f.plane, f.enhancement, {}});
  }
  for (const ProcessedImage& image : batch.images) {
    for (std::size_t i = 0; i < image.m2_planes.size(); ++i) {
      const RegionStatistics& stats = image.m2_planes[i].stats;
      FeatureVector vec;
      vec.values = {stats.max, stats.mean, stats.variance};
      vec.image_id = image.image_id;
      vec.site = image.site;
      vec.grade = image.grade;
      groups[i].vectors.push_back(std::move(vec));
    }
  }
  return groups;
}

}  // namespace pallor
