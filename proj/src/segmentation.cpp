#include "pallor/segmentation.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "pallor/color_planes.hpp"
#include "pallor/edge_filters.hpp"
#include "pallor/watershed.hpp"

namespace pallor {
namespace {

// Otsu threshold over a 256-bin histogram; nullopt when the histogram is
// concentrated in a single bin.
std::optional<double> otsu_threshold(const ScalarGrid& plane) {
  std::array<long, 256> hist{};
  for (double v : plane.values()) {
    const int bin = std::clamp(static_cast<int>(v * 255.0), 0, 255);
    ++hist[bin];
  }
  const long total = static_cast<long>(plane.size());
  int occupied = 0;
  for (long h : hist) {
    if (h > 0) ++occupied;
  }
  if (occupied < 2) return std::nullopt;

  double sum_all = 0.0;
  for (int i = 0; i < 256; ++i) sum_all += static_cast<double>(i) * hist[i];
  double sum_bg = 0.0;
  long weight_bg = 0;
  double best_var = -1.0;
  int best_bin = 0;
  for (int t = 0; t < 256; ++t) {
    weight_bg += hist[t];
    if (weight_bg == 0) continue;
    const long weight_fg = total - weight_bg;
    if (weight_fg == 0) break;
    sum_bg += static_cast<double>(t) * hist[t];
    const double mean_bg = sum_bg / weight_bg;
    const double mean_fg = (sum_all - sum_bg) / weight_fg;
    const double between = static_cast<double>(weight_bg) * weight_fg *
                           (mean_bg - mean_fg) * (mean_bg - mean_fg);
    if (between > best_var) {
      best_var = between;
      best_bin = t;
    }
  }
  return (best_bin + 0.5) / 255.0;
}

RegionMask largest_component(const RegionMask& mask) {
  const RegionLabeling labeling = label_components(mask);
  if (labeling.region_count == 0) return mask;
  const auto areas = labeling.region_areas();
  std::int32_t best = 1;
  for (std::int32_t i = 2; i <= labeling.region_count; ++i) {
    if (areas[i] > areas[best]) best = i;
  }
  return labeling.region_mask(best);
}

ScalarGrid masked_plane(const ScalarGrid& plane, const RegionMask& mask) {
  ScalarGrid out(plane.width(), plane.height());
  for (int y = 0; y < plane.height(); ++y) {
    for (int x = 0; x < plane.width(); ++x) {
      out.at(x, y) = mask.get(x, y) ? plane.at(x, y) : 0.0;
    }
  }
  return out;
}

}  // namespace

RegionMask detect_foreground_mask(const RasterImage& img, Site site) {
  ScalarGrid score(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const PixelPlanes p = pixel_planes(img.at(x, y, 0), img.at(x, y, 1), img.at(x, y, 2));
      const double value = p[PlaneId::intensity];
      score.at(x, y) = site == Site::tongue ? p[PlaneId::saturation] * value : value;
    }
  }
  const auto threshold = otsu_threshold(score);
  if (!threshold) {
    throw Error(ErrorCode::empty_mask, "foreground detection on a constant image");
  }
  RegionMask above(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      if (score.at(x, y) > *threshold) above.set(x, y, true);
    }
  }
  if (above.empty()) {
    throw Error(ErrorCode::empty_mask, "no pixel above the foreground threshold");
  }
  RegionMask mask = close_mask(largest_component(above), StructuringElement{3});
  if (mask.empty()) {
    throw Error(ErrorCode::empty_mask, "foreground vanished under closing");
  }
  return mask;
}

std::vector<RegionMask> threshold_dark_regions(const ScalarGrid& plane, double threshold,
                                               long min_area) {
  RegionMask everywhere(plane.width(), plane.height());
  for (int y = 0; y < plane.height(); ++y) {
    for (int x = 0; x < plane.width(); ++x) everywhere.set(x, y, true);
  }
  return threshold_dark_regions(plane, threshold, min_area, everywhere);
}

std::vector<RegionMask> threshold_dark_regions(const ScalarGrid& plane, double threshold,
                                               long min_area, const RegionMask& within) {
  RegionMask dark(plane.width(), plane.height());
  for (int y = 0; y < plane.height(); ++y) {
    for (int x = 0; x < plane.width(); ++x) {
      if (within.get(x, y) && plane.at(x, y) < threshold) dark.set(x, y, true);
    }
  }
  const RegionLabeling labeling = label_components(dark);
  const auto areas = labeling.region_areas();
  std::vector<RegionMask> out;
  for (std::int32_t id = 1; id <= labeling.region_count; ++id) {
    if (areas[id] > min_area) out.push_back(labeling.region_mask(id));
  }
  return out;
}

EyeRois segment_eye(const RasterImage& img, const RegionMask& g) {
  return segment_eye(img, g, SegmentationConfig{});
}

EyeRois segment_eye(const RasterImage& img, const RegionMask& g,
                    const SegmentationConfig& cfg) {
  if (g.empty()) {
    throw Error(ErrorCode::empty_mask, "eye segmentation needs a non-empty mask");
  }
  const ScalarGrid red = img.channel(0);
  const auto candidates =
      threshold_dark_regions(red, cfg.iris_red_threshold, cfg.iris_min_area, g);
  if (candidates.empty()) {
    throw Error(ErrorCode::iris_not_found,
                "no dark red-plane region above the area threshold");
  }
  std::size_t best = 0;
  double best_ratio = -1.0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const ShapeStats stats = shape_stats(candidates[i]);
    const double ratio = stats.major_axis / stats.minor_axis;
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best = i;
    }
  }
  const RegionMask& iris = candidates[best];

  const ScalarGrid green = img.channel(1);
  const RegionLabeling watershed =
      watershed_segment(green, g, StructuringElement{cfg.watershed_se_radius});
  const RegionMask iris_border = dilate(boundary(iris), StructuringElement{1});

  RegionMask sclera(g.width(), g.height());
  for (std::int32_t id = 1; id <= watershed.region_count; ++id) {
    const RegionMask region = watershed.region_mask(id);
    const RegionMask without_iris = region.subtract(iris);
    if (without_iris.intersects(iris_border)) {
      sclera = sclera.unite(without_iris);
    }
  }

  const RegionMask conjunctiva = g.subtract(iris.unite(sclera));
  return EyeRois{iris, sclera, conjunctiva};
}

TongueRois segment_tongue(const RasterImage& img, const RegionMask& g) {
  return segment_tongue(img, g, SegmentationConfig{});
}

TongueRois segment_tongue(const RasterImage& img, const RegionMask& g,
                          const SegmentationConfig& cfg) {
  if (g.empty()) {
    throw Error(ErrorCode::empty_mask, "tongue segmentation needs a non-empty mask");
  }
  const ScalarGrid green = img.channel(1);
  const RegionLabeling watershed =
      watershed_segment(green, g, StructuringElement{cfg.watershed_se_radius});

  // Outer-edge band: Sobel magnitude of the masked green plane, thresholded
  // against the band maximum within tongue_edge_band_distance of the g
  // boundary.
  const GradientField grad = sobel_gradient(masked_plane(green, g));
  const RegionMask band = boundary_band(g, cfg.tongue_edge_band_distance);
  double band_max = 0.0;
  for (int y = 0; y < g.height(); ++y) {
    for (int x = 0; x < g.width(); ++x) {
      if (band.get(x, y)) band_max = std::max(band_max, grad.magnitude.at(x, y));
    }
  }
  EdgeMap edge(g.width(), g.height());
  if (band_max > 0.0) {
    const double threshold = cfg.tongue_edge_threshold_fraction * band_max;
    for (int y = 0; y < g.height(); ++y) {
      for (int x = 0; x < g.width(); ++x) {
        if (band.get(x, y) && grad.magnitude.at(x, y) >= threshold) edge.set(x, y, true);
      }
    }
  }

  RegionMask outer(g.width(), g.height());
  for (std::int32_t id = 1; id <= watershed.region_count; ++id) {
    const RegionMask region = watershed.region_mask(id);
    if (region.intersects(edge)) outer = outer.unite(region);
  }
  const RegionMask inner = g.subtract(outer);
  return TongueRois{inner, outer};
}

}  // namespace pallor
