#pragma once

#include <cstdint>
#include <vector>

#include "pallor/raster.hpp"

namespace pallor {

// Binary pixel set over an image domain.
class RegionMask {
 public:
  RegionMask() = default;
  RegionMask(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }

  bool get(int x, int y) const { return bits_[index(x, y)] != 0; }
  void set(int x, int y, bool value);

  long pixel_count() const { return pixel_count_; }
  bool empty() const { return pixel_count_ == 0; }
  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width_ && y >= 0 && y < height_;
  }
  bool same_shape(const RegionMask& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  bool intersects(const RegionMask& other) const;
  bool is_subset_of(const RegionMask& other) const;
  RegionMask intersect(const RegionMask& other) const;
  RegionMask unite(const RegionMask& other) const;
  RegionMask subtract(const RegionMask& other) const;
  double iou(const RegionMask& other) const;

  ScalarGrid to_grid() const;  // 1.0 inside, 0.0 outside

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  long pixel_count_ = 0;
  std::vector<std::uint8_t> bits_;
};

using EdgeMap = RegionMask;

// Integer-labeled partition; 0 is background, regions are 1..region_count.
struct RegionLabeling {
  int width = 0;
  int height = 0;
  int region_count = 0;
  std::vector<std::int32_t> labels;

  std::int32_t label(int x, int y) const {
    return labels[static_cast<std::size_t>(y) * width + x];
  }
  RegionMask region_mask(std::int32_t label_value) const;
  std::vector<long> region_areas() const;
};

struct StructuringElement {
  int radius = 1;  // disk: offsets with dx^2 + dy^2 <= radius^2
  std::vector<std::pair<int, int>> offsets() const;
};

// Ellipse-equivalent shape descriptors from second central moments
// (pixel-extent corrected, so single-row regions keep a positive minor axis).
struct ShapeStats {
  double major_axis = 0.0;
  double minor_axis = 0.0;
  long area = 0;
  double centroid_x = 0.0;
  double centroid_y = 0.0;
};

ShapeStats shape_stats(const RegionMask& region);

// 8-connected components of a binary mask, labeled in raster order of their
// first pixel.
RegionLabeling label_components(const RegionMask& mask);

// Binary morphology with a disk structuring element.
RegionMask erode(const RegionMask& mask, const StructuringElement& se);
RegionMask dilate(const RegionMask& mask, const StructuringElement& se);
RegionMask close_mask(const RegionMask& mask, const StructuringElement& se);

// Inner one-pixel boundary: mask pixels with a 4-neighbor outside the mask.
RegionMask boundary(const RegionMask& mask);

// Mask pixels within `distance` pixels of the mask boundary.
RegionMask boundary_band(const RegionMask& mask, int distance);

// Grayscale morphological gradient (dilation minus erosion) with neighborhoods
// restricted to the mask. Pixels outside the mask are 0.
ScalarGrid morphological_gradient(const ScalarGrid& plane, const RegionMask& mask,
                                  const StructuringElement& se);

}  // namespace pallor
