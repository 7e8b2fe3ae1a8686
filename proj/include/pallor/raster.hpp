#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "pallor/error.hpp"

namespace pallor {

// Row-major scalar field. Color planes keep values in [0,1]; derived fields
// (gradient magnitudes, vesselness responses) reuse the same carrier without
// the range constraint.
class ScalarGrid {
 public:
  ScalarGrid() = default;
  ScalarGrid(int width, int height, double fill = 0.0);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& at(int x, int y) { return data_[index(x, y)]; }
  double at(int x, int y) const { return data_[index(x, y)]; }

  // Replicate-border access: out-of-range coordinates clamp to the edge.
  double at_clamped(int x, int y) const;

  std::vector<double>& values() { return data_; }
  const std::vector<double>& values() const { return data_; }

  bool same_shape(const ScalarGrid& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  double max_value() const;
  double min_value() const;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

// The 12 color planes. The order is load-bearing: feature schemas and the
// extrapolated plane set index by it.
enum class PlaneId {
  red,
  green,
  blue,
  hue,
  saturation,
  intensity,
  lightness,
  a_color,
  b_color,
  luminance,
  chroma_cb,
  chroma_cr,
};

inline constexpr std::array<PlaneId, 12> kAllPlaneIds = {
    PlaneId::red,       PlaneId::green,     PlaneId::blue,
    PlaneId::hue,       PlaneId::saturation, PlaneId::intensity,
    PlaneId::lightness, PlaneId::a_color,   PlaneId::b_color,
    PlaneId::luminance, PlaneId::chroma_cb, PlaneId::chroma_cr,
};

std::string_view plane_name(PlaneId id);
std::optional<PlaneId> plane_id_from_name(std::string_view name);

struct PlaneImage {
  PlaneId plane_id;
  ScalarGrid pixels;  // values in [0,1]
};

// Interleaved RGB raster with channel values in [0,1].
class RasterImage {
 public:
  static constexpr int kChannels = 3;

  RasterImage() = default;
  RasterImage(int width, int height, double fill = 0.0);

  int width() const { return width_; }
  int height() const { return height_; }

  double& at(int x, int y, int channel) { return data_[index(x, y, channel)]; }
  double at(int x, int y, int channel) const { return data_[index(x, y, channel)]; }

  std::vector<double>& values() { return data_; }
  const std::vector<double>& values() const { return data_; }

  // Copies one channel out as a scalar grid.
  ScalarGrid channel(int c) const;

 private:
  std::size_t index(int x, int y, int channel) const {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
            static_cast<std::size_t>(x)) * kChannels + static_cast<std::size_t>(channel);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

// Bilinear resampling with pixel-center alignment; resizing to the source
// dimensions reproduces the input exactly.
RasterImage resize_bilinear(const RasterImage& img, int target_width, int target_height);

}  // namespace pallor
