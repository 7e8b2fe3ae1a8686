#include "pallor/raster.hpp"

#include <algorithm>
#include <cmath>

namespace pallor {

ScalarGrid::ScalarGrid(int width, int height, double fill)
    : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::invalid_dimensions,
                "grid dimensions must be at least 1x1");
  }
  data_.assign(static_cast<std::size_t>(width) * height, fill);
}

double ScalarGrid::at_clamped(int x, int y) const {
  x = std::clamp(x, 0, width_ - 1);
  y = std::clamp(y, 0, height_ - 1);
  return at(x, y);
}

double ScalarGrid::max_value() const {
  return data_.empty() ? 0.0 : *std::max_element(data_.begin(), data_.end());
}

double ScalarGrid::min_value() const {
  return data_.empty() ? 0.0 : *std::min_element(data_.begin(), data_.end());
}

std::string_view plane_name(PlaneId id) {
  switch (id) {
    case PlaneId::red: return "red";
    case PlaneId::green: return "green";
    case PlaneId::blue: return "blue";
    case PlaneId::hue: return "hue";
    case PlaneId::saturation: return "saturation";
    case PlaneId::intensity: return "intensity";
    case PlaneId::lightness: return "lightness";
    case PlaneId::a_color: return "a_color";
    case PlaneId::b_color: return "b_color";
    case PlaneId::luminance: return "luminance";
    case PlaneId::chroma_cb: return "chroma_cb";
    case PlaneId::chroma_cr: return "chroma_cr";
  }
  return "unknown";
}

std::optional<PlaneId> plane_id_from_name(std::string_view name) {
  for (PlaneId id : kAllPlaneIds) {
    if (plane_name(id) == name) return id;
  }
  return std::nullopt;
}

RasterImage::RasterImage(int width, int height, double fill)
    : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::invalid_dimensions,
                "image dimensions must be at least 1x1");
  }
  data_.assign(static_cast<std::size_t>(width) * height * kChannels, fill);
}

ScalarGrid RasterImage::channel(int c) const {
  ScalarGrid out(width_, height_);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      out.at(x, y) = at(x, y, c);
    }
  }
  return out;
}

RasterImage resize_bilinear(const RasterImage& img, int target_width, int target_height) {
  if (target_width < 1 || target_height < 1) {
    throw Error(ErrorCode::invalid_dimensions, "resize target must be at least 1x1");
  }
  const int sw = img.width();
  const int sh = img.height();
  RasterImage out(target_width, target_height);
  const double sx = static_cast<double>(sw) / target_width;
  const double sy = static_cast<double>(sh) / target_height;
  for (int y = 0; y < target_height; ++y) {
    double fy = (y + 0.5) * sy - 0.5;
    fy = std::clamp(fy, 0.0, static_cast<double>(sh - 1));
    const int y0 = static_cast<int>(std::floor(fy));
    const int y1 = std::min(y0 + 1, sh - 1);
    const double wy = fy - y0;
    for (int x = 0; x < target_width; ++x) {
      double fx = (x + 0.5) * sx - 0.5;
      fx = std::clamp(fx, 0.0, static_cast<double>(sw - 1));
      const int x0 = static_cast<int>(std::floor(fx));
      const int x1 = std::min(x0 + 1, sw - 1);
      const double wx = fx - x0;
      for (int c = 0; c < RasterImage::kChannels; ++c) {
        const double top = img.at(x0, y0, c) * (1.0 - wx) + img.at(x1, y0, c) * wx;
        const double bottom = img.at(x0, y1, c) * (1.0 - wx) + img.at(x1, y1, c) * wx;
        out.at(x, y, c) = top * (1.0 - wy) + bottom * wy;
      }
    }
  }
  return out;
}

}  // namespace pallor
