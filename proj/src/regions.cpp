#include "pallor/regions.hpp"

#include <algorithm>
#include <cmath>

namespace pallor {

RegionMask::RegionMask(int width, int height) : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::invalid_dimensions, "mask dimensions must be at least 1x1");
  }
  bits_.assign(static_cast<std::size_t>(width) * height, 0);
}

void RegionMask::set(int x, int y, bool value) {
  std::uint8_t& cell = bits_[index(x, y)];
  if (cell && !value) --pixel_count_;
  if (!cell && value) ++pixel_count_;
  cell = value ? 1 : 0;
}

bool RegionMask::intersects(const RegionMask& other) const {
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] && other.bits_[i]) return true;
  }
  return false;
}

bool RegionMask::is_subset_of(const RegionMask& other) const {
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] && !other.bits_[i]) return false;
  }
  return true;
}

RegionMask RegionMask::intersect(const RegionMask& other) const {
  RegionMask out(width_, height_);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      if (get(x, y) && other.get(x, y)) out.set(x, y, true);
    }
  }
  return out;
}

RegionMask RegionMask::unite(const RegionMask& other) const {
  RegionMask out(width_, height_);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      if (get(x, y) || other.get(x, y)) out.set(x, y, true);
    }
  }
  return out;
}

RegionMask RegionMask::subtract(const RegionMask& other) const {
  RegionMask out(width_, height_);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      if (get(x, y) && !other.get(x, y)) out.set(x, y, true);
    }
  }
  return out;
}

double RegionMask::iou(const RegionMask& other) const {
  long inter = 0;
  long uni = 0;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    const bool a = bits_[i] != 0;
    const bool b = other.bits_[i] != 0;
    if (a && b) ++inter;
    if (a || b) ++uni;
  }
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

ScalarGrid RegionMask::to_grid() const {
  ScalarGrid out(width_, height_);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      out.at(x, y) = get(x, y) ? 1.0 : 0.0;
    }
  }
  return out;
}

RegionMask RegionLabeling::region_mask(std::int32_t label_value) const {
  RegionMask out(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (label(x, y) == label_value) out.set(x, y, true);
    }
  }
  return out;
}

std::vector<long> RegionLabeling::region_areas() const {
  std::vector<long> areas(static_cast<std::size_t>(region_count) + 1, 0);
  for (std::int32_t v : labels) {
    if (v > 0) ++areas[static_cast<std::size_t>(v)];
  }
  return areas;
}

std::vector<std::pair<int, int>> StructuringElement::offsets() const {
  if (radius < 1) {
    throw Error(ErrorCode::invalid_spec, "structuring element radius must be >= 1");
  }
  std::vector<std::pair<int, int>> out;
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      if (dx * dx + dy * dy <= radius * radius) out.emplace_back(dx, dy);
    }
  }
  return out;
}

ShapeStats shape_stats(const RegionMask& region) {
  if (region.empty()) {
    throw Error(ErrorCode::empty_region, "shape_stats on empty region");
  }
  double sx = 0.0, sy = 0.0;
  const long n = region.pixel_count();
  for (int y = 0; y < region.height(); ++y) {
    for (int x = 0; x < region.width(); ++x) {
      if (!region.get(x, y)) continue;
      sx += x;
      sy += y;
    }
  }
  const double cx = sx / n;
  const double cy = sy / n;
  double mxx = 0.0, myy = 0.0, mxy = 0.0;
  for (int y = 0; y < region.height(); ++y) {
    for (int x = 0; x < region.width(); ++x) {
      if (!region.get(x, y)) continue;
      const double dx = x - cx;
      const double dy = y - cy;
      mxx += dx * dx;
      myy += dy * dy;
      mxy += dx * dy;
    }
  }
  // Normalized central moments with the 1/12 unit-pixel term.
  mxx = mxx / n + 1.0 / 12.0;
  myy = myy / n + 1.0 / 12.0;
  mxy = mxy / n;
  const double common = std::sqrt((mxx - myy) * (mxx - myy) + 4.0 * mxy * mxy);
  const double l1 = (mxx + myy + common) / 2.0;
  const double l2 = (mxx + myy - common) / 2.0;
  ShapeStats out;
  out.major_axis = 4.0 * std::sqrt(std::max(l1, 0.0));
  out.minor_axis = 4.0 * std::sqrt(std::max(l2, 0.0));
  out.area = n;
  out.centroid_x = cx;
  out.centroid_y = cy;
  return out;
}

RegionLabeling label_components(const RegionMask& mask) {
  RegionLabeling out;
  out.width = mask.width();
  out.height = mask.height();
  out.labels.assign(static_cast<std::size_t>(out.width) * out.height, 0);
  static constexpr int kDx[8] = {-1, 0, 1, -1, 1, -1, 0, 1};
  static constexpr int kDy[8] = {-1, -1, -1, 0, 0, 1, 1, 1};
  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      if (!mask.get(x, y) || out.label(x, y) != 0) continue;
      const std::int32_t id = ++out.region_count;
      stack.push_back({x, y});
      out.labels[static_cast<std::size_t>(y) * out.width + x] = id;
      while (!stack.empty()) {
        auto [px, py] = stack.back();
        stack.pop_back();
        for (int k = 0; k < 8; ++k) {
          const int nx = px + kDx[k];
          const int ny = py + kDy[k];
          if (!mask.in_bounds(nx, ny) || !mask.get(nx, ny)) continue;
          std::int32_t& cell = out.labels[static_cast<std::size_t>(ny) * out.width + nx];
          if (cell == 0) {
            cell = id;
            stack.push_back({nx, ny});
          }
        }
      }
    }
  }
  return out;
}

RegionMask erode(const RegionMask& mask, const StructuringElement& se) {
  const auto offsets = se.offsets();
  RegionMask out(mask.width(), mask.height());
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask.get(x, y)) continue;
      bool all = true;
      for (auto [dx, dy] : offsets) {
        const int nx = x + dx;
        const int ny = y + dy;
        if (!mask.in_bounds(nx, ny) || !mask.get(nx, ny)) {
          all = false;
          break;
        }
      }
      if (all) out.set(x, y, true);
    }
  }
  return out;
}

RegionMask dilate(const RegionMask& mask, const StructuringElement& se) {
  const auto offsets = se.offsets();
  RegionMask out(mask.width(), mask.height());
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask.get(x, y)) continue;
      for (auto [dx, dy] : offsets) {
        const int nx = x + dx;
        const int ny = y + dy;
        if (mask.in_bounds(nx, ny)) out.set(nx, ny, true);
      }
    }
  }
  return out;
}

RegionMask close_mask(const RegionMask& mask, const StructuringElement& se) {
  return erode(dilate(mask, se), se);
}

RegionMask boundary(const RegionMask& mask) {
  RegionMask out(mask.width(), mask.height());
  static constexpr int kDx[4] = {0, -1, 1, 0};
  static constexpr int kDy[4] = {-1, 0, 0, 1};
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask.get(x, y)) continue;
      for (int k = 0; k < 4; ++k) {
        const int nx = x + kDx[k];
        const int ny = y + kDy[k];
        if (!mask.in_bounds(nx, ny) || !mask.get(nx, ny)) {
          out.set(x, y, true);
          break;
        }
      }
    }
  }
  return out;
}

RegionMask boundary_band(const RegionMask& mask, int distance) {
  RegionMask band = dilate(boundary(mask), StructuringElement{distance});
  return band.intersect(mask);
}

ScalarGrid morphological_gradient(const ScalarGrid& plane, const RegionMask& mask,
                                  const StructuringElement& se) {
  if (plane.width() != mask.width() || plane.height() != mask.height()) {
    throw Error(ErrorCode::dimension_mismatch, "plane and mask dimensions differ");
  }
  const auto offsets = se.offsets();
  ScalarGrid out(plane.width(), plane.height());
  for (int y = 0; y < plane.height(); ++y) {
    for (int x = 0; x < plane.width(); ++x) {
      if (!mask.get(x, y)) continue;
      double lo = plane.at(x, y);
      double hi = lo;
      for (auto [dx, dy] : offsets) {
        const int nx = x + dx;
        const int ny = y + dy;
        if (!mask.in_bounds(nx, ny) || !mask.get(nx, ny)) continue;
        const double v = plane.at(nx, ny);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      out.at(x, y) = hi - lo;
    }
  }
  return out;
}

}  // namespace pallor
