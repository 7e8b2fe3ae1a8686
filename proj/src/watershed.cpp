#include "pallor/watershed.hpp"

#include <cstdint>
#include <queue>
#include <vector>

namespace pallor {
namespace {

// Raster-order neighbor offsets, 8-connectivity.
constexpr int kDx[8] = {-1, 0, 1, -1, 1, -1, 0, 1};
constexpr int kDy[8] = {-1, -1, -1, 0, 0, 1, 1, 1};

struct QueueEntry {
  double value;
  std::uint64_t seq;
  int x;
  int y;
  std::int32_t label;
};

struct LaterEntry {
  bool operator()(const QueueEntry& a, const QueueEntry& b) const {
    if (a.value != b.value) return a.value > b.value;
    return a.seq > b.seq;
  }
};

}  // namespace

RegionLabeling regional_minima(const ScalarGrid& relief, const RegionMask& mask) {
  RegionLabeling out;
  out.width = relief.width();
  out.height = relief.height();
  out.labels.assign(static_cast<std::size_t>(out.width) * out.height, 0);
  std::vector<std::uint8_t> visited(out.labels.size(), 0);
  std::vector<std::pair<int, int>> plateau;
  std::vector<std::pair<int, int>> stack;

  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      const std::size_t idx = static_cast<std::size_t>(y) * out.width + x;
      if (!mask.get(x, y) || visited[idx]) continue;
      // Flood the equal-value plateau and test for a lower masked neighbor.
      const double level = relief.at(x, y);
      bool is_minimum = true;
      plateau.clear();
      stack.clear();
      stack.push_back({x, y});
      visited[idx] = 1;
      while (!stack.empty()) {
        auto [px, py] = stack.back();
        stack.pop_back();
        plateau.push_back({px, py});
        for (int k = 0; k < 8; ++k) {
          const int nx = px + kDx[k];
          const int ny = py + kDy[k];
          if (!mask.in_bounds(nx, ny) || !mask.get(nx, ny)) continue;
          const double nv = relief.at(nx, ny);
          if (nv < level) {
            is_minimum = false;
          } else if (nv == level) {
            const std::size_t nidx = static_cast<std::size_t>(ny) * out.width + nx;
            if (!visited[nidx]) {
              visited[nidx] = 1;
              stack.push_back({nx, ny});
            }
          }
        }
      }
      if (is_minimum) {
        const std::int32_t id = ++out.region_count;
        for (auto [px, py] : plateau) {
          out.labels[static_cast<std::size_t>(py) * out.width + px] = id;
        }
      }
    }
  }
  return out;
}

RegionLabeling watershed_segment(const ScalarGrid& plane, const RegionMask& mask,
                                 const StructuringElement& se) {
  if (plane.width() != mask.width() || plane.height() != mask.height()) {
    throw Error(ErrorCode::dimension_mismatch, "plane and mask dimensions differ");
  }
  if (mask.empty()) {
    throw Error(ErrorCode::empty_mask, "watershed on empty mask");
  }

  const ScalarGrid relief = morphological_gradient(plane, mask, se);
  RegionLabeling labeling = regional_minima(relief, mask);

  std::priority_queue<QueueEntry, std::vector<QueueEntry>, LaterEntry> queue;
  std::uint64_t seq = 0;
  auto push_neighbors = [&](int x, int y, std::int32_t label) {
    for (int k = 0; k < 8; ++k) {
      const int nx = x + kDx[k];
      const int ny = y + kDy[k];
      if (!mask.in_bounds(nx, ny) || !mask.get(nx, ny)) continue;
      if (labeling.label(nx, ny) != 0) continue;
      queue.push({relief.at(nx, ny), seq++, nx, ny, label});
    }
  };

  for (int y = 0; y < labeling.height; ++y) {
    for (int x = 0; x < labeling.width; ++x) {
      const std::int32_t label = labeling.label(x, y);
      if (label != 0) push_neighbors(x, y, label);
    }
  }

  while (!queue.empty()) {
    const QueueEntry entry = queue.top();
    queue.pop();
    std::int32_t& cell =
        labeling.labels[static_cast<std::size_t>(entry.y) * labeling.width + entry.x];
    if (cell != 0) continue;
    cell = entry.label;
    push_neighbors(entry.x, entry.y, entry.label);
  }
  return labeling;
}

}  // namespace pallor
