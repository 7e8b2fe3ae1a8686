#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <set>
#include <tuple>

namespace oracle {

using pallor::RasterImage;
using pallor::RegionLabeling;
using pallor::RegionMask;
using pallor::ScalarGrid;

namespace {

double clamped(const ScalarGrid& g, int x, int y) {
  x = std::clamp(x, 0, g.width() - 1);
  y = std::clamp(y, 0, g.height() - 1);
  return g.at(x, y);
}

}  // namespace

SobelResult sobel(const ScalarGrid& plane) {
  static const int kx[3][3] = {{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}};
  static const int ky[3][3] = {{-1, -2, -1}, {0, 0, 0}, {1, 2, 1}};
  SobelResult out{ScalarGrid(plane.width(), plane.height()),
                  ScalarGrid(plane.width(), plane.height())};
  for (int y = 0; y < plane.height(); ++y) {
    for (int x = 0; x < plane.width(); ++x) {
      double gx = 0.0, gy = 0.0;
      for (int j = -1; j <= 1; ++j) {
        for (int i = -1; i <= 1; ++i) {
          const double v = clamped(plane, x + i, y + j);
          gx += kx[j + 1][i + 1] * v;
          gy += ky[j + 1][i + 1] * v;
        }
      }
      const double mag = std::sqrt(gx * gx + gy * gy);
      out.magnitude.at(x, y) = mag;
      double dir = 0.0;
      if (mag != 0.0) {
        dir = std::atan2(gy, gx);
        if (dir < 0.0) dir += 2.0 * std::numbers::pi;
        if (dir >= 2.0 * std::numbers::pi) dir = 0.0;
      }
      out.direction.at(x, y) = dir;
    }
  }
  return out;
}

ScalarGrid gaussian(const ScalarGrid& plane, double sigma) {
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  const int size = 2 * radius + 1;
  std::vector<double> k1(size);
  double norm = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    k1[i + radius] = std::exp(-(i * i) / (2.0 * sigma * sigma));
    norm += k1[i + radius];
  }
  for (double& v : k1) v /= norm;

  ScalarGrid out(plane.width(), plane.height());
  for (int y = 0; y < plane.height(); ++y) {
    for (int x = 0; x < plane.width(); ++x) {
      double acc = 0.0;
      for (int j = -radius; j <= radius; ++j) {
        for (int i = -radius; i <= radius; ++i) {
          acc += k1[i + radius] * k1[j + radius] * clamped(plane, x + i, y + j);
        }
      }
      out.at(x, y) = acc;
    }
  }
  return out;
}

ScalarGrid frangi(const ScalarGrid& plane, const std::vector<double>& scales, double beta,
                  double c, bool dark_ridges) {
  ScalarGrid best(plane.width(), plane.height());
  for (double sigma : scales) {
    const ScalarGrid s = gaussian(plane, sigma);
    const double norm = sigma * sigma;
    for (int y = 0; y < plane.height(); ++y) {
      for (int x = 0; x < plane.width(); ++x) {
        const double dxx =
            norm * (clamped(s, x + 1, y) - 2.0 * s.at(x, y) + clamped(s, x - 1, y));
        const double dyy =
            norm * (clamped(s, x, y + 1) - 2.0 * s.at(x, y) + clamped(s, x, y - 1));
        const double dxy = norm *
                           (clamped(s, x + 1, y + 1) - clamped(s, x + 1, y - 1) -
                            clamped(s, x - 1, y + 1) + clamped(s, x - 1, y - 1)) /
                           4.0;
        const double mean = (dxx + dyy) / 2.0;
        const double root = std::sqrt((dxx - dyy) * (dxx - dyy) / 4.0 + dxy * dxy);
        double l1 = mean + root;
        double l2 = mean - root;
        if (std::abs(l1) > std::abs(l2)) std::swap(l1, l2);
        if (l2 == 0.0) continue;
        if (dark_ridges ? l2 < 0.0 : l2 > 0.0) continue;
        const double rb = l1 / l2;
        const double s2 = l1 * l1 + l2 * l2;
        const double v = std::exp(-rb * rb / (2.0 * beta * beta)) *
                         (1.0 - std::exp(-s2 / (2.0 * c * c)));
        if (v > best.at(x, y)) best.at(x, y) = v;
      }
    }
  }
  return best;
}

RegionLabeling watershed(const ScalarGrid& plane, const RegionMask& mask, int se_radius) {
  const int w = plane.width();
  const int h = plane.height();

  // Morphological gradient with mask-restricted disk neighborhoods.
  ScalarGrid relief(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!mask.get(x, y)) continue;
      double lo = plane.at(x, y), hi = lo;
      for (int dy = -se_radius; dy <= se_radius; ++dy) {
        for (int dx = -se_radius; dx <= se_radius; ++dx) {
          if (dx * dx + dy * dy > se_radius * se_radius) continue;
          const int nx = x + dx, ny = y + dy;
          if (nx < 0 || nx >= w || ny < 0 || ny >= h || !mask.get(nx, ny)) continue;
          lo = std::min(lo, plane.at(nx, ny));
          hi = std::max(hi, plane.at(nx, ny));
        }
      }
      relief.at(x, y) = hi - lo;
    }
  }

  static const int kDx[8] = {-1, 0, 1, -1, 1, -1, 0, 1};
  static const int kDy[8] = {-1, -1, -1, 0, 0, 1, 1, 1};

  // Regional minima plateaus via BFS.
  RegionLabeling labeling;
  labeling.width = w;
  labeling.height = h;
  labeling.labels.assign(static_cast<std::size_t>(w) * h, 0);
  std::vector<char> seen(labeling.labels.size(), 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t at = static_cast<std::size_t>(y) * w + x;
      if (!mask.get(x, y) || seen[at]) continue;
      const double level = relief.at(x, y);
      std::vector<std::pair<int, int>> plateau;
      std::queue<std::pair<int, int>> frontier;
      frontier.push({x, y});
      seen[at] = 1;
      bool minimum = true;
      while (!frontier.empty()) {
        auto [px, py] = frontier.front();
        frontier.pop();
        plateau.push_back({px, py});
        for (int k = 0; k < 8; ++k) {
          const int nx = px + kDx[k], ny = py + kDy[k];
          if (nx < 0 || nx >= w || ny < 0 || ny >= h || !mask.get(nx, ny)) continue;
          const double nv = relief.at(nx, ny);
          if (nv < level) minimum = false;
          if (nv == level) {
            const std::size_t nat = static_cast<std::size_t>(ny) * w + nx;
            if (!seen[nat]) {
              seen[nat] = 1;
              frontier.push({nx, ny});
            }
          }
        }
      }
      if (minimum) {
        ++labeling.region_count;
        for (auto [px, py] : plateau) {
          labeling.labels[static_cast<std::size_t>(py) * w + px] = labeling.region_count;
        }
      }
    }
  }

  // Priority flood via an ordered set: (relief, sequence, x, y, label).
  using Entry = std::tuple<double, std::uint64_t, int, int, std::int32_t>;
  std::set<Entry> queue;
  std::uint64_t seq = 0;
  auto enqueue = [&](int x, int y, std::int32_t label) {
    for (int k = 0; k < 8; ++k) {
      const int nx = x + kDx[k], ny = y + kDy[k];
      if (nx < 0 || nx >= w || ny < 0 || ny >= h || !mask.get(nx, ny)) continue;
      if (labeling.labels[static_cast<std::size_t>(ny) * w + nx] != 0) continue;
      queue.insert({relief.at(nx, ny), seq++, nx, ny, label});
    }
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::int32_t label = labeling.labels[static_cast<std::size_t>(y) * w + x];
      if (label != 0) enqueue(x, y, label);
    }
  }
  while (!queue.empty()) {
    const auto [value, order, x, y, label] = *queue.begin();
    queue.erase(queue.begin());
    std::int32_t& cell = labeling.labels[static_cast<std::size_t>(y) * w + x];
    if (cell != 0) continue;
    cell = label;
    enqueue(x, y, label);
  }
  return labeling;
}

std::vector<std::vector<int>> partition_signature(const RegionLabeling& labeling) {
  std::vector<std::vector<int>> regions(static_cast<std::size_t>(labeling.region_count));
  for (std::size_t i = 0; i < labeling.labels.size(); ++i) {
    const std::int32_t label = labeling.labels[i];
    if (label > 0) regions[static_cast<std::size_t>(label) - 1].push_back(static_cast<int>(i));
  }
  for (auto& r : regions) std::sort(r.begin(), r.end());
  std::sort(regions.begin(), regions.end());
  return regions;
}

double bilinear_at(const RasterImage& img, int out_x, int out_y, int out_w, int out_h,
                   int channel) {
  const auto sample = [&](double fx, double fy) {
    fx = std::clamp(fx, 0.0, static_cast<double>(img.width() - 1));
    fy = std::clamp(fy, 0.0, static_cast<double>(img.height() - 1));
    const int x0 = static_cast<int>(std::floor(fx));
    const int y0 = static_cast<int>(std::floor(fy));
    const int x1 = std::min(x0 + 1, img.width() - 1);
    const int y1 = std::min(y0 + 1, img.height() - 1);
    const double ax = fx - x0;
    const double ay = fy - y0;
    return (img.at(x0, y0, channel) * (1 - ax) + img.at(x1, y0, channel) * ax) * (1 - ay) +
           (img.at(x0, y1, channel) * (1 - ax) + img.at(x1, y1, channel) * ax) * ay;
  };
  const double fx = (out_x + 0.5) * img.width() / out_w - 0.5;
  const double fy = (out_y + 0.5) * img.height() / out_h - 0.5;
  return sample(fx, fy);
}

Stats region_stats(const ScalarGrid& plane, const RegionMask& mask) {
  std::vector<double> values;
  for (int y = 0; y < plane.height(); ++y) {
    for (int x = 0; x < plane.width(); ++x) {
      if (mask.get(x, y)) values.push_back(plane.at(x, y));
    }
  }
  double max = values[0];
  double sum = 0.0;
  for (double v : values) {
    max = std::max(max, v);
    sum += v;
  }
  const double mean = sum / values.size();
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return Stats{max, mean, ss / values.size()};
}

double auc_pairs(const std::vector<double>& scores, const std::vector<int>& labels) {
  double wins = 0.0;
  long pairs = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!labels[i]) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (labels[j]) continue;
      ++pairs;
      if (scores[i] > scores[j]) {
        wins += 1.0;
      } else if (scores[i] == scores[j]) {
        wins += 0.5;
      }
    }
  }
  return wins / pairs;
}

}  // namespace oracle
