#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "pallor/raster.hpp"
#include "pallor/regions.hpp"

namespace testutil {

// Scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("pallor_test_" + tag + "_" + std::to_string(counter()++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  static int& counter() {
    static int value = 0;
    return value;
  }
  std::filesystem::path path_;
};

inline pallor::ScalarGrid random_plane(int width, int height, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  pallor::ScalarGrid out(width, height);
  for (double& v : out.values()) v = dist(rng);
  return out;
}

inline pallor::RegionMask full_mask(int width, int height) {
  pallor::RegionMask mask(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) mask.set(x, y, true);
  }
  return mask;
}

}  // namespace testutil
