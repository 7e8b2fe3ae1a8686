#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pallor/watershed.hpp"
#include "test_util.hpp"

using namespace pallor;

namespace {

// Sum of Gaussian pits on a raised plateau.
ScalarGrid pit_plane(int size, const std::vector<std::pair<double, double>>& centers,
                     double width) {
  ScalarGrid out(size, size, 1.0);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      for (const auto& [cx, cy] : centers) {
        const double d2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
        out.at(x, y) -= 0.6 * std::exp(-d2 / (2.0 * width * width));
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("constant plane under a connected mask floods into a single region") {
  const RegionMask mask = testutil::full_mask(20, 20);
  const RegionLabeling labeling =
      watershed_segment(ScalarGrid(20, 20, 0.5), mask, StructuringElement{5});
  CHECK(labeling.region_count == 1);
  for (int y = 0; y < 20; ++y) {
    for (int x = 0; x < 20; ++x) CHECK(labeling.label(x, y) == 1);
  }
}

TEST_CASE("two separated valleys yield two regions containing their centers") {
  // Two flat valleys separated by a wall: the relief has exactly two
  // minimum plateaus, one per valley interior.
  ScalarGrid plane(40, 40, 0.1);
  for (int y = 0; y < 40; ++y) {
    for (int x = 18; x <= 21; ++x) plane.at(x, y) = 0.9;
  }
  const RegionMask mask = testutil::full_mask(40, 40);
  const RegionLabeling labeling = watershed_segment(plane, mask, StructuringElement{3});
  const RegionLabeling oracle_labeling = oracle::watershed(plane, mask, 3);
  CHECK(labeling.region_count == 2);
  CHECK(labeling.label(10, 20) != 0);
  CHECK(labeling.label(30, 20) != 0);
  CHECK(labeling.label(10, 20) != labeling.label(30, 20));
  CHECK(oracle::partition_signature(labeling) == oracle::partition_signature(oracle_labeling));
}

TEST_CASE("labels partition the mask") {
  const ScalarGrid plane = pit_plane(32, {{8.0, 8.0}, {24.0, 10.0}, {16.0, 25.0}}, 2.5);
  RegionMask mask(32, 32);
  for (int y = 0; y < 32; ++y) {
    for (int x = 0; x < 32; ++x) {
      const double dx = x - 15.5, dy = y - 15.5;
      if (dx * dx + dy * dy <= 15.0 * 15.0) mask.set(x, y, true);
    }
  }
  const RegionLabeling labeling = watershed_segment(plane, mask, StructuringElement{3});
  long labeled = 0;
  for (int y = 0; y < 32; ++y) {
    for (int x = 0; x < 32; ++x) {
      if (mask.get(x, y)) {
        CHECK(labeling.label(x, y) > 0);
        ++labeled;
      } else {
        CHECK(labeling.label(x, y) == 0);
      }
    }
  }
  const auto areas = labeling.region_areas();
  long total = 0;
  for (std::int32_t id = 1; id <= labeling.region_count; ++id) total += areas[id];
  CHECK(total == mask.pixel_count());
  CHECK(labeled == mask.pixel_count());
}

TEST_CASE("watershed equals the independent priority-flood oracle") {
  std::mt19937 rng(404);
  std::uniform_real_distribution<double> pos(4.0, 44.0);
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<std::pair<double, double>> centers;
    for (int i = 0; i < 3 + trial; ++i) centers.push_back({pos(rng), pos(rng)});
    const ScalarGrid plane = pit_plane(48, centers, 2.0 + 0.3 * trial);
    const RegionMask mask = testutil::full_mask(48, 48);
    const RegionLabeling ours = watershed_segment(plane, mask, StructuringElement{3});
    const RegionLabeling theirs = oracle::watershed(plane, mask, 3);
    CHECK(ours.region_count == theirs.region_count);
    CHECK(oracle::partition_signature(ours) == oracle::partition_signature(theirs));
  }
}

TEST_CASE("watershed rejects an empty mask") {
  try {
    watershed_segment(ScalarGrid(10, 10, 0.0), RegionMask(10, 10), StructuringElement{5});
    FAIL("expected EmptyMask");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::empty_mask);
  }
}

TEST_CASE("regional minima of a tilted plane form one plateau at the low edge") {
  ScalarGrid ramp(16, 16);
  for (int y = 0; y < 16; ++y) {
    for (int x = 0; x < 16; ++x) ramp.at(x, y) = 0.01 * x;
  }
  const RegionLabeling minima = regional_minima(ramp, testutil::full_mask(16, 16));
  CHECK(minima.region_count == 1);
  CHECK(minima.label(0, 0) == 1);
  CHECK(minima.label(15, 0) == 0);
}
