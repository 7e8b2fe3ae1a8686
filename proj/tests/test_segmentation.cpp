#include <doctest.h>

#include <vector>

#include "pallor/segmentation.hpp"
#include "pallor/synthetic.hpp"
#include "test_util.hpp"

using namespace pallor;

namespace {

// Independent flood-fill component areas for the threshold tests.
std::vector<long> component_areas(const ScalarGrid& plane, double threshold) {
  const int w = plane.width(), h = plane.height();
  std::vector<int> label(static_cast<std::size_t>(w) * h, 0);
  std::vector<long> areas;
  std::vector<std::pair<int, int>> stack;
  int next = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (plane.at(x, y) >= threshold || label[static_cast<std::size_t>(y) * w + x]) continue;
      ++next;
      long area = 0;
      stack.push_back({x, y});
      label[static_cast<std::size_t>(y) * w + x] = next;
      while (!stack.empty()) {
        auto [px, py] = stack.back();
        stack.pop_back();
        ++area;
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = px + dx, ny = py + dy;
            if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
            auto& cell = label[static_cast<std::size_t>(ny) * w + nx];
            if (!cell && plane.at(nx, ny) < threshold) {
              cell = next;
              stack.push_back({nx, ny});
            }
          }
        }
      }
      areas.push_back(area);
    }
  }
  return areas;
}

RegionMask union_of(const std::vector<RegionMask>& masks, int w, int h) {
  RegionMask out(w, h);
  for (const RegionMask& m : masks) out = out.unite(m);
  return out;
}

}  // namespace

TEST_CASE("threshold_dark_regions keeps only components above the area floor") {
  ScalarGrid plane(30, 30, 0.9);
  // 200-pixel dark blob at 0.05: 20x10 rectangle.
  for (int y = 5; y < 15; ++y) {
    for (int x = 3; x < 23; ++x) plane.at(x, y) = 0.05;
  }
  const auto regions = threshold_dark_regions(plane, 0.1, 100);
  REQUIRE(regions.size() == 1);
  CHECK(regions[0].pixel_count() == 200);

  CHECK(threshold_dark_regions(ScalarGrid(20, 20, 0.1), 0.1, 100).empty());
  CHECK(threshold_dark_regions(ScalarGrid(20, 20, 0.5), 0.1, 100).empty());
}

TEST_CASE("area filter drops the 80-pixel blob and keeps the 150-pixel blob") {
  ScalarGrid plane(40, 40, 0.8);
  for (int y = 2; y < 10; ++y) {
    for (int x = 2; x < 12; ++x) plane.at(x, y) = 0.02;  // 80 px
  }
  for (int y = 20; y < 30; ++y) {
    for (int x = 20; x < 35; ++x) plane.at(x, y) = 0.02;  // 150 px
  }
  const auto oracle_areas = component_areas(plane, 0.1);
  REQUIRE(oracle_areas.size() == 2);
  const auto regions = threshold_dark_regions(plane, 0.1, 100);
  REQUIRE(regions.size() == 1);
  CHECK(regions[0].pixel_count() == 150);
  CHECK(regions[0].get(25, 25));
}

TEST_CASE("threshold_dark_regions is monotone in the threshold") {
  const ScalarGrid plane = testutil::random_plane(24, 24, 555);
  const RegionMask low = union_of(threshold_dark_regions(plane, 0.3, 0), 24, 24);
  const RegionMask high = union_of(threshold_dark_regions(plane, 0.6, 0), 24, 24);
  CHECK(low.is_subset_of(high));
}

TEST_CASE("foreground detection: synthetic sites recovered, constants rejected") {
  SyntheticSpec eye;
  eye.site = Site::eye;
  eye.grade = 0;
  eye.seed = 1;
  const SyntheticImage se = generate_synthetic(eye);
  const RegionMask g_eye = detect_foreground_mask(se.image, Site::eye);
  CHECK(g_eye.iou(se.foreground) >= 0.7);

  SyntheticSpec tongue;
  tongue.site = Site::tongue;
  tongue.grade = 0;
  tongue.seed = 1;
  const SyntheticImage st = generate_synthetic(tongue);
  const RegionMask g_tongue = detect_foreground_mask(st.image, Site::tongue);
  CHECK(g_tongue.iou(st.foreground) >= 0.7);

  try {
    detect_foreground_mask(RasterImage(125, 125, 0.0), Site::eye);
    FAIL("expected EmptyMask");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::empty_mask);
  }
}

TEST_CASE("eye segmentation recovers the ROIs and honors the set identities") {
  SyntheticSpec spec;
  spec.site = Site::eye;
  spec.grade = 0;
  spec.seed = 7;
  const SyntheticImage synth = generate_synthetic(spec);
  const RegionMask g = detect_foreground_mask(synth.image, Site::eye);
  const EyeRois rois = segment_eye(synth.image, g);

  CHECK(rois.iris.iou(synth.eye_rois.iris) >= 0.7);
  CHECK(rois.sclera.iou(synth.eye_rois.sclera) >= 0.7);
  CHECK(rois.conjunctiva.iou(synth.eye_rois.conjunctiva) >= 0.7);

  CHECK(!rois.iris.intersects(rois.sclera));
  CHECK(!rois.iris.intersects(rois.conjunctiva));
  CHECK(!rois.sclera.intersects(rois.conjunctiva));
  CHECK(rois.iris.unite(rois.sclera).unite(rois.conjunctiva).is_subset_of(g));

  // conjunctiva == g minus the other two, exactly
  const RegionMask expected = g.subtract(rois.iris.unite(rois.sclera));
  CHECK(rois.conjunctiva.pixel_count() == expected.pixel_count());
  CHECK(rois.conjunctiva.is_subset_of(expected));
}

TEST_CASE("an image with no dark red region raises IrisNotFound") {
  RasterImage bright(125, 125, 0.2);
  for (int y = 30; y < 95; ++y) {
    for (int x = 30; x < 95; ++x) {
      bright.at(x, y, 0) = 0.9;
      bright.at(x, y, 1) = 0.85;
      bright.at(x, y, 2) = 0.8;
    }
  }
  const RegionMask g = detect_foreground_mask(bright, Site::eye);
  try {
    segment_eye(bright, g);
    FAIL("expected IrisNotFound");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::iris_not_found);
  }
}

TEST_CASE("tongue segmentation partitions g into inner and outer") {
  SyntheticSpec spec;
  spec.site = Site::tongue;
  spec.grade = 0;
  spec.seed = 5;
  const SyntheticImage synth = generate_synthetic(spec);
  const RegionMask g = detect_foreground_mask(synth.image, Site::tongue);
  const TongueRois rois = segment_tongue(synth.image, g);

  CHECK(!rois.inner.intersects(rois.outer));
  CHECK(rois.inner.unite(rois.outer).pixel_count() == g.pixel_count());
  CHECK(!rois.inner.empty());
  CHECK(!rois.outer.empty());
  CHECK(rois.inner.iou(synth.tongue_rois.inner) >= 0.7);
  CHECK(rois.outer.iou(synth.tongue_rois.outer) >= 0.7);
}

TEST_CASE("segmentation is deterministic") {
  SyntheticSpec spec;
  spec.site = Site::eye;
  spec.grade = 2;
  spec.seed = 13;
  const SyntheticImage synth = generate_synthetic(spec);
  const RegionMask g1 = detect_foreground_mask(synth.image, Site::eye);
  const RegionMask g2 = detect_foreground_mask(synth.image, Site::eye);
  CHECK(g1.iou(g2) == 1.0);
  const EyeRois a = segment_eye(synth.image, g1);
  const EyeRois b = segment_eye(synth.image, g2);
  CHECK(a.iris.iou(b.iris) == 1.0);
  CHECK(a.sclera.iou(b.sclera) == 1.0);
  CHECK(a.conjunctiva.iou(b.conjunctiva) == 1.0);
}

TEST_CASE("segmenting with an empty mask is rejected") {
  const RasterImage img(125, 125, 0.5);
  CHECK_THROWS_AS(segment_eye(img, RegionMask(125, 125)), Error);
  CHECK_THROWS_AS(segment_tongue(img, RegionMask(125, 125)), Error);
}
