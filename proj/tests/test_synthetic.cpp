#include <doctest.h>

#include "pallor/synthetic.hpp"

using namespace pallor;

TEST_CASE("same spec and seed give bit-identical images") {
  for (Site site : {Site::eye, Site::tongue}) {
    SyntheticSpec spec;
    spec.site = site;
    spec.grade = 1;
    spec.seed = 42;
    const SyntheticImage a = generate_synthetic(spec);
    const SyntheticImage b = generate_synthetic(spec);
    CHECK(a.image.values() == b.image.values());
    CHECK(a.foreground.pixel_count() == b.foreground.pixel_count());
  }
}

TEST_CASE("grade 0 conjunctiva is strictly redder than grade 1") {
  SyntheticSpec normal;
  normal.site = Site::eye;
  normal.grade = 0;
  normal.seed = 3;
  SyntheticSpec pallid = normal;
  pallid.grade = 1;
  const SyntheticImage a = generate_synthetic(normal);
  const SyntheticImage b = generate_synthetic(pallid);
  const auto mean_redness = [](const SyntheticImage& s) {
    double total = 0.0;
    long count = 0;
    const RegionMask& conj = s.eye_rois.conjunctiva;
    for (int y = 0; y < conj.height(); ++y) {
      for (int x = 0; x < conj.width(); ++x) {
        if (!conj.get(x, y)) continue;
        total += s.image.at(x, y, 0) - s.image.at(x, y, 1);
        ++count;
      }
    }
    return total / count;
  };
  CHECK(mean_redness(a) > mean_redness(b));
}

TEST_CASE("ground-truth masks are pairwise disjoint and cover the foreground") {
  for (int grade : {0, 1, 2}) {
    SyntheticSpec eye;
    eye.site = Site::eye;
    eye.grade = grade;
    eye.seed = 10 + grade;
    const SyntheticImage s = generate_synthetic(eye);
    CHECK(!s.eye_rois.iris.intersects(s.eye_rois.sclera));
    CHECK(!s.eye_rois.iris.intersects(s.eye_rois.conjunctiva));
    CHECK(!s.eye_rois.sclera.intersects(s.eye_rois.conjunctiva));
    const RegionMask covered =
        s.eye_rois.iris.unite(s.eye_rois.sclera).unite(s.eye_rois.conjunctiva);
    CHECK(covered.pixel_count() == s.foreground.pixel_count());
    CHECK(covered.is_subset_of(s.foreground));

    SyntheticSpec tongue;
    tongue.site = Site::tongue;
    tongue.grade = grade;
    tongue.seed = 20 + grade;
    const SyntheticImage t = generate_synthetic(tongue);
    CHECK(!t.tongue_rois.inner.intersects(t.tongue_rois.outer));
    const RegionMask whole = t.tongue_rois.inner.unite(t.tongue_rois.outer);
    CHECK(whole.pixel_count() == t.foreground.pixel_count());
  }
}

TEST_CASE("invalid specs are rejected") {
  SyntheticSpec spec;
  spec.grade = 5;
  CHECK_THROWS_AS(generate_synthetic(spec), Error);
  spec.grade = 0;
  spec.iris_major_axis = -1.0;
  try {
    generate_synthetic(spec);
    FAIL("expected InvalidSpec");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_spec);
  }
  spec.iris_major_axis = 17.0;
  spec.conjunctiva_redness = 1.5;
  CHECK_THROWS_AS(generate_synthetic(spec), Error);
}

TEST_CASE("all channels stay in [0,1]") {
  for (Site site : {Site::eye, Site::tongue}) {
    SyntheticSpec spec;
    spec.site = site;
    spec.grade = 2;
    spec.seed = 99;
    const SyntheticImage s = generate_synthetic(spec);
    for (double v : s.image.values()) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}
