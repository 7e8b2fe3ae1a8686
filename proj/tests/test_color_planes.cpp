#include <doctest.h>

#include <random>

#include "pallor/color_planes.hpp"

using namespace pallor;

namespace {

RasterImage single_pixel(double r, double g, double b) {
  RasterImage img(1, 1);
  img.at(0, 0, 0) = r;
  img.at(0, 0, 1) = g;
  img.at(0, 0, 2) = b;
  return img;
}

}  // namespace

TEST_CASE("pure red maps to hue 0, saturation 1, intensity 1") {
  const PixelPlanes p = pixel_planes(1.0, 0.0, 0.0);
  CHECK(p[PlaneId::hue] == 0.0);
  CHECK(p[PlaneId::saturation] == 1.0);
  CHECK(p[PlaneId::intensity] == 1.0);
}

TEST_CASE("neutral gray sits at the achromatic point of Lab") {
  const PixelPlanes p = pixel_planes(0.5, 0.5, 0.5);
  CHECK(p[PlaneId::a_color] == doctest::Approx(128.0 / 255.0).epsilon(1e-12));
  CHECK(p[PlaneId::b_color] == doctest::Approx(128.0 / 255.0).epsilon(1e-12));
}

TEST_CASE("white maps to full-range YCbCr (1, 0.5, 0.5)") {
  const PixelPlanes p = pixel_planes(1.0, 1.0, 1.0);
  CHECK(p[PlaneId::luminance] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p[PlaneId::chroma_cb] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(p[PlaneId::chroma_cr] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("extreme chroma pins the full-range YCbCr endpoints") {
  CHECK(pixel_planes(1.0, 0.0, 0.0)[PlaneId::chroma_cr] == doctest::Approx(1.0));
  CHECK(pixel_planes(0.0, 0.0, 1.0)[PlaneId::chroma_cb] == doctest::Approx(1.0));
  CHECK(pixel_planes(0.0, 1.0, 1.0)[PlaneId::chroma_cr] == doctest::Approx(0.0));
}

TEST_CASE("every plane stays inside [0,1] on random rasters") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  RasterImage img(16, 16);
  for (double& v : img.values()) v = dist(rng);
  for (PlaneId id : kAllPlaneIds) {
    const PlaneImage plane = to_plane(img, id);
    CHECK(plane.plane_id == id);
    for (double v : plane.pixels.values()) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("red, green and blue planes are exact channel projections") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  RasterImage img(8, 5);
  for (double& v : img.values()) v = dist(rng);
  const PlaneId channels[3] = {PlaneId::red, PlaneId::green, PlaneId::blue};
  for (int c = 0; c < 3; ++c) {
    const PlaneImage plane = to_plane(img, channels[c]);
    for (int y = 0; y < img.height(); ++y) {
      for (int x = 0; x < img.width(); ++x) {
        CHECK(plane.pixels.at(x, y) == img.at(x, y, c));
      }
    }
  }
}

TEST_CASE("achromatic pixels: saturation 0, chroma planes exactly 0.5, hue fixed at 0") {
  for (double v : {0.0, 0.25, 0.5, 0.99, 1.0}) {
    const PixelPlanes p = pixel_planes(v, v, v);
    CHECK(p[PlaneId::saturation] == 0.0);
    CHECK(p[PlaneId::hue] == 0.0);
    CHECK(p[PlaneId::chroma_cb] == 0.5);
    CHECK(p[PlaneId::chroma_cr] == 0.5);
  }
  const RasterImage gray = single_pixel(0.3, 0.3, 0.3);
  CHECK(to_plane(gray, PlaneId::saturation).pixels.at(0, 0) == 0.0);
}

TEST_CASE("hue quadrants land where HSV says they should") {
  CHECK(pixel_planes(0.0, 1.0, 0.0)[PlaneId::hue] == doctest::Approx(1.0 / 3.0));
  CHECK(pixel_planes(0.0, 0.0, 1.0)[PlaneId::hue] == doctest::Approx(2.0 / 3.0));
  CHECK(pixel_planes(1.0, 1.0, 0.0)[PlaneId::hue] == doctest::Approx(1.0 / 6.0));
}
