#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "pallor/edge_filters.hpp"
#include "test_util.hpp"

using namespace pallor;

namespace {

// Dark Gaussian-profile ridge along the given row on a bright background.
ScalarGrid dark_ridge(int size, double center_row, double width, double depth) {
  ScalarGrid out(size, size, 0.9);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double d = (y - center_row) / width;
      out.at(x, y) -= depth * std::exp(-d * d / 2.0);
    }
  }
  return out;
}

ScalarGrid dark_blob(int size, double cx, double cy, double width, double depth) {
  ScalarGrid out(size, size, 0.9);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double d2 = ((x - cx) * (x - cx) + (y - cy) * (y - cy)) / (width * width);
      out.at(x, y) -= depth * std::exp(-d2 / 2.0);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("sobel of a constant plane is zero with direction 0") {
  const ScalarGrid plane(9, 9, 0.42);
  const GradientField grad = sobel_gradient(plane);
  for (double v : grad.magnitude.values()) CHECK(v == 0.0);
  for (double v : grad.direction.values()) CHECK(v == 0.0);
}

TEST_CASE("horizontal ramp: interior magnitude is 8*slope, direction 0") {
  const double slope = 0.013;
  ScalarGrid plane(12, 8);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 12; ++x) plane.at(x, y) = slope * x;
  }
  const GradientField grad = sobel_gradient(plane);
  for (int y = 1; y < 7; ++y) {
    for (int x = 1; x < 11; ++x) {
      CHECK(grad.magnitude.at(x, y) == doctest::Approx(8.0 * slope).epsilon(1e-12));
      CHECK(grad.direction.at(x, y) == 0.0);
    }
  }
}

TEST_CASE("vertical step edge peaks on the step-adjacent columns and matches the oracle") {
  ScalarGrid plane(10, 10);
  for (int y = 0; y < 10; ++y) {
    for (int x = 0; x < 10; ++x) plane.at(x, y) = x >= 5 ? 1.0 : 0.0;
  }
  const GradientField grad = sobel_gradient(plane);
  const oracle::SobelResult ref = oracle::sobel(plane);
  double max_mag = 0.0;
  for (int y = 0; y < 10; ++y) {
    for (int x = 0; x < 10; ++x) {
      CHECK(grad.magnitude.at(x, y) == doctest::Approx(ref.magnitude.at(x, y)).epsilon(1e-12));
      max_mag = std::max(max_mag, grad.magnitude.at(x, y));
    }
  }
  for (int y = 1; y < 9; ++y) {
    CHECK(grad.magnitude.at(4, y) == doctest::Approx(max_mag));
    CHECK(grad.magnitude.at(5, y) == doctest::Approx(max_mag));
    CHECK(grad.magnitude.at(2, y) == 0.0);
  }
}

TEST_CASE("sobel matches the brute-force oracle on random planes") {
  for (std::uint32_t seed : {1u, 2u, 3u}) {
    const ScalarGrid plane = testutil::random_plane(17, 13, seed);
    const GradientField grad = sobel_gradient(plane);
    const oracle::SobelResult ref = oracle::sobel(plane);
    for (int y = 0; y < 13; ++y) {
      for (int x = 0; x < 17; ++x) {
        CHECK(std::abs(grad.magnitude.at(x, y) - ref.magnitude.at(x, y)) < 1e-9);
        CHECK(std::abs(grad.direction.at(x, y) - ref.direction.at(x, y)) < 1e-9);
      }
    }
  }
}

TEST_CASE("negating the plane keeps the magnitude and rotates direction by pi") {
  const ScalarGrid plane = testutil::random_plane(11, 11, 77);
  ScalarGrid negated(11, 11);
  for (int y = 0; y < 11; ++y) {
    for (int x = 0; x < 11; ++x) negated.at(x, y) = 1.0 - plane.at(x, y);
  }
  const GradientField a = sobel_gradient(plane);
  const GradientField b = sobel_gradient(negated);
  for (int y = 0; y < 11; ++y) {
    for (int x = 0; x < 11; ++x) {
      CHECK(a.magnitude.at(x, y) == doctest::Approx(b.magnitude.at(x, y)).epsilon(1e-9));
      if (a.magnitude.at(x, y) > 1e-9) {
        const double rotated = std::fmod(a.direction.at(x, y) + std::numbers::pi,
                                         2.0 * std::numbers::pi);
        CHECK(std::abs(rotated - b.direction.at(x, y)) < 1e-9);
      }
    }
  }
}

TEST_CASE("sobel rejects planes smaller than 3x3") {
  try {
    sobel_gradient(ScalarGrid(2, 5, 0.0));
    FAIL("expected ImageTooSmall");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::image_too_small);
  }
}

TEST_CASE("edge map: constant plane empty, step edge marks only the adjacent band") {
  CHECK(sobel_edge_map(ScalarGrid(8, 8, 0.3), 0.5).pixel_count() == 0);

  ScalarGrid plane(12, 12);
  for (int y = 0; y < 12; ++y) {
    for (int x = 0; x < 12; ++x) plane.at(x, y) = x >= 6 ? 1.0 : 0.0;
  }
  const EdgeMap edges = sobel_edge_map(plane, 0.5);
  for (int y = 0; y < 12; ++y) {
    for (int x = 0; x < 12; ++x) {
      CHECK(edges.get(x, y) == (x == 5 || x == 6));
    }
  }
}

TEST_CASE("frangi of a constant plane is zero") {
  const VesselnessMap v = frangi_vesselness(ScalarGrid(16, 16, 0.6));
  for (double r : v.response.values()) CHECK(r == 0.0);
}

TEST_CASE("frangi response matches the finite-difference oracle and peaks on the ridge") {
  const ScalarGrid plane = dark_ridge(32, 16.0, 1.5, 0.5);
  FrangiOptions options;
  const VesselnessMap v = frangi_vesselness(plane, options);
  const ScalarGrid ref = oracle::frangi(plane, options.scales, options.beta, options.c, true);
  double max_response = 0.0;
  int argmax_y = -1;
  for (int y = 2; y < 30; ++y) {
    if (v.response.at(16, y) > max_response) {
      max_response = v.response.at(16, y);
      argmax_y = y;
    }
  }
  CHECK(argmax_y == 16);
  CHECK(max_response > 0.0);
  for (int y = 0; y < 32; ++y) {
    for (int x = 0; x < 32; ++x) {
      CHECK(std::abs(v.response.at(x, y) - ref.at(x, y)) < 1e-6);
      CHECK(v.response.at(x, y) >= 0.0);
      CHECK(v.response.at(x, y) <= 1.0);
    }
  }
}

TEST_CASE("an isotropic blob scores strictly below an equal-contrast ridge") {
  const ScalarGrid ridge = dark_ridge(32, 16.0, 1.5, 0.5);
  const ScalarGrid blob = dark_blob(32, 16.0, 16.0, 1.5, 0.5);
  const double ridge_peak = frangi_vesselness(ridge).response.max_value();
  const double blob_peak = frangi_vesselness(blob).response.max_value();
  CHECK(blob_peak < ridge_peak);
}

TEST_CASE("frangi is invariant under adding a constant") {
  ScalarGrid plane = dark_ridge(24, 12.0, 1.5, 0.3);
  const VesselnessMap base = frangi_vesselness(plane);
  for (double& v : plane.values()) v += 0.07;
  const VesselnessMap shifted = frangi_vesselness(plane);
  for (std::size_t i = 0; i < base.response.values().size(); ++i) {
    CHECK(base.response.values()[i] ==
          doctest::Approx(shifted.response.values()[i]).epsilon(1e-9));
  }
}

TEST_CASE("multi-scale response is the pixelwise max of single-scale responses") {
  const ScalarGrid plane = dark_ridge(24, 12.0, 2.0, 0.4);
  FrangiOptions all;
  all.scales = {1.0, 2.0, 3.0};
  const VesselnessMap combined = frangi_vesselness(plane, all);
  std::vector<VesselnessMap> singles;
  for (double s : all.scales) {
    FrangiOptions one = all;
    one.scales = {s};
    singles.push_back(frangi_vesselness(plane, one));
  }
  for (std::size_t i = 0; i < combined.response.values().size(); ++i) {
    double expected = 0.0;
    for (const VesselnessMap& single : singles) {
      expected = std::max(expected, single.response.values()[i]);
    }
    CHECK(combined.response.values()[i] == expected);
  }
}

TEST_CASE("frangi parameter validation") {
  try {
    FrangiOptions bad;
    bad.scales = {1.0, -2.0};
    frangi_vesselness(ScalarGrid(10, 10, 0.1), bad);
    FAIL("expected InvalidScale");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_scale);
  }
  try {
    frangi_vesselness(ScalarGrid(4, 4, 0.1));
    FAIL("expected ImageTooSmall");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::image_too_small);
  }
}

TEST_CASE("superimpose: zero edges keep the plane, zero plane yields edges/max") {
  const ScalarGrid plane = testutil::random_plane(9, 9, 3);
  const ScalarGrid zero(9, 9, 0.0);
  const ScalarGrid kept = superimpose_edges(plane, zero);
  for (std::size_t i = 0; i < kept.values().size(); ++i) {
    CHECK(kept.values()[i] == plane.values()[i]);
  }

  ScalarGrid edges(9, 9, 0.0);
  edges.at(4, 4) = 0.6;
  edges.at(2, 7) = 0.3;
  const ScalarGrid from_zero = superimpose_edges(zero, edges);
  CHECK(from_zero.at(4, 4) == doctest::Approx(1.0));
  CHECK(from_zero.at(2, 7) == doctest::Approx(0.5));
  CHECK(from_zero.at(0, 0) == 0.0);
}

TEST_CASE("superimpose clamps and dominates the base plane") {
  ScalarGrid plane(5, 5, 0.8);
  ScalarGrid edges(5, 5, 0.0);
  edges.at(2, 2) = 0.5;  // rescales to 1.0
  const ScalarGrid out = superimpose_edges(plane, edges);
  CHECK(out.at(2, 2) == 1.0);
  for (std::size_t i = 0; i < out.values().size(); ++i) {
    CHECK(out.values()[i] >= plane.values()[i]);
  }

  try {
    superimpose_edges(plane, ScalarGrid(4, 5, 0.0));
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::dimension_mismatch);
  }
}
