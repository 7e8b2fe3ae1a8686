#pragma once

#include <cstdint>
#include <optional>

#include "pallor/raster.hpp"
#include "pallor/segmentation.hpp"
#include "pallor/site.hpp"

namespace pallor {

// Parametric pallor-site image generator. (spec, seed) fully determines the
// output image and its ground-truth masks; grades modulate conjunctiva
// redness (eye) and inner-tongue color (tongue), with grade 2 adding a
// distractor lesion/coating blob.
struct SyntheticSpec {
  Site site = Site::eye;
  int grade = 0;
  std::uint64_t seed = 0;

  // Eye appearance. Axes are ellipse semi-axes in pixels.
  double iris_major_axis = 17.0;
  double iris_minor_axis = 13.0;
  double sclera_brightness = 0.92;
  std::optional<double> conjunctiva_redness;  // [0,1]; drawn per grade if unset

  // Tongue appearance.
  double tongue_axis_x = 42.0;
  double tongue_axis_y = 52.0;
  double rim_texture_amplitude = 0.18;
};

struct SyntheticImage {
  RasterImage image;  // 125x125
  RegionMask foreground;
  EyeRois eye_rois;        // populated when site == eye
  TongueRois tongue_rois;  // populated when site == tongue
};

inline constexpr int kSyntheticSize = 125;

SyntheticImage generate_synthetic(const SyntheticSpec& spec);

}  // namespace pallor
