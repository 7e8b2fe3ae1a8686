#pragma once

#include <vector>

#include "pallor/raster.hpp"
#include "pallor/regions.hpp"

namespace pallor {

// First-order gradient field. Direction is atan2(Gy, Gx) mapped into
// [0, 2*pi), and 0 by convention where the magnitude vanishes.
struct GradientField {
  ScalarGrid magnitude;  // >= 0
  ScalarGrid direction;  // [0, 2*pi)
};

// Multi-scale vesselness response in [0,1]. Zero on constant images.
struct VesselnessMap {
  ScalarGrid response;
  std::vector<double> scales_used;
};

enum class RidgePolarity {
  dark,    // ridges darker than their surroundings (vessels on tissue)
  bright,  // ridges brighter than their surroundings
};

struct FrangiOptions {
  std::vector<double> scales = {1.0, 2.0, 3.0};
  double beta = 0.5;
  double c = 15.0;
  RidgePolarity polarity = RidgePolarity::dark;
};

// 3x3 Sobel with replicate border padding. Requires a plane of at least 3x3.
GradientField sobel_gradient(const ScalarGrid& plane);

// Marks pixels whose Sobel magnitude reaches threshold_fraction of the
// maximum magnitude. A constant plane yields an empty map.
EdgeMap sobel_edge_map(const ScalarGrid& plane, double threshold_fraction);

// Frangi vesselness: per scale, Gaussian smoothing at sigma, a sigma^2
// normalized finite-difference Hessian, eigenvalues ordered |l1| <= |l2|,
// response exp(-Rb^2/2b^2) * (1 - exp(-S^2/2c^2)) gated on the sign of l2
// by the requested polarity; the output is the pixelwise maximum over scales.
VesselnessMap frangi_vesselness(const ScalarGrid& plane, const FrangiOptions& options = {});

// Clamped additive overlay: edges are rescaled to [0,1] by their own maximum
// (identity rescale when the maximum is 0), then added and clamped.
ScalarGrid superimpose_edges(const ScalarGrid& plane, const ScalarGrid& edges);

// Separable Gaussian smoothing with a truncated normalized kernel
// (radius ceil(3*sigma)) and replicate padding.
ScalarGrid gaussian_smooth(const ScalarGrid& plane, double sigma);

}  // namespace pallor
