#include "pallor/edge_filters.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pallor {

GradientField sobel_gradient(const ScalarGrid& plane) {
  if (plane.width() < 3 || plane.height() < 3) {
    throw Error(ErrorCode::image_too_small, "sobel requires at least 3x3");
  }
  GradientField out{ScalarGrid(plane.width(), plane.height()),
                    ScalarGrid(plane.width(), plane.height())};
  for (int y = 0; y < plane.height(); ++y) {
    for (int x = 0; x < plane.width(); ++x) {
      const double tl = plane.at_clamped(x - 1, y - 1);
      const double tc = plane.at_clamped(x, y - 1);
      const double tr = plane.at_clamped(x + 1, y - 1);
      const double ml = plane.at_clamped(x - 1, y);
      const double mr = plane.at_clamped(x + 1, y);
      const double bl = plane.at_clamped(x - 1, y + 1);
      const double bc = plane.at_clamped(x, y + 1);
      const double br = plane.at_clamped(x + 1, y + 1);
      const double gx = (tr + 2.0 * mr + br) - (tl + 2.0 * ml + bl);
      const double gy = (bl + 2.0 * bc + br) - (tl + 2.0 * tc + tr);
      const double mag = std::sqrt(gx * gx + gy * gy);
      out.magnitude.at(x, y) = mag;
      if (mag == 0.0) {
        out.direction.at(x, y) = 0.0;
      } else {
        double angle = std::atan2(gy, gx);
        if (angle < 0.0) angle += 2.0 * std::numbers::pi;
        if (angle >= 2.0 * std::numbers::pi) angle = 0.0;
        out.direction.at(x, y) = angle;
      }
    }
  }
  return out;
}

EdgeMap sobel_edge_map(const ScalarGrid& plane, double threshold_fraction) {
  const GradientField grad = sobel_gradient(plane);
  const double max_mag = grad.magnitude.max_value();
  EdgeMap out(plane.width(), plane.height());
  if (max_mag == 0.0) return out;
  const double threshold = threshold_fraction * max_mag;
  for (int y = 0; y < plane.height(); ++y) {
    for (int x = 0; x < plane.width(); ++x) {
      if (grad.magnitude.at(x, y) >= threshold) out.set(x, y, true);
    }
  }
  return out;
}

ScalarGrid gaussian_smooth(const ScalarGrid& plane, double sigma) {
  if (sigma <= 0.0) {
    throw Error(ErrorCode::invalid_scale, "gaussian sigma must be positive");
  }
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  double norm = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    kernel[i + radius] = std::exp(-(i * i) / (2.0 * sigma * sigma));
    norm += kernel[i + radius];
  }
  for (double& k : kernel) k /= norm;

  ScalarGrid horiz(plane.width(), plane.height());
  for (int y = 0; y < plane.height(); ++y) {
    for (int x = 0; x < plane.width(); ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        acc += kernel[i + radius] * plane.at_clamped(x + i, y);
      }
      horiz.at(x, y) = acc;
    }
  }
  ScalarGrid out(plane.width(), plane.height());
  for (int y = 0; y < plane.height(); ++y) {
    for (int x = 0; x < plane.width(); ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        acc += kernel[i + radius] * horiz.at_clamped(x, y + i);
      }
      out.at(x, y) = acc;
    }
  }
  return out;
}

VesselnessMap frangi_vesselness(const ScalarGrid& plane, const FrangiOptions& options) {
  if (plane.width() < 5 || plane.height() < 5) {
    throw Error(ErrorCode::image_too_small, "frangi requires at least 5x5");
  }
  if (options.scales.empty()) {
    throw Error(ErrorCode::invalid_scale, "frangi needs at least one scale");
  }
  for (double s : options.scales) {
    if (s <= 0.0) throw Error(ErrorCode::invalid_scale, "frangi scale must be positive");
  }

  VesselnessMap out{ScalarGrid(plane.width(), plane.height()), options.scales};
  const double two_beta_sq = 2.0 * options.beta * options.beta;
  const double two_c_sq = 2.0 * options.c * options.c;

  for (double sigma : options.scales) {
    const ScalarGrid smoothed = gaussian_smooth(plane, sigma);
    const double norm = sigma * sigma;
    for (int y = 0; y < plane.height(); ++y) {
      for (int x = 0; x < plane.width(); ++x) {
        // 3-point second differences and a 4-point cross difference on the
        // smoothed image, scale-normalized by sigma^2.
        const double dxx = norm * (smoothed.at_clamped(x + 1, y) - 2.0 * smoothed.at(x, y) +
                                   smoothed.at_clamped(x - 1, y));
        const double dyy = norm * (smoothed.at_clamped(x, y + 1) - 2.0 * smoothed.at(x, y) +
                                   smoothed.at_clamped(x, y - 1));
        const double dxy = norm *
                           (smoothed.at_clamped(x + 1, y + 1) - smoothed.at_clamped(x + 1, y - 1) -
                            smoothed.at_clamped(x - 1, y + 1) + smoothed.at_clamped(x - 1, y - 1)) /
                           4.0;
        const double half_trace = (dxx + dyy) / 2.0;
        const double disc = std::sqrt((dxx - dyy) * (dxx - dyy) / 4.0 + dxy * dxy);
        const double mu1 = half_trace + disc;
        const double mu2 = half_trace - disc;
        // |lambda1| <= |lambda2|
        const double lambda1 = std::abs(mu1) <= std::abs(mu2) ? mu1 : mu2;
        const double lambda2 = std::abs(mu1) <= std::abs(mu2) ? mu2 : mu1;
        if (lambda2 == 0.0) continue;
        if (options.polarity == RidgePolarity::dark ? lambda2 < 0.0 : lambda2 > 0.0) continue;
        const double rb = lambda1 / lambda2;
        const double s_sq = lambda1 * lambda1 + lambda2 * lambda2;
        const double response = std::exp(-(rb * rb) / two_beta_sq) *
                                (1.0 - std::exp(-s_sq / two_c_sq));
        if (response > out.response.at(x, y)) out.response.at(x, y) = response;
      }
    }
  }
  return out;
}

ScalarGrid superimpose_edges(const ScalarGrid& plane, const ScalarGrid& edges) {
  if (!plane.same_shape(edges)) {
    throw Error(ErrorCode::dimension_mismatch, "plane and edge dimensions differ");
  }
  const double max_edge = edges.max_value();
  const double scale = max_edge > 0.0 ? 1.0 / max_edge : 1.0;
  ScalarGrid out(plane.width(), plane.height());
  for (int y = 0; y < plane.height(); ++y) {
    for (int x = 0; x < plane.width(); ++x) {
      out.at(x, y) = std::clamp(plane.at(x, y) + edges.at(x, y) * scale, 0.0, 1.0);
    }
  }
  return out;
}

}  // namespace pallor
