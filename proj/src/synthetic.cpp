#include "pallor/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace pallor {
namespace {

constexpr int kSize = kSyntheticSize;

void validate(const SyntheticSpec& spec) {
  if (spec.grade < 0 || spec.grade > 2) {
    throw Error(ErrorCode::invalid_spec, "grade must be 0, 1 or 2");
  }
  if (spec.iris_major_axis <= 0.0 || spec.iris_minor_axis <= 0.0 ||
      spec.tongue_axis_x <= 0.0 || spec.tongue_axis_y <= 0.0) {
    throw Error(ErrorCode::invalid_spec, "axes must be positive");
  }
  if (spec.conjunctiva_redness &&
      (*spec.conjunctiva_redness < 0.0 || *spec.conjunctiva_redness > 1.0)) {
    throw Error(ErrorCode::invalid_spec, "conjunctiva redness must be in [0,1]");
  }
  if (spec.rim_texture_amplitude < 0.0) {
    throw Error(ErrorCode::invalid_spec, "rim texture amplitude must be >= 0");
  }
}

void paint(RasterImage& img, int x, int y, double r, double g, double b) {
  img.at(x, y, 0) = r;
  img.at(x, y, 1) = g;
  img.at(x, y, 2) = b;
}

// Red/blue channel noise only; the green channel stays piecewise constant so
// that watershed basins follow the anatomical zones.
void add_chroma_noise(RasterImage& img, std::mt19937& rng, double amplitude) {
  std::uniform_real_distribution<double> dist(-amplitude, amplitude);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      img.at(x, y, 0) = std::clamp(img.at(x, y, 0) + dist(rng), 0.0, 1.0);
      img.at(x, y, 2) = std::clamp(img.at(x, y, 2) + dist(rng), 0.0, 1.0);
    }
  }
}

SyntheticImage generate_eye(const SyntheticSpec& spec) {
  std::mt19937 rng(static_cast<std::uint32_t>(spec.seed * 2654435761u + 17));
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  double redness;
  if (spec.conjunctiva_redness) {
    redness = *spec.conjunctiva_redness;
    (void)unit(rng);
  } else {
    const double u = unit(rng);
    switch (spec.grade) {
      case 0: redness = 0.75 + 0.15 * u; break;
      case 1: redness = 0.20 + 0.15 * u; break;
      default: redness = 0.50 + 0.15 * u; break;
    }
  }
  const double lesion_dx = unit(rng) * 24.0 - 12.0;

  const double cx = 62.0, cy = 62.0;
  const double eye_ax = 52.0, eye_ay = 36.0;
  const double iris_cy = 58.0;
  const int conj_top = 80;

  SyntheticImage out;
  out.image = RasterImage(kSize, kSize);
  out.foreground = RegionMask(kSize, kSize);
  RegionMask iris(kSize, kSize), sclera(kSize, kSize), conj(kSize, kSize);

  const double conj_r = 0.85;
  const double conj_g = 0.75 - 0.45 * redness;
  const double conj_b = 0.72 - 0.42 * redness;
  const double lesion_cx = cx + lesion_dx;
  const double lesion_cy = 86.0;

  for (int y = 0; y < kSize; ++y) {
    for (int x = 0; x < kSize; ++x) {
      const double ex = (x - cx) / eye_ax;
      const double ey = (y - cy) / eye_ay;
      if (ex * ex + ey * ey > 1.0) {
        paint(out.image, x, y, 0.12, 0.10, 0.10);
        continue;
      }
      out.foreground.set(x, y, true);
      const double ix = (x - cx) / spec.iris_major_axis;
      const double iy = (y - iris_cy) / spec.iris_minor_axis;
      if (y >= conj_top) {
        conj.set(x, y, true);
        const double lx = x - lesion_cx;
        const double ly = y - lesion_cy;
        if (spec.grade == 2 && lx * lx + ly * ly <= 25.0) {
          paint(out.image, x, y, 0.80, 0.75, 0.35);
        } else {
          paint(out.image, x, y, conj_r, conj_g, conj_b);
        }
      } else if (ix * ix + iy * iy <= 1.0) {
        // Bright blue iris: dark in red for the threshold rule, bright in
        // value so the foreground split keeps it.
        iris.set(x, y, true);
        paint(out.image, x, y, 0.05, 0.32, 0.75);
      } else {
        sclera.set(x, y, true);
        paint(out.image, x, y, spec.sclera_brightness, spec.sclera_brightness - 0.02,
              spec.sclera_brightness - 0.04);
      }
    }
  }
  add_chroma_noise(out.image, rng, 0.01);
  out.eye_rois = EyeRois{iris, sclera, conj};
  return out;
}

SyntheticImage generate_tongue(const SyntheticSpec& spec) {
  std::mt19937 rng(static_cast<std::uint32_t>(spec.seed * 2654435761u + 29));
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const double u = unit(rng);
  double inner_g;
  switch (spec.grade) {
    case 0: inner_g = 0.42 + 0.06 * u; break;
    case 1: inner_g = 0.64 + 0.06 * u; break;
    default: inner_g = 0.52 + 0.06 * u; break;
  }
  const double inner_r = spec.grade == 1 ? 0.88 : 0.82;
  const double inner_b = spec.grade == 1 ? 0.66 : 0.44;

  const double cx = 62.0, cy = 62.0;
  const double ax = spec.tongue_axis_x;
  const double ay = spec.tongue_axis_y;
  const double rim_frac = 7.0 / std::min(ax, ay);
  const double amp = spec.rim_texture_amplitude;  // relative rim modulation

  SyntheticImage out;
  out.image = RasterImage(kSize, kSize);
  out.foreground = RegionMask(kSize, kSize);
  RegionMask inner(kSize, kSize), outer(kSize, kSize);

  for (int y = 0; y < kSize; ++y) {
    for (int x = 0; x < kSize; ++x) {
      const double dx = (x - cx) / ax;
      const double dy = (y - cy) / ay;
      const double rnorm = std::sqrt(dx * dx + dy * dy);
      if (rnorm > 1.0) {
        paint(out.image, x, y, 0.15, 0.14, 0.16);
        continue;
      }
      out.foreground.set(x, y, true);
      if (rnorm >= 1.0 - rim_frac) {
        outer.set(x, y, true);
        // Angular stripes over a mild outward-decreasing ramp: the relief
        // minima sit on the outer contour, one per stripe sector, so every
        // rim basin reaches the edge band. The stripe range also keeps the
        // whole contour above the 0.5*max edge threshold.
        const double theta = std::atan2(y - cy, x - cx);
        const double stripe = (1.0 + std::sin(16.0 * theta)) / 2.0;
        const double radial = (rnorm - (1.0 - rim_frac)) / rim_frac;  // 0 inner, 1 contour
        const double base = 0.14 + 0.04 * radial;
        paint(out.image, x, y, 0.72, base * (1.0 + amp * stripe), 0.38);
      } else {
        inner.set(x, y, true);
        const double px = x - 62.0;
        const double py = y - 47.0;
        if (spec.grade == 2 && px * px + py * py <= 14.0 * 14.0) {
          paint(out.image, x, y, 0.85, 0.82, 0.62);
        } else {
          paint(out.image, x, y, inner_r, inner_g, inner_b);
        }
      }
    }
  }
  add_chroma_noise(out.image, rng, 0.01);
  out.tongue_rois = TongueRois{inner, outer};
  return out;
}

}  // namespace

SyntheticImage generate_synthetic(const SyntheticSpec& spec) {
  validate(spec);
  return spec.site == Site::eye ? generate_eye(spec) : generate_tongue(spec);
}

}  // namespace pallor
