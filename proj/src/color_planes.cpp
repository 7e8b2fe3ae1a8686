#include "pallor/color_planes.hpp"

#include <algorithm>
#include <cmath>

namespace pallor {
namespace {

double srgb_to_linear(double c) {
  return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double lab_f(double t) {
  constexpr double delta = 6.0 / 29.0;
  constexpr double delta3 = delta * delta * delta;
  if (t > delta3) return std::cbrt(t);
  return t / (3.0 * delta * delta) + 4.0 / 29.0;
}

// sRGB -> XYZ (D65). The white point is taken as the image of (1,1,1) so
// that achromatic inputs map to a* = b* = 0 exactly.
constexpr double kM[3][3] = {
    {0.4124564, 0.3575761, 0.1804375},
    {0.2126729, 0.7151522, 0.0721750},
    {0.0193339, 0.1191920, 0.9503041},
};
constexpr double kWhiteX = kM[0][0] + kM[0][1] + kM[0][2];
constexpr double kWhiteY = kM[1][0] + kM[1][1] + kM[1][2];
constexpr double kWhiteZ = kM[2][0] + kM[2][1] + kM[2][2];

}  // namespace

PixelPlanes pixel_planes(double r, double g, double b) {
  PixelPlanes out{};
  out.value[static_cast<int>(PlaneId::red)] = r;
  out.value[static_cast<int>(PlaneId::green)] = g;
  out.value[static_cast<int>(PlaneId::blue)] = b;

  // HSV; hue of achromatic pixels is fixed at 0.
  const double maxc = std::max({r, g, b});
  const double minc = std::min({r, g, b});
  const double chroma = maxc - minc;
  double hue = 0.0;
  if (chroma > 0.0) {
    if (maxc == r) {
      hue = std::fmod((g - b) / chroma, 6.0);
      if (hue < 0.0) hue += 6.0;
    } else if (maxc == g) {
      hue = (b - r) / chroma + 2.0;
    } else {
      hue = (r - g) / chroma + 4.0;
    }
    hue /= 6.0;
    if (hue >= 1.0) hue -= 1.0;
  }
  out.value[static_cast<int>(PlaneId::hue)] = hue;
  out.value[static_cast<int>(PlaneId::saturation)] = maxc > 0.0 ? chroma / maxc : 0.0;
  out.value[static_cast<int>(PlaneId::intensity)] = maxc;

  // CIE Lab.
  const double rl = srgb_to_linear(r);
  const double gl = srgb_to_linear(g);
  const double bl = srgb_to_linear(b);
  const double X = kM[0][0] * rl + kM[0][1] * gl + kM[0][2] * bl;
  const double Y = kM[1][0] * rl + kM[1][1] * gl + kM[1][2] * bl;
  const double Z = kM[2][0] * rl + kM[2][1] * gl + kM[2][2] * bl;
  const double fx = lab_f(X / kWhiteX);
  const double fy = lab_f(Y / kWhiteY);
  const double fz = lab_f(Z / kWhiteZ);
  const double L = 116.0 * fy - 16.0;
  const double a = 500.0 * (fx - fy);
  const double lab_b = 200.0 * (fy - fz);
  out.value[static_cast<int>(PlaneId::lightness)] = std::clamp(L / 100.0, 0.0, 1.0);
  out.value[static_cast<int>(PlaneId::a_color)] = std::clamp((a + 128.0) / 255.0, 0.0, 1.0);
  out.value[static_cast<int>(PlaneId::b_color)] = std::clamp((lab_b + 128.0) / 255.0, 0.0, 1.0);

  // Full-range BT.601 YCbCr. The chroma terms use the difference form
  // (b - y and r - y expanded in channel differences) so achromatic inputs
  // land on exactly 0.5.
  const double y = 0.299 * r + 0.587 * g + 0.114 * b;
  const double cb = 0.5 + (0.299 * (b - r) + 0.587 * (b - g)) / 1.772;
  const double cr = 0.5 + (0.587 * (r - g) + 0.114 * (r - b)) / 1.402;
  out.value[static_cast<int>(PlaneId::luminance)] = std::clamp(y, 0.0, 1.0);
  out.value[static_cast<int>(PlaneId::chroma_cb)] = std::clamp(cb, 0.0, 1.0);
  out.value[static_cast<int>(PlaneId::chroma_cr)] = std::clamp(cr, 0.0, 1.0);
  return out;
}

PlaneImage to_plane(const RasterImage& img, PlaneId plane) {
  PlaneImage out{plane, ScalarGrid(img.width(), img.height())};
  const int idx = static_cast<int>(plane);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      // Channel projections bypass the full conversion.
      if (plane == PlaneId::red || plane == PlaneId::green || plane == PlaneId::blue) {
        out.pixels.at(x, y) = img.at(x, y, idx);
      } else {
        const PixelPlanes p = pixel_planes(img.at(x, y, 0), img.at(x, y, 1), img.at(x, y, 2));
        out.pixels.at(x, y) = p.value[idx];
      }
    }
  }
  return out;
}

}  // namespace pallor
