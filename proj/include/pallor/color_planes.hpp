#pragma once

#include "pallor/raster.hpp"

namespace pallor {

// Per-pixel color coordinates, each rescaled into [0,1]:
//   hue/saturation/intensity  — HSV, hue/360
//   lightness/a_color/b_color — CIE Lab (D65, sRGB companding), L/100,
//                               (a+128)/255, (b+128)/255
//   luminance/chroma_cb/cr    — full-range BT.601 YCbCr, Cb/Cr offset by 0.5
struct PixelPlanes {
  double value[12];
  double operator[](PlaneId id) const { return value[static_cast<int>(id)]; }
};

PixelPlanes pixel_planes(double r, double g, double b);

// Extracts one of the 12 color planes. red/green/blue are exact channel
// projections.
PlaneImage to_plane(const RasterImage& img, PlaneId plane);

}  // namespace pallor
