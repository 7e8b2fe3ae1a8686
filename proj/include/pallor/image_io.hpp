#pragma once

#include <filesystem>

#include "pallor/raster.hpp"

namespace pallor {

// Reads an 8-bit PNG or JPEG (detected by magic bytes) into a [0,1] raster.
// Grayscale inputs are replicated across the three channels; alpha is dropped.
RasterImage load_raster(const std::filesystem::path& path);

// Writes a scalar grid as an 8-bit grayscale PNG (values x255, rounded,
// clamped).
void write_grid_png(const std::filesystem::path& path, const ScalarGrid& grid);

// Writes an RGB raster as an 8-bit PNG.
void write_raster_png(const std::filesystem::path& path, const RasterImage& img);

}  // namespace pallor
