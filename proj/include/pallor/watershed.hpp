#pragma once

#include "pallor/raster.hpp"
#include "pallor/regions.hpp"

namespace pallor {

// Watershed transform of the masked plane: Meyer priority flooding from the
// regional minima of the disk-SE morphological gradient. Every masked pixel
// receives exactly one label in 1..region_count; ridge pixels go to the
// first-flooding neighbor. Fully deterministic: the queue orders by
// (relief value, insertion sequence), seeds and neighbors are visited in
// raster order.
RegionLabeling watershed_segment(const ScalarGrid& plane, const RegionMask& mask,
                                 const StructuringElement& se);

// Regional minima of a relief restricted to a mask: 8-connected equal-value
// plateaus with no strictly lower masked neighbor, labeled in raster order.
RegionLabeling regional_minima(const ScalarGrid& relief, const RegionMask& mask);

}  // namespace pallor
