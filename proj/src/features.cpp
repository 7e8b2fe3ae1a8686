#include "pallor/features.hpp"

#include <array>
#include <cstdio>
#include <fstream>

#include "pallor/color_planes.hpp"

namespace pallor {
namespace {

constexpr std::array<const char*, 3> kStatNames = {"max", "mean", "variance"};

// M1 plane order; the gradient-magnitude / gradient-direction pair counts as
// two planes, giving 9 planes x 3 statistics = 27 features per region.
constexpr std::array<const char*, 9> kM1PlaneNames = {
    "red", "green", "blue", "hue", "saturation", "intensity",
    "grad_mag_green", "grad_dir_green", "frangi_green"};

void append_region(FeatureSchema& schema, const std::string& region) {
  for (const char* plane : kM1PlaneNames) {
    for (const char* stat : kStatNames) {
      schema.entries.push_back({region, plane, stat});
    }
  }
}

struct M1Planes {
  std::array<ScalarGrid, 9> grids;
};

M1Planes compute_m1_planes(const RasterImage& img, const FrangiOptions& frangi) {
  M1Planes out;
  out.grids[0] = to_plane(img, PlaneId::red).pixels;
  out.grids[1] = to_plane(img, PlaneId::green).pixels;
  out.grids[2] = to_plane(img, PlaneId::blue).pixels;
  out.grids[3] = to_plane(img, PlaneId::hue).pixels;
  out.grids[4] = to_plane(img, PlaneId::saturation).pixels;
  out.grids[5] = to_plane(img, PlaneId::intensity).pixels;
  GradientField grad = sobel_gradient(out.grids[1]);
  out.grids[6] = std::move(grad.magnitude);
  out.grids[7] = std::move(grad.direction);
  out.grids[8] = frangi_vesselness(out.grids[1], frangi).response;
  return out;
}

void append_region_stats(std::vector<double>& values, const M1Planes& planes,
                         const RegionMask& region, const char* region_name) {
  if (region.empty()) {
    throw Error(ErrorCode::empty_region,
                std::string("m1 features need a non-empty ") + region_name + " region");
  }
  for (const ScalarGrid& grid : planes.grids) {
    const RegionStatistics stats = region_stats(grid, region);
    values.push_back(stats.max);
    values.push_back(stats.mean);
    values.push_back(stats.variance);
  }
}

}  // namespace

std::vector<std::string> FeatureSchema::names() const {
  std::vector<std::string> out;
  out.reserve(entries.size());
  for (const SchemaEntry& e : entries) out.push_back(e.name());
  return out;
}

std::uint64_t FeatureSchema::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  for (const SchemaEntry& e : entries) {
    for (char c : e.name()) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
    h ^= static_cast<unsigned char>('\n');
    h *= 1099511628211ull;
  }
  return h;
}

FeatureSchema FeatureSchema::m1(Site site) {
  FeatureSchema schema;
  if (site == Site::eye) {
    append_region(schema, "sclera");
    append_region(schema, "conjunctiva");
  } else {
    append_region(schema, "inner");
    append_region(schema, "outer");
  }
  return schema;
}

FeatureSchema FeatureSchema::m2() {
  FeatureSchema schema;
  for (Enhancement e : {Enhancement::none, Enhancement::gradient, Enhancement::frangi}) {
    for (PlaneId id : kAllPlaneIds) {
      std::string plane = std::string(plane_name(id));
      if (e != Enhancement::none) {
        plane += e == Enhancement::gradient ? "_grad" : "_frangi";
      }
      for (const char* stat : kStatNames) {
        schema.entries.push_back({"g", plane, stat});
      }
    }
  }
  return schema;
}

RegionStatistics region_stats(const ScalarGrid& plane, const RegionMask& region) {
  if (plane.width() != region.width() || plane.height() != region.height()) {
    throw Error(ErrorCode::dimension_mismatch, "plane and region dimensions differ");
  }
  if (region.empty()) {
    throw Error(ErrorCode::empty_region, "region statistics on empty region");
  }
  double max = 0.0;
  double sum = 0.0;
  bool first = true;
  for (int y = 0; y < plane.height(); ++y) {
    for (int x = 0; x < plane.width(); ++x) {
      if (!region.get(x, y)) continue;
      const double v = plane.at(x, y);
      if (first || v > max) max = v;
      first = false;
      sum += v;
    }
  }
  const double mean = sum / region.pixel_count();
  double sq = 0.0;
  for (int y = 0; y < plane.height(); ++y) {
    for (int x = 0; x < plane.width(); ++x) {
      if (!region.get(x, y)) continue;
      const double d = plane.at(x, y) - mean;
      sq += d * d;
    }
  }
  return RegionStatistics{max, mean, sq / region.pixel_count()};
}

FeatureVector extract_m1_features(const RasterImage& img, const EyeRois& rois,
                                  const FrangiOptions& frangi) {
  const M1Planes planes = compute_m1_planes(img, frangi);
  FeatureVector out;
  out.site = Site::eye;
  append_region_stats(out.values, planes, rois.sclera, "sclera");
  append_region_stats(out.values, planes, rois.conjunctiva, "conjunctiva");
  return out;
}

FeatureVector extract_m1_features(const RasterImage& img, const TongueRois& rois,
                                  const FrangiOptions& frangi) {
  const M1Planes planes = compute_m1_planes(img, frangi);
  FeatureVector out;
  out.site = Site::tongue;
  append_region_stats(out.values, planes, rois.inner, "inner");
  append_region_stats(out.values, planes, rois.outer, "outer");
  return out;
}

std::string_view enhancement_name(Enhancement e) {
  switch (e) {
    case Enhancement::none: return "none";
    case Enhancement::gradient: return "gradient";
    case Enhancement::frangi: return "frangi";
  }
  return "unknown";
}

ExtrapolatedPlaneSet extrapolate_m2_planes(const RasterImage& img,
                                           const FrangiOptions& frangi) {
  if (img.width() < 5 || img.height() < 5) {
    throw Error(ErrorCode::image_too_small, "m2 extrapolation requires at least 5x5");
  }
  ExtrapolatedPlaneSet out;
  out.planes.reserve(36);
  std::array<ScalarGrid, 12> raw;
  for (std::size_t i = 0; i < kAllPlaneIds.size(); ++i) {
    raw[i] = to_plane(img, kAllPlaneIds[i]).pixels;
    out.planes.push_back({kAllPlaneIds[i], Enhancement::none, raw[i]});
  }
  for (std::size_t i = 0; i < kAllPlaneIds.size(); ++i) {
    const GradientField grad = sobel_gradient(raw[i]);
    out.planes.push_back(
        {kAllPlaneIds[i], Enhancement::gradient, superimpose_edges(raw[i], grad.magnitude)});
  }
  for (std::size_t i = 0; i < kAllPlaneIds.size(); ++i) {
    const VesselnessMap vessel = frangi_vesselness(raw[i], frangi);
    out.planes.push_back(
        {kAllPlaneIds[i], Enhancement::frangi, superimpose_edges(raw[i], vessel.response)});
  }
  return out;
}

std::vector<PlaneFeature> m2_plane_features(const ExtrapolatedPlaneSet& planes,
                                            const RegionMask& g) {
  if (g.empty()) {
    throw Error(ErrorCode::empty_mask, "m2 plane features need a non-empty mask");
  }
  std::vector<PlaneFeature> out;
  out.reserve(planes.planes.size());
  for (const auto& entry : planes.planes) {
    out.push_back({entry.plane, entry.enhancement, region_stats(entry.pixels, g)});
  }
  return out;
}

std::vector<double> flatten_m2_features(const std::vector<PlaneFeature>& features) {
  std::vector<double> out;
  out.reserve(features.size() * 3);
  for (const PlaneFeature& f : features) {
    out.push_back(f.stats.max);
    out.push_back(f.stats.mean);
    out.push_back(f.stats.variance);
  }
  return out;
}

void write_feature_csv(const std::filesystem::path& path, const FeatureSchema& schema,
                       const std::vector<FeatureVector>& rows) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::unreadable_file, "cannot write " + path.string());
  }
  for (const SchemaEntry& e : schema.entries) out << e.name() << ',';
  out << "image_id,site,grade\n";
  char buf[32];
  for (const FeatureVector& row : rows) {
    if (row.values.size() != schema.size()) {
      throw Error(ErrorCode::schema_mismatch, "feature vector length differs from schema");
    }
    for (double v : row.values) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out << buf << ',';
    }
    out << row.image_id << ',' << site_name(row.site) << ',' << row.grade << '\n';
  }
}

}  // namespace pallor
