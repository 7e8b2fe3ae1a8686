#pragma once

#include <filesystem>

#include "pallor/evaluation.hpp"
#include "pallor/features.hpp"
#include "pallor/models.hpp"
#include "pallor/site.hpp"

namespace pallor {

// Versioned model container: hierarchy plan, feature schema (with hash), and
// the two fitted step models. Loading rejects version or schema mismatches.
struct ModelArchive {
  static constexpr int kFormatVersion = 1;

  Site site = Site::eye;
  std::string model_kind;  // "m1" | "m2"
  HierarchyPlan plan;
  FeatureSchema schema;
  TrainedModel step1;
  TrainedModel step2;
  std::uint64_t seed = 0;
};

void save_archive(const std::filesystem::path& path, const ModelArchive& archive);
ModelArchive load_archive(const std::filesystem::path& path);

}  // namespace pallor
