#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <vector>

#include "pallor/error.hpp"
#include "pallor/site.hpp"

namespace pallor {

struct ManifestRow {
  std::filesystem::path image_path;
  Site site = Site::eye;
  int grade = 0;
  std::optional<std::filesystem::path> mask_path;
};

struct DatasetManifest {
  std::vector<ManifestRow> rows;
  Site site = Site::eye;

  std::array<long, 3> grade_histogram() const;
};

// CSV with header `image_path,site,grade[,mask_path]`; relative paths resolve
// against the manifest's directory. Rows must share one site, paths must be
// unique, and referenced files must exist.
DatasetManifest parse_manifest(const std::filesystem::path& path);

void write_manifest(const std::filesystem::path& path, const DatasetManifest& manifest);

}  // namespace pallor
