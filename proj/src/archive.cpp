#include "pallor/archive.hpp"

#include <fstream>

namespace pallor {

using nlohmann::json;

void save_archive(const std::filesystem::path& path, const ModelArchive& archive) {
  json schema = json::array();
  for (const SchemaEntry& e : archive.schema.entries) {
    schema.push_back({{"region", e.region}, {"plane", e.plane}, {"stat", e.stat}});
  }
  const json j{
      {"format_version", ModelArchive::kFormatVersion},
      {"site", std::string(site_name(archive.site))},
      {"model", archive.model_kind},
      {"hierarchy", archive.plan.encode()},
      {"seed", archive.seed},
      {"schema", schema},
      {"schema_hash", archive.schema.hash()},
      {"step1", model_to_json(archive.step1)},
      {"step2", model_to_json(archive.step2)},
  };
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::unreadable_file, "cannot write archive " + path.string());
  }
  out << j.dump(1) << "\n";
}

ModelArchive load_archive(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::missing_file, "cannot open archive " + path.string());
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::unreadable_file,
                "archive " + path.string() + " is not valid JSON: " + e.what());
  }
  try {
    if (j.at("format_version").get<int>() != ModelArchive::kFormatVersion) {
      throw Error(ErrorCode::schema_mismatch,
                  "unsupported archive format version in " + path.string());
    }
    ModelArchive archive;
    const auto site = site_from_name(j.at("site").get<std::string>());
    if (!site) throw Error(ErrorCode::schema_mismatch, "unknown site in archive");
    archive.site = *site;
    archive.model_kind = j.at("model").get<std::string>();
    archive.plan = HierarchyPlan::parse(j.at("hierarchy").get<std::string>());
    archive.seed = j.at("seed").get<std::uint64_t>();
    for (const json& e : j.at("schema")) {
      archive.schema.entries.push_back({e.at("region").get<std::string>(),
                                        e.at("plane").get<std::string>(),
                                        e.at("stat").get<std::string>()});
    }
    if (archive.schema.hash() != j.at("schema_hash").get<std::uint64_t>()) {
      throw Error(ErrorCode::schema_mismatch, "schema hash mismatch in " + path.string());
    }
    archive.step1 = model_from_json(j.at("step1"));
    archive.step2 = model_from_json(j.at("step2"));
    return archive;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::schema_mismatch,
                "archive " + path.string() + " is missing fields: " + e.what());
  }
}

}  // namespace pallor
