#include "pallor/manifest.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace pallor {
namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  std::size_t b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

}  // namespace

std::array<long, 3> DatasetManifest::grade_histogram() const {
  std::array<long, 3> hist{0, 0, 0};
  for (const ManifestRow& row : rows) ++hist[static_cast<std::size_t>(row.grade)];
  return hist;
}

DatasetManifest parse_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::missing_file, "cannot open manifest " + path.string());
  }
  const std::filesystem::path base = path.has_parent_path()
                                         ? path.parent_path()
                                         : std::filesystem::path(".");
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::malformed_row, "manifest is empty: " + path.string());
  }
  const auto header = split_csv(trim(line));
  const bool has_mask = header.size() == 4 && trim(header[3]) == "mask_path";
  if (!(header.size() == 3 || has_mask) || trim(header[0]) != "image_path" ||
      trim(header[1]) != "site" || trim(header[2]) != "grade") {
    throw Error(ErrorCode::malformed_row,
                "expected header image_path,site,grade[,mask_path] in " + path.string());
  }

  DatasetManifest manifest;
  std::set<std::string> seen;
  std::optional<Site> site;
  long line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string trimmed = trim(line);
    if (trimmed.empty()) continue;
    const auto fields = split_csv(trimmed);
    const auto fail = [&](const std::string& why) -> Error {
      return Error(ErrorCode::malformed_row,
                   "line " + std::to_string(line_number) + ": " + why);
    };
    if (fields.size() < 3 || fields.size() > 4) throw fail("expected 3 or 4 fields");

    ManifestRow row;
    std::filesystem::path image(trim(fields[0]));
    if (image.empty()) throw fail("empty image path");
    if (image.is_relative()) image = base / image;
    row.image_path = image;

    const auto parsed_site = site_from_name(trim(fields[1]));
    if (!parsed_site) throw fail("site must be 'eye' or 'tongue'");
    row.site = *parsed_site;
    if (site && *site != row.site) throw fail("mixed sites in one manifest");
    site = row.site;

    const std::string grade_text = trim(fields[2]);
    if (grade_text.size() != 1 || grade_text[0] < '0' || grade_text[0] > '2') {
      throw fail("grade must be 0, 1 or 2, got '" + grade_text + "'");
    }
    row.grade = grade_text[0] - '0';

    if (fields.size() == 4 && !trim(fields[3]).empty()) {
      std::filesystem::path mask(trim(fields[3]));
      if (mask.is_relative()) mask = base / mask;
      row.mask_path = mask;
    }

    const std::string key = row.image_path.lexically_normal().string();
    if (!seen.insert(key).second) {
      throw Error(ErrorCode::duplicate_path,
                  "line " + std::to_string(line_number) + ": duplicate image path " + key);
    }
    if (!std::filesystem::exists(row.image_path)) {
      throw Error(ErrorCode::missing_file,
                  "line " + std::to_string(line_number) + ": missing image " +
                      row.image_path.string());
    }
    if (row.mask_path && !std::filesystem::exists(*row.mask_path)) {
      throw Error(ErrorCode::missing_file,
                  "line " + std::to_string(line_number) + ": missing mask " +
                      row.mask_path->string());
    }
    manifest.rows.push_back(std::move(row));
  }
  if (manifest.rows.empty()) {
    throw Error(ErrorCode::malformed_row, "manifest has no data rows: " + path.string());
  }
  manifest.site = *site;
  return manifest;
}

void write_manifest(const std::filesystem::path& path, const DatasetManifest& manifest) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::unreadable_file, "cannot write manifest " + path.string());
  }
  bool any_mask = false;
  for (const ManifestRow& row : manifest.rows) any_mask |= row.mask_path.has_value();
  out << "image_path,site,grade" << (any_mask ? ",mask_path" : "") << "\n";
  const std::filesystem::path base = path.has_parent_path()
                                         ? path.parent_path()
                                         : std::filesystem::path(".");
  for (const ManifestRow& row : manifest.rows) {
    out << row.image_path.lexically_proximate(base).generic_string() << ','
        << site_name(row.site) << ',' << row.grade;
    if (any_mask) {
      out << ',';
      if (row.mask_path) out << row.mask_path->lexically_proximate(base).generic_string();
    }
    out << '\n';
  }
}

}  // namespace pallor
