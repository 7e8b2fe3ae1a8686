#pragma once

#include <optional>
#include <string_view>

namespace pallor {

enum class Site { eye, tongue };

inline std::string_view site_name(Site site) {
  return site == Site::eye ? "eye" : "tongue";
}

inline std::optional<Site> site_from_name(std::string_view name) {
  if (name == "eye") return Site::eye;
  if (name == "tongue") return Site::tongue;
  return std::nullopt;
}

}  // namespace pallor
