#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "pairgen/dispersion.hpp"

namespace pairgen {

/// Named media loaded from a versioned fixture file. "vacuum" is always
/// present.
class MediaCatalog {
 public:
  MediaCatalog();

  /// Loads a JSON fixture. Throws ConfigError listing every malformed entry.
  static MediaCatalog load(const std::filesystem::path& path);
  static MediaCatalog parse(const std::string& json_text, const std::string& origin = "<memory>");

  /// Fixture shipped with the library (data/media.json).
  static std::filesystem::path default_path();

  bool contains(const std::string& name) const { return media_.count(name) != 0; }
  /// Throws ConfigError for an unknown name.
  const OpticalMedium& at(const std::string& name) const;
  std::vector<std::string> names() const;

  const std::string& fixture_version() const noexcept { return version_; }

 private:
  std::map<std::string, OpticalMedium> media_;
  std::string version_ = "builtin";
};

}  // namespace pairgen
