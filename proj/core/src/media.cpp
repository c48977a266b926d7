#include "pairgen/media.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pairgen/errors.hpp"

#ifndef PAIRGEN_DEFAULT_MEDIA_FILE
#define PAIRGEN_DEFAULT_MEDIA_FILE "data/media.json"
#endif

namespace pairgen {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where, std::vector<std::string>& errors) {
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) errors.push_back(where + ": unknown key '" + key + "'");
  }
}

std::optional<OpticalMedium> parse_medium(const json& entry, const std::string& where,
                                          std::vector<std::string>& errors) {
  if (!entry.is_object()) {
    errors.push_back(where + ": expected an object");
    return std::nullopt;
  }
  reject_unknown_keys(entry,
                      {"name", "model", "n0", "constant", "terms", "d_eff_pm_per_V", "window_nm",
                       "fit_range_nm", "source", "notes"},
                      where, errors);
  const std::size_t before = errors.size();
  OpticalMedium m;
  if (!entry.contains("name") || !entry["name"].is_string()) {
    errors.push_back(where + ": 'name' must be a string");
  } else {
    m.name = entry["name"].get<std::string>();
  }
  const std::string model = entry.value("model", "");
  if (model == "constant") {
    if (!entry.contains("n0") || !entry["n0"].is_number() || entry["n0"].get<double>() < 1.0) {
      errors.push_back(where + ": constant model needs n0 >= 1");
    } else {
      m.index_model = ConstantIndex{entry["n0"].get<double>()};
    }
  } else if (model == "sellmeier") {
    SellmeierIndex s;
    s.constant = entry.value("constant", 1.0);
    if (!entry.contains("terms") || !entry["terms"].is_array() || entry["terms"].empty()) {
      errors.push_back(where + ": sellmeier model needs a non-empty 'terms' array");
    } else {
      for (const auto& t : entry["terms"]) {
        if (!t.is_array() || t.size() != 2 || !t[0].is_number() || !t[1].is_number()) {
          errors.push_back(where + ": each sellmeier term is [strength, resonance_um2]");
          continue;
        }
        s.terms.push_back({t[0].get<double>(), t[1].get<double>()});
      }
    }
    m.index_model = std::move(s);
  } else {
    errors.push_back(where + ": 'model' must be \"constant\" or \"sellmeier\"");
  }
  if (entry.contains("d_eff_pm_per_V")) {
    if (!entry["d_eff_pm_per_V"].is_number()) {
      errors.push_back(where + ": d_eff_pm_per_V must be a number");
    } else {
      m.d_eff = entry["d_eff_pm_per_V"].get<double>() * 1e-12;
    }
  }
  const auto& window = entry.contains("window_nm") ? entry["window_nm"] : json();
  if (!window.is_array() || window.size() != 2 || !window[0].is_number() ||
      !window[1].is_number() || !(window[0].get<double>() > 0.0) ||
      !(window[1].get<double>() > window[0].get<double>())) {
    errors.push_back(where + ": window_nm must be [min, max] with 0 < min < max");
  } else {
    m.lambda_min = window[0].get<double>() * 1e-9;
    m.lambda_max = window[1].get<double>() * 1e-9;
  }
  m.source = entry.value("source", "");
  if (m.source.empty()) errors.push_back(where + ": 'source' citation is required");
  if (errors.size() != before) return std::nullopt;
  return m;
}

}  // namespace

MediaCatalog::MediaCatalog() { media_.emplace("vacuum", vacuum_medium()); }

std::filesystem::path MediaCatalog::default_path() {
  return std::filesystem::path(PAIRGEN_DEFAULT_MEDIA_FILE);
}

MediaCatalog MediaCatalog::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open media fixture '" + path.string() + "'"});
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path.string());
}

MediaCatalog MediaCatalog::parse(const std::string& json_text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError({origin + ": " + e.what()});
  }
  std::vector<std::string> errors;
  MediaCatalog catalog;
  if (!doc.is_object()) throw ConfigError({origin + ": top level must be an object"});
  reject_unknown_keys(doc, {"format", "version", "media"}, origin, errors);
  if (doc.value("format", "") != "pairgen-media") {
    errors.push_back(origin + ": 'format' must be \"pairgen-media\"");
  }
  if (!doc.contains("version") || !doc["version"].is_string()) {
    errors.push_back(origin + ": 'version' must be a string");
  } else {
    catalog.version_ = doc["version"].get<std::string>();
  }
  if (!doc.contains("media") || !doc["media"].is_array()) {
    errors.push_back(origin + ": 'media' must be an array");
  } else {
    std::size_t idx = 0;
    for (const auto& entry : doc["media"]) {
      const std::string where = origin + ": media[" + std::to_string(idx++) + "]";
      if (auto m = parse_medium(entry, where, errors)) {
        if (catalog.media_.count(m->name) != 0 && m->name != "vacuum") {
          errors.push_back(where + ": duplicate medium '" + m->name + "'");
        } else {
          catalog.media_[m->name] = std::move(*m);
        }
      }
    }
  }
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return catalog;
}

const OpticalMedium& MediaCatalog::at(const std::string& name) const {
  auto it = media_.find(name);
  if (it == media_.end()) throw ConfigError({"unknown medium '" + name + "'"});
  return it->second;
}

std::vector<std::string> MediaCatalog::names() const {
  std::vector<std::string> out;
  out.reserve(media_.size());
  for (const auto& [name, _] : media_) out.push_back(name);
  return out;
}

}  // namespace pairgen
