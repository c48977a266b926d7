#include "pairgen_app/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "pairgen/constants.hpp"
#include "pairgen/errors.hpp"
#include "pairgen/media.hpp"

namespace pairgen::app {
namespace {

using nlohmann::json;

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// Collects violations while walking the document; nothing throws until the
// whole file has been checked.
class Checker {
 public:
  std::vector<std::string> errors;

  void fail(const std::string& where, const std::string& what) { errors.push_back(where + ": " + what); }

  static std::string join(const std::string& where, const std::string& key) {
    return where.empty() ? key : where + "." + key;
  }

  void allow(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
    for (const auto& [key, _] : obj.items()) {
      bool known = false;
      for (const char* k : keys) known = known || key == k;
      if (!known) fail(join(where, key), "unknown key");
    }
  }

  const json* object(const json& parent, const char* key, const std::string& where, bool required) {
    if (!parent.contains(key)) {
      if (required) fail(join(where, key), "required object missing");
      return nullptr;
    }
    const json& v = parent[key];
    if (!v.is_object()) {
      fail(join(where, key), "must be an object");
      return nullptr;
    }
    return &v;
  }

  std::optional<double> number(const json& obj, const char* key, const std::string& where,
                               bool required) {
    if (!obj.contains(key)) {
      if (required) fail(join(where, key), "required number missing");
      return std::nullopt;
    }
    const json& v = obj[key];
    if (!v.is_number()) {
      fail(join(where, key), "must be a number");
      return std::nullopt;
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
      fail(join(where, key), "must be finite");
      return std::nullopt;
    }
    return x;
  }

  std::optional<double> positive(const json& obj, const char* key, const std::string& where,
                                 bool required) {
    auto x = number(obj, key, where, required);
    if (x && !(*x > 0.0)) {
      fail(join(where, key), "must be positive, got " + fmt(*x));
      return std::nullopt;
    }
    return x;
  }

  std::optional<std::int64_t> integer(const json& obj, const char* key, const std::string& where,
                                      bool required, std::int64_t min_value) {
    if (!obj.contains(key)) {
      if (required) fail(join(where, key), "required integer missing");
      return std::nullopt;
    }
    const json& v = obj[key];
    if (!v.is_number_integer()) {
      fail(join(where, key), "must be an integer");
      return std::nullopt;
    }
    const auto x = v.get<std::int64_t>();
    if (x < min_value) {
      fail(join(where, key), "must be >= " + std::to_string(min_value) + ", got " + std::to_string(x));
      return std::nullopt;
    }
    return x;
  }

  std::optional<std::string> string(const json& obj, const char* key, const std::string& where,
                                    bool required) {
    if (!obj.contains(key)) {
      if (required) fail(join(where, key), "required string missing");
      return std::nullopt;
    }
    if (!obj[key].is_string()) {
      fail(join(where, key), "must be a string");
      return std::nullopt;
    }
    return obj[key].get<std::string>();
  }

  std::optional<bool> boolean(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) return std::nullopt;
    if (!obj[key].is_boolean()) {
      fail(join(where, key), "must be true or false");
      return std::nullopt;
    }
    return obj[key].get<bool>();
  }

  std::optional<std::pair<double, double>> range(const json& obj, const char* key,
                                                 const std::string& where) {
    if (!obj.contains(key)) return std::nullopt;
    const json& v = obj[key];
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      fail(join(where, key), "must be [low, high]");
      return std::nullopt;
    }
    const double lo = v[0].get<double>();
    const double hi = v[1].get<double>();
    if (!(lo > 0.0) || !(hi > lo)) {
      fail(join(where, key), "needs 0 < low < high, got [" + fmt(lo) + ", " + fmt(hi) + "]");
      return std::nullopt;
    }
    return std::pair{lo, hi};
  }

  /// Length given by exactly one of <base>_nm, <base>_um, <base>_mm; metres.
  std::optional<double> length(const json& obj, const std::string& base, const std::string& where) {
    static constexpr std::pair<const char*, double> units[] = {{"_nm", 1e-9}, {"_um", 1e-6}, {"_mm", 1e-3}};
    std::optional<double> out;
    int found = 0;
    for (const auto& [suffix, scale] : units) {
      const std::string key = base + suffix;
      if (!obj.contains(key)) continue;
      ++found;
      if (auto x = positive(obj, key.c_str(), where, true)) out = *x * scale;
    }
    if (found == 0) fail(join(where, base + "_nm|_um|_mm"), "required length missing");
    if (found > 1) fail(join(where, base), "give exactly one unit suffix");
    return found == 1 ? out : std::nullopt;
  }
};

struct Resolver {
  const MediaCatalog* catalog = nullptr;
  Checker& check;
  std::set<std::string> used;

  std::optional<OpticalMedium> medium(const json& obj, const char* key, const std::string& where,
                                      bool required, const char* fallback = nullptr) {
    auto name = check.string(obj, key, where, required && fallback == nullptr);
    if (!name && fallback) name = fallback;
    if (!name || !catalog) return std::nullopt;
    if (!catalog->contains(*name)) {
      check.fail(Checker::join(where, key), "unknown medium '" + *name + "'");
      return std::nullopt;
    }
    used.insert(*name);
    return catalog->at(*name);
  }
};

void parse_layers(const json& list, const std::string& where, Resolver& res,
                  std::vector<StackLayer>& out, int depth) {
  Checker& check = res.check;
  if (!list.is_array() || list.empty()) {
    check.fail(where, "must be a non-empty array");
    return;
  }
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    const json& entry = list[i];
    if (!entry.is_object()) {
      check.fail(at, "must be an object");
      continue;
    }
    if (entry.contains("repeat")) {
      check.allow(entry, at, {"repeat", "layers"});
      const auto n = check.integer(entry, "repeat", at, true, 1);
      if (depth > 4) {
        check.fail(at, "repeat groups nested too deeply");
        continue;
      }
      if (!entry.contains("layers")) {
        check.fail(at + ".layers", "required array missing");
        continue;
      }
      std::vector<StackLayer> group;
      parse_layers(entry["layers"], at + ".layers", res, group, depth + 1);
      if (n) {
        for (std::int64_t r = 0; r < *n; ++r) out.insert(out.end(), group.begin(), group.end());
      }
      continue;
    }
    check.allow(entry, at, {"medium", "thickness_nm", "thickness_um", "thickness_mm", "d_eff_sign"});
    StackLayer layer;
    auto m = res.medium(entry, "medium", at, true);
    auto t = check.length(entry, "thickness", at);
    if (entry.contains("d_eff_sign")) {
      const json& s = entry["d_eff_sign"];
      if (!s.is_number_integer() || (s.get<int>() != 1 && s.get<int>() != -1)) {
        check.fail(at + ".d_eff_sign", "must be 1 or -1");
      } else {
        layer.d_eff_sign = s.get<int>();
      }
    }
    if (m && t) {
      layer.medium = *m;
      layer.thickness = *t;
      out.push_back(std::move(layer));
    }
  }
}

void check_window(Checker& check, const OpticalMedium& m, double lambda_nm, const std::string& what) {
  const double lambda = lambda_nm * 1e-9;
  if (lambda < m.lambda_min || lambda > m.lambda_max) {
    check.fail(what, "wavelength " + fmt(lambda_nm) + " nm outside the window of medium '" + m.name +
                         "' [" + fmt(m.lambda_min * 1e9) + ", " + fmt(m.lambda_max * 1e9) + "] nm");
  }
}

std::vector<const OpticalMedium*> media_of(const ScenarioConfig& cfg) {
  std::vector<const OpticalMedium*> out;
  switch (cfg.kind) {
    case StructureKind::Bulk:
      out = {&cfg.bulk.medium, &cfg.bulk.surround};
      break;
    case StructureKind::Poled:
      out = {&cfg.poled.medium};
      break;
    case StructureKind::Layered:
      out = {&cfg.stack.incident, &cfg.stack.exit};
      for (const auto& l : cfg.stack.layers) out.push_back(&l.medium);
      break;
  }
  return out;
}

}  // namespace

const char* to_string(StructureKind kind) noexcept {
  switch (kind) {
    case StructureKind::Bulk: return "bulk";
    case StructureKind::Poled: return "poled";
    case StructureKind::Layered: return "layered";
  }
  return "?";
}

ScenarioConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open config file '" + path.string() + "'"});
  std::ostringstream buffer;
  buffer << in.rdbuf();
  ScenarioConfig cfg = parse_config_text(buffer.str(), path.parent_path(), path.string());
  cfg.source = path;
  if (cfg.name.empty()) cfg.name = path.stem().string();
  return cfg;
}

ScenarioConfig parse_config_text(const std::string& text, const std::filesystem::path& base_dir,
                                 const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({origin + ": " + e.what()});
  }
  if (!doc.is_object()) throw ConfigError({origin + ": top level must be an object"});

  Checker check;
  ScenarioConfig cfg;
  cfg.document = doc;
  check.allow(doc, "", {"schema_version", "name", "media_file", "structure", "pump", "grid",
                        "toggles", "sweep", "output_dir", "seed", "threads"});

  if (auto v = check.integer(doc, "schema_version", "", true, 1); v && *v != kSchemaVersion) {
    check.fail("schema_version", "unsupported version " + std::to_string(*v) + " (expected " +
                                     std::to_string(kSchemaVersion) + ")");
  }
  cfg.name = check.string(doc, "name", "", false).value_or("");
  cfg.output_dir = check.string(doc, "output_dir", "", false).value_or("");
  if (auto s = check.integer(doc, "seed", "", false, 0)) cfg.seed = static_cast<std::uint64_t>(*s);
  if (auto t = check.integer(doc, "threads", "", false, 1)) cfg.threads = static_cast<unsigned>(*t);

  // Media catalog first; structure resolution depends on it.
  std::optional<MediaCatalog> catalog;
  if (auto file = check.string(doc, "media_file", "", false)) {
    std::filesystem::path p(*file);
    cfg.media_file = p.is_absolute() ? p : base_dir / p;
  } else {
    cfg.media_file = MediaCatalog::default_path();
  }
  try {
    catalog = MediaCatalog::load(cfg.media_file);
    cfg.media_version = catalog->fixture_version();
  } catch (const ConfigError& e) {
    for (const auto& v : e.violations()) check.fail("media_file", v);
  }
  Resolver res{catalog ? &*catalog : nullptr, check, {}};

  // structure
  bool auto_window_possible = false;
  if (const json* s = check.object(doc, "structure", "", true)) {
    const std::string at = "structure";
    const auto type = check.string(*s, "type", at, true);
    if (type == "bulk") {
      cfg.kind = StructureKind::Bulk;
      auto_window_possible = true;
      check.allow(*s, at, {"type", "medium", "length_nm", "length_um", "length_mm", "surround"});
      if (auto m = res.medium(*s, "medium", at, true)) cfg.bulk.medium = *m;
      if (auto m = res.medium(*s, "surround", at, false, "vacuum")) cfg.bulk.surround = *m;
      if (auto l = check.length(*s, "length", at)) cfg.bulk.length = *l;
      if (cfg.bulk.surround.d_eff != 0.0) check.fail(at + ".surround", "surround must be linear");
    } else if (type == "poled") {
      cfg.kind = StructureKind::Poled;
      auto_window_possible = true;
      check.allow(*s, at, {"type", "medium", "length_nm", "length_um", "length_mm",
                           "poling_period_um", "duty_cycle", "method"});
      if (auto m = res.medium(*s, "medium", at, true)) cfg.poled.medium = *m;
      if (auto l = check.length(*s, "length", at)) cfg.poled.total_length = *l;
      if (!s->contains("poling_period_um")) {
        check.fail(at + ".poling_period_um", "required (a number or \"optimum\")");
      } else if ((*s)["poling_period_um"].is_string()) {
        if ((*s)["poling_period_um"].get<std::string>() == "optimum") {
          cfg.optimum_period = true;
        } else {
          check.fail(at + ".poling_period_um", "must be a number or \"optimum\"");
        }
      } else if (auto p = check.positive(*s, "poling_period_um", at, true)) {
        cfg.poled.poling_period = *p * 1e-6;
      }
      if (auto d = check.number(*s, "duty_cycle", at, false)) {
        if (!(*d > 0.0 && *d < 1.0)) {
          check.fail(at + ".duty_cycle", "must lie in (0, 1), got " + fmt(*d));
        } else {
          cfg.poled.duty_cycle = *d;
        }
      }
      if (auto m = check.string(*s, "method", at, false)) {
        if (*m == "geometric") {
          cfg.poled_method = PoledMethod::GeometricSum;
        } else if (*m == "direct") {
          cfg.poled_method = PoledMethod::DirectSum;
        } else {
          check.fail(at + ".method", "must be \"geometric\" or \"direct\"");
        }
      }
    } else if (type == "layered") {
      cfg.kind = StructureKind::Layered;
      check.allow(*s, at, {"type", "layers", "incident_medium", "exit_medium", "pump_angle_deg",
                           "signal_angle_deg"});
      if (auto m = res.medium(*s, "incident_medium", at, false, "vacuum")) cfg.stack.incident = *m;
      if (auto m = res.medium(*s, "exit_medium", at, false, "vacuum")) cfg.stack.exit = *m;
      if (!cfg.stack.incident.is_linear()) check.fail(at + ".incident_medium", "must be linear");
      if (!cfg.stack.exit.is_linear()) check.fail(at + ".exit_medium", "must be linear");
      for (const char* key : {"pump_angle_deg", "signal_angle_deg"}) {
        if (auto a = check.number(*s, key, at, false)) {
          if (!(std::abs(*a) < 90.0)) {
            check.fail(at + "." + key, "must lie in (-90, 90)");
          } else {
            (std::string(key) == "pump_angle_deg" ? cfg.stack.pump_angle : cfg.stack.signal_angle) =
                *a * kPi / 180.0;
          }
        }
      }
      if (!s->contains("layers")) {
        check.fail(at + ".layers", "required array missing");
      } else {
        parse_layers((*s)["layers"], at + ".layers", res, cfg.stack.layers, 0);
      }
    } else if (type) {
      check.fail(at + ".type", "must be \"bulk\", \"poled\" or \"layered\"");
    }
  }

  // pump
  if (const json* p = check.object(doc, "pump", "", true)) {
    const std::string at = "pump";
    check.allow(*p, at, {"kind", "wavelength_nm", "bandwidth_nm", "amplitude", "backward_amplitude"});
    const auto kind = check.string(*p, "kind", at, true);
    if (kind == "cw") {
      cfg.pump.kind = PumpSpectrum::Kind::Cw;
      if (p->contains("bandwidth_nm")) check.fail(at + ".bandwidth_nm", "not allowed for a cw pump");
    } else if (kind == "pulsed") {
      cfg.pump.kind = PumpSpectrum::Kind::Pulsed;
      if (auto b = check.positive(*p, "bandwidth_nm", at, true)) cfg.pump.bandwidth_nm = *b;
    } else if (kind) {
      check.fail(at + ".kind", "must be \"cw\" or \"pulsed\"");
    }
    if (auto w = check.positive(*p, "wavelength_nm", at, true)) cfg.pump.wavelength_nm = *w;
    if (auto a = check.number(*p, "amplitude", at, false)) cfg.pump.amplitude = *a;
    if (auto b = check.number(*p, "backward_amplitude", at, false)) {
      cfg.pump.backward_amplitude = *b;
      if (*b != 0.0 && cfg.kind != StructureKind::Layered) {
        check.fail(at + ".backward_amplitude", "a backward pump is only modelled for layered stacks");
      }
    }
  }

  // grid
  if (const json* g = check.object(doc, "grid", "", true)) {
    const std::string at = "grid";
    check.allow(*g, at, {"mode", "signal_range_nm", "idler_range_nm", "nodes", "support_lobes"});
    const auto mode = check.string(*g, "mode", at, true);
    if (mode == "cw-line") {
      cfg.grid.mode = GridMode::CwLine;
      if (cfg.pump.kind != PumpSpectrum::Kind::Cw) check.fail(at + ".mode", "cw-line needs a cw pump");
    } else if (mode == "full-2d") {
      cfg.grid.mode = GridMode::Full2D;
      if (cfg.pump.kind != PumpSpectrum::Kind::Pulsed)
        check.fail(at + ".mode", "full-2d needs a pulsed pump");
    } else if (mode) {
      check.fail(at + ".mode", "must be \"cw-line\" or \"full-2d\"");
    }
    cfg.grid.signal_range_nm = check.range(*g, "signal_range_nm", at);
    cfg.grid.idler_range_nm = check.range(*g, "idler_range_nm", at);
    const auto min_nodes = static_cast<std::int64_t>(FrequencyGrid::kMinNodes);
    if (g->contains("nodes") && (*g)["nodes"].is_array()) {
      const json& n = (*g)["nodes"];
      if (cfg.grid.mode != GridMode::Full2D || n.size() != 2 || !n[0].is_number_integer() ||
          !n[1].is_number_integer() || n[0].get<std::int64_t>() < min_nodes ||
          n[1].get<std::int64_t>() < min_nodes) {
        check.fail(at + ".nodes", "[signal, idler] form needs full-2d and counts >= 16");
      } else {
        cfg.grid.signal_nodes = n[0].get<std::size_t>();
        cfg.grid.idler_nodes = n[1].get<std::size_t>();
      }
    } else if (auto n = check.integer(*g, "nodes", at, true, min_nodes)) {
      cfg.grid.signal_nodes = cfg.grid.idler_nodes = static_cast<std::size_t>(*n);
    }
    if (auto l = check.integer(*g, "support_lobes", at, false, 0)) {
      cfg.grid.support_lobes = static_cast<int>(*l);
      if (cfg.grid.signal_range_nm) check.fail(at + ".support_lobes", "only used without signal_range_nm");
    }
    if (cfg.grid.mode == GridMode::CwLine) {
      if (cfg.grid.idler_range_nm) check.fail(at + ".idler_range_nm", "not used on a cw line");
      if (!cfg.grid.signal_range_nm && !auto_window_possible) {
        check.fail(at + ".signal_range_nm", "required for layered structures");
      }
      if (cfg.grid.signal_range_nm && cfg.pump.wavelength_nm > 0.0 &&
          !(cfg.grid.signal_range_nm->first > cfg.pump.wavelength_nm)) {
        check.fail(at + ".signal_range_nm", "signal wavelengths must exceed the pump wavelength");
      }
    } else {
      if (!cfg.grid.signal_range_nm) check.fail(at + ".signal_range_nm", "required for full-2d");
      if (!cfg.grid.idler_range_nm) check.fail(at + ".idler_range_nm", "required for full-2d");
    }
  }

  // toggles
  if (const json* t = check.object(doc, "toggles", "", false)) {
    const std::string at = "toggles";
    check.allow(*t, at, {"surface", "channels"});
    if (auto s = check.boolean(*t, "surface", at)) cfg.surface = *s;
    if (t->contains("channels")) {
      const json& c = (*t)["channels"];
      if (c.is_string() && c.get<std::string>() == "all") {
        cfg.channel_mask = kAllChannels;
      } else if (c.is_array() && !c.empty()) {
        cfg.channel_mask = 0;
        for (const auto& item : c) {
          const auto ch = item.is_string() ? DirectionChannel::parse(item.get<std::string>())
                                           : std::nullopt;
          if (!ch) {
            check.fail(at + ".channels", "bad channel label " + item.dump() + " (expected e.g. \"F,FF\")");
          } else {
            cfg.channel_mask |= static_cast<std::uint8_t>(1u << ch->index());
          }
        }
      } else {
        check.fail(at + ".channels", "must be \"all\" or a non-empty list of labels");
      }
    }
  }

  // sweep
  if (const json* s = check.object(doc, "sweep", "", false)) {
    const std::string at = "sweep";
    check.allow(*s, at, {"from_nm", "to_nm", "points"});
    SweepSettings sw;
    auto from = check.positive(*s, "from_nm", at, true);
    auto to = check.positive(*s, "to_nm", at, true);
    auto points = check.integer(*s, "points", at, true, 2);
    if (from && to && points) {
      sw = {*from, *to, static_cast<std::size_t>(*points)};
      if (!(sw.to_nm > sw.from_nm)) check.fail(at, "to_nm must exceed from_nm");
      cfg.sweep = sw;
    }
    if (!auto_window_possible || cfg.grid.signal_range_nm || cfg.pump.kind != PumpSpectrum::Kind::Cw) {
      check.fail(at, "pump sweeps need a bulk or poled crystal, a cw pump and an automatic signal window");
    }
  }

  // Wavelength windows, once every medium is known.
  if (check.errors.empty()) {
    const double lp = cfg.pump.wavelength_nm;
    std::vector<std::pair<double, std::string>> probes;
    if (cfg.sweep) {
      probes.push_back({cfg.sweep->from_nm, "sweep.from_nm"});
      probes.push_back({cfg.sweep->to_nm, "sweep.to_nm"});
    } else {
      probes.push_back({lp, "pump.wavelength_nm"});
    }
    if (cfg.grid.signal_range_nm) {
      const auto [lo, hi] = *cfg.grid.signal_range_nm;
      probes.push_back({lo, "grid.signal_range_nm"});
      probes.push_back({hi, "grid.signal_range_nm"});
      if (cfg.grid.mode == GridMode::CwLine) {
        probes.push_back({1.0 / (1.0 / lp - 1.0 / lo), "grid.signal_range_nm (idler)"});
        probes.push_back({1.0 / (1.0 / lp - 1.0 / hi), "grid.signal_range_nm (idler)"});
      }
    }
    if (cfg.grid.idler_range_nm) {
      probes.push_back({cfg.grid.idler_range_nm->first, "grid.idler_range_nm"});
      probes.push_back({cfg.grid.idler_range_nm->second, "grid.idler_range_nm"});
    }
    for (const OpticalMedium* m : media_of(cfg)) {
      for (const auto& [lambda, what] : probes) check_window(check, *m, lambda, what);
    }
  }

  if (!check.errors.empty()) {
    std::vector<std::string> tagged;
    tagged.reserve(check.errors.size());
    for (auto& e : check.errors) tagged.push_back(origin + ": " + e);
    throw ConfigError(std::move(tagged));
  }
  return cfg;
}

void apply_sweep_override(ScenarioConfig& cfg, const SweepSettings& sweep) {
  Checker check;
  if (sweep.points < 2) check.fail("--points", "must be >= 2");
  if (!(sweep.from_nm > 0.0) || !(sweep.to_nm > sweep.from_nm)) {
    check.fail("--from-nm/--to-nm", "need 0 < from < to");
  }
  if (cfg.kind == StructureKind::Layered || cfg.grid.signal_range_nm ||
      cfg.pump.kind != PumpSpectrum::Kind::Cw) {
    check.fail("sweep-pump", "pump sweeps need a bulk or poled crystal, a cw pump and an automatic signal window");
  }
  if (check.errors.empty()) {
    for (const OpticalMedium* m : media_of(cfg)) {
      check_window(check, *m, sweep.from_nm, "--from-nm");
      check_window(check, *m, sweep.to_nm, "--to-nm");
    }
  }
  if (!check.errors.empty()) throw ConfigError(std::move(check.errors));
  cfg.sweep = sweep;
  cfg.document["sweep"] = {{"from_nm", sweep.from_nm}, {"to_nm", sweep.to_nm}, {"points", sweep.points}};
}

}  // namespace pairgen::app
