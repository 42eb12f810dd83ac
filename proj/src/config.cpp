#include "metasurf/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace metasurf {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& msg) {
  throw ConfigError(field + ": " + msg);
}

double get_number(const json& j, const std::string& field, double fallback,
                  bool required = false) {
  if (!j.contains(field)) {
    if (required) fail(field, "missing required field");
    return fallback;
  }
  if (!j[field].is_number()) fail(field, "expected a number");
  return j[field].get<double>();
}

GeometryConfig parse_geometry(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  GeometryConfig g;
  if (!j.contains("kind") || !j["kind"].is_string())
    fail(where + ".kind", "expected \"disk\", \"star\" or \"multi\"");
  g.kind = j["kind"].get<std::string>();
  if (g.kind == "multi") {
    if (!j.contains("parts") || !j["parts"].is_array() || j["parts"].empty())
      fail(where + ".parts", "expected a non-empty array");
    int idx = 0;
    for (const auto& p : j["parts"])
      g.parts.push_back(parse_geometry(p, where + ".parts[" + std::to_string(idx++) + "]"));
    return g;
  }
  if (g.kind != "disk" && g.kind != "star")
    fail(where + ".kind", "unknown geometry kind '" + g.kind + "'");
  if (!j.contains("center") || !j["center"].is_array() || j["center"].size() != 2)
    fail(where + ".center", "expected [x1, x2]");
  g.center = {j["center"][0].get<double>(), j["center"][1].get<double>()};
  g.nodes = static_cast<int>(get_number(j, "nodes", 128));
  if (g.nodes < 8 || g.nodes % 2 != 0)
    fail(where + ".nodes", "must be even and at least 8");
  if (g.kind == "disk") {
    g.radius = get_number(j, "radius", 0.0, true);
    if (g.radius <= 0.0) fail(where + ".radius", "must be positive");
  } else {
    g.base_radius = get_number(j, "base_radius", 0.0, true);
    g.amplitude = get_number(j, "amplitude", 0.0);
    g.lobes = static_cast<int>(get_number(j, "lobes", 0));
    if (g.base_radius <= 0.0) fail(where + ".base_radius", "must be positive");
    if (g.amplitude < 0.0 || g.amplitude >= g.base_radius)
      fail(where + ".amplitude", "must satisfy 0 <= amplitude < base_radius");
  }
  return g;
}

}  // namespace

ParticleBoundary build_geometry(const GeometryConfig& g) {
  if (g.kind == "disk") return make_disk(g.center, g.radius, g.nodes);
  if (g.kind == "star")
    return make_star(g.center, g.base_radius, g.amplitude, g.lobes, g.nodes);
  if (g.kind == "multi") {
    std::vector<ParticleBoundary> parts;
    parts.reserve(g.parts.size());
    for (const auto& p : g.parts) parts.push_back(build_geometry(p));
    return make_multi(parts);
  }
  throw ConfigError("geometry.kind: unknown kind '" + g.kind + "'");
}

ProjectConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  ProjectConfig cfg;
  cfg.schema_version = static_cast<int>(get_number(j, "schema_version", 1));
  if (cfg.schema_version != 1)
    fail("schema_version", "unsupported version " + std::to_string(cfg.schema_version));
  if (!j.contains("geometry")) fail("geometry", "missing required field");
  cfg.geometry = parse_geometry(j["geometry"], "geometry");

  if (j.contains("sweep")) {
    const auto& s = j["sweep"];
    cfg.start_nm = get_number(s, "start_nm", cfg.start_nm);
    cfg.stop_nm = get_number(s, "stop_nm", cfg.stop_nm);
    cfg.count = static_cast<int>(get_number(s, "count", cfg.count));
  }
  if (!(cfg.start_nm < cfg.stop_nm)) fail("sweep", "grid must be strictly increasing");
  if (cfg.count < 2) fail("sweep.count", "must be at least 2");

  if (j.contains("material")) {
    const auto& m = j["material"];
    cfg.material.plasma_energy_ev =
        get_number(m, "plasma_energy_ev", cfg.material.plasma_energy_ev);
    cfg.material.damping_energy_ev =
        get_number(m, "damping_energy_ev", cfg.material.damping_energy_ev);
    if (cfg.material.plasma_energy_ev <= 0.0) fail("material.plasma_energy_ev", "must be positive");
    if (cfg.material.damping_energy_ev <= 0.0) fail("material.damping_energy_ev", "must be positive");
  }
  cfg.delta = get_number(j, "delta", cfg.delta);
  if (cfg.delta <= 0.0) fail("delta", "must be positive");
  cfg.incidence_deg = get_number(j, "incidence_deg", cfg.incidence_deg);
  if (std::abs(cfg.incidence_deg) >= 90.0) fail("incidence_deg", "must be in (-90, 90)");
  cfg.threads = static_cast<int>(get_number(j, "threads", 0));
  if (cfg.threads < 0) fail("threads", "must be non-negative");

  if (j.contains("optimize")) {
    const auto& o = j["optimize"];
    cfg.optimize.wavelength_nm = get_number(o, "wavelength_nm", cfg.optimize.wavelength_nm);
    cfg.optimize.steps = static_cast<int>(get_number(o, "steps", cfg.optimize.steps));
    cfg.optimize.modes = static_cast<int>(get_number(o, "modes", cfg.optimize.modes));
    cfg.optimize.initial_move = get_number(o, "initial_move", cfg.optimize.initial_move);
    if (cfg.optimize.steps < 0) fail("optimize.steps", "must be non-negative");
    if (o.contains("multistart")) {
      const auto& ms = o["multistart"];
      cfg.optimize.multistart.count = static_cast<int>(get_number(ms, "count", 1));
      cfg.optimize.multistart.seed =
          static_cast<unsigned long long>(get_number(ms, "seed", 0));
      cfg.optimize.multistart.amplitude = get_number(ms, "amplitude", 0.0);
      if (cfg.optimize.multistart.count < 1) fail("optimize.multistart.count", "must be >= 1");
    }
  }
  return cfg;
}

ProjectConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace metasurf
