#pragma once

// Scenario configuration: strict JSON schema, validation and serialization.
//
// {
//   "scenario":   "bargmann-loop" | "covariance" | "kg-reduce" | "remnant" | "sagnac" | "group-loop" | "contract",
//   "grid":       {"n": 1024, "length": 20},
//   "particle":   {"masses": [1, 2], "hbar": 1, "c": 1},
//   "transform":  {"v": [vx, vy, vz], "a": [ax, ay, az]},
//   "evolution":  {"dt": 1e-3, "steps": 1000, "include_rest_energy": false},
//   "ring":       {"R": 1, "Omega": 0.1, "v_signal": 0.2, "t_flight": 31.4},
//   "sweep":      {"parameter": "c", "values": [...]}  or  {"parameter": "c", "log_range": {"start": 8, "stop": 128, "count": 5}},
//   "packet":     {"center": 0, "width": 1, "k0": 0},
//   "potential":  {"type": "free" | "harmonic", "omega": 1},
//   "event":      {"x": [x, y, z], "t": 0.7},
//   "tolerances": {"<check name>": value}
// }
//
// Unknown keys are rejected everywhere. Sections marked required for a scenario must be
// present; the others fall back to scenario defaults.

#include "bargmann_lab/frame_ops.hpp"

#include "json.hpp"

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace bargmann_lab {

class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct GridSpec
{
  std::size_t n = 1024;
  double length = 20.0;
  bool operator==(const GridSpec&) const = default;
};

struct ParticleSpec
{
  std::vector<double> masses;
  double hbar = 1.0;
  double c    = 1.0;
  bool operator==(const ParticleSpec&) const = default;
};

struct TransformSpec
{
  Vec3 v = Vec3::Zero();
  Vec3 a = Vec3::Zero();
  bool operator==(const TransformSpec& o) const { return v == o.v && a == o.a; }
};

struct EvolutionSpec
{
  double dt                = 1e-3;
  std::size_t steps        = 1000;
  bool include_rest_energy = false;
  bool operator==(const EvolutionSpec&) const = default;
};

struct RingSpec
{
  double R        = 1.0;
  double Omega    = 0.0;
  double v_signal = 0.0;
  std::optional<double> t_flight;
  bool operator==(const RingSpec&) const = default;
};

struct LogRange
{
  double start = 1.0;
  double stop  = 1.0;
  std::size_t count = 2;
  bool operator==(const LogRange&) const = default;
};

struct SweepSpec
{
  std::string parameter;
  std::vector<double> values;
  std::optional<LogRange> log_range;

  /// Explicit values, or count points spaced geometrically from start to stop.
  std::vector<double> resolved() const
  {
    if (!log_range) return values;
    std::vector<double> out;
    const double ratio = std::log(log_range->stop / log_range->start);
    for (std::size_t i = 0; i < log_range->count; ++i) {
      const double f = static_cast<double>(i) / static_cast<double>(log_range->count - 1);
      out.push_back(i + 1 == log_range->count ? log_range->stop : log_range->start * std::exp(ratio * f));
    }
    return out;
  }

  bool operator==(const SweepSpec&) const = default;
};

struct PacketSpec
{
  std::optional<double> center;
  std::optional<double> width;
  double k0 = 0.0;
  bool operator==(const PacketSpec&) const = default;
};

struct PotentialSpec
{
  std::string type = "free";
  double omega     = 0.0;
  bool operator==(const PotentialSpec&) const = default;
};

struct EventSpec
{
  Vec3 x   = Vec3::Zero();
  double t = 0.0;
  bool operator==(const EventSpec& o) const { return x == o.x && t == o.t; }
};

struct ScenarioConfig
{
  std::string scenario;
  std::optional<GridSpec> grid;
  std::optional<ParticleSpec> particle;
  std::optional<TransformSpec> transform;
  std::optional<EvolutionSpec> evolution;
  std::optional<RingSpec> ring;
  std::optional<SweepSpec> sweep;
  std::optional<PacketSpec> packet;
  std::optional<PotentialSpec> potential;
  std::optional<EventSpec> event;
  std::map<std::string, double> tolerances;

  bool operator==(const ScenarioConfig&) const = default;

  PhysicalContext context() const
  {
    return particle ? PhysicalContext{particle->hbar, particle->c} : PhysicalContext{};
  }
};

struct ScenarioInfo
{
  const char* name;
  const char* summary;
  std::vector<std::string> required;
  std::vector<std::string> sweep_parameters;
  std::map<std::string, double> default_tolerances;
};

/// Registry of scenarios with required sections, sweepable parameters and default pass bands.
inline const std::vector<ScenarioInfo>& scenario_registry()
{
  static const std::vector<ScenarioInfo> registry = {
      {"bargmann-loop",
       "translation/boost loop on mass-channel Gaussians: per-channel phase m v.a/hbar",
       {"particle", "transform"},
       {"v"},
       {{"phase_error", 1e-10}, {"shape_residual", 1e-10}, {"norm_drift", 1e-13}, {"group_phase_error", 1e-12},
        {"witness_residual", 0.1}}},
      {"covariance",
       "evolve-then-boost against boost-then-evolve",
       {"particle", "transform", "evolution"},
       {"dt"},
       {{"discrepancy", 1e-8}, {"discrepancy_with_potential", 1e-6}, {"phase_error", 1e-8}, {"norm_drift", 1e-12},
        {"splitting_order_band", 0.1}}},
      {"kg-reduce",
       "Klein-Gordon envelope against Schrodinger over a c sweep",
       {"particle", "evolution"},
       {"c"},
       {{"diff_slope_band", 0.1}, {"energy_drift", 1e-12}, {"residual_slope_band", 0.1}}},
      {"remnant",
       "Lorentz time-shift phase against the Galilean boost phase",
       {"particle", "transform", "event"},
       {"c"},
       {{"slope_band", 0.05}}},
      {"sagnac",
       "closed-form Sagnac phases and their non-relativistic limit",
       {"particle", "ring"},
       {"c", "Omega"},
       {{"identity", 1e-14}, {"limit_slope_band", 0.1}, {"projective_forms", 1e-14}}},
      {"group-loop",
       "extended-Galilei and Poincare loop products",
       {"transform"},
       {"v"},
       {{"commutator", 1e-14}, {"central_deviation", 1e-13}, {"leading_order_factor", 1.0},
        {"central_shift_error", 1e-13}, {"time_slope_band", 0.1}, {"space_slope_band", 0.1}}},
      {"contract",
       "c -> infinity contraction of the Poincare loop onto the central shift",
       {"transform"},
       {"c"},
       {{"scaled_slope_band", 0.1}, {"time_slope_band", 0.2}, {"space_slope_band", 0.2}}},
  };
  return registry;
}

inline const ScenarioInfo& scenario_info(const std::string& name)
{
  for (const auto& s : scenario_registry()) {
    if (name == s.name) return s;
  }
  throw ConfigError("config: unknown scenario '" + name + "'");
}

namespace detail {

using nlohmann::json;

inline void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed)
{
  if (!obj.is_object()) throw ConfigError("config: '" + where + "' must be an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) {
      throw ConfigError("config: unknown key '" + key + "'" + (where.empty() ? "" : " in '" + where + "'"));
    }
  }
}

inline double get_number(const json& obj, const std::string& where, const char* key)
{
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError("config: '" + where + "." + key + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError("config: '" + where + "." + key + "' must be finite");
  return d;
}

inline double number_or(const json& obj, const std::string& where, const char* key, double fallback)
{
  return obj.contains(key) ? get_number(obj, where, key) : fallback;
}

inline std::size_t get_count(const json& obj, const std::string& where, const char* key)
{
  const json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError("config: '" + where + "." + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

inline Vec3 get_vec3(const json& obj, const std::string& where, const char* key)
{
  const json& v = obj.at(key);
  if (!v.is_array() || v.size() != 3) throw ConfigError("config: '" + where + "." + key + "' must be an array of 3 numbers");
  Vec3 out;
  for (int i = 0; i < 3; ++i) {
    if (!v[i].is_number()) throw ConfigError("config: '" + where + "." + key + "' must be an array of 3 numbers");
    out[i] = v[i].get<double>();
    if (!std::isfinite(out[i])) throw ConfigError("config: '" + where + "." + key + "' must be finite");
  }
  return out;
}

inline void require(bool cond, const std::string& message)
{
  if (!cond) throw ConfigError(message);
}

inline json vec_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

}  // namespace detail

/// Checks section presence and cross-field constraints against the scenario.
inline void validate_config(const ScenarioConfig& cfg)
{
  using detail::require;
  const ScenarioInfo& info = scenario_info(cfg.scenario);
  auto present = [&](const std::string& s) {
    if (s == "grid") return cfg.grid.has_value();
    if (s == "particle") return cfg.particle.has_value();
    if (s == "transform") return cfg.transform.has_value();
    if (s == "evolution") return cfg.evolution.has_value();
    if (s == "ring") return cfg.ring.has_value();
    if (s == "event") return cfg.event.has_value();
    return false;
  };
  for (const auto& s : info.required) {
    require(present(s), "config: scenario '" + cfg.scenario + "' requires section '" + s + "'");
  }

  const double c = cfg.particle ? cfg.particle->c : 1.0;
  if (cfg.grid) {
    const std::size_t n = cfg.grid->n;
    require(n >= 8 && (n & (n - 1)) == 0, "grid: n must be a power of two >= 8");
    require(cfg.grid->length > 0.0, "grid: length must be > 0");
  }
  if (cfg.particle) {
    require(!cfg.particle->masses.empty(), "particle: masses must not be empty");
    for (double m : cfg.particle->masses) require(m > 0.0, "particle: masses must be > 0");
    require(cfg.particle->hbar > 0.0, "particle: hbar must be > 0");
    require(cfg.particle->c > 0.0, "particle: c must be > 0");
  }
  if (cfg.evolution) {
    require(cfg.evolution->dt > 0.0, "evolution: dt must be > 0");
    require(cfg.evolution->steps >= 1, "evolution: steps must be >= 1");
  }
  if (cfg.ring) {
    require(cfg.ring->R > 0.0, "ring: R must be > 0");
    require(cfg.ring->Omega >= 0.0, "ring: Omega must be >= 0");
    require(cfg.ring->Omega * cfg.ring->R < c, "ring: Omega*R must be < c");
    require(cfg.ring->v_signal >= 0.0, "ring: v_signal must be >= 0");
    require(cfg.ring->v_signal < c, "ring: v_signal must be < c");
    if (cfg.ring->t_flight) require(*cfg.ring->t_flight > 0.0, "ring: t_flight must be > 0");
  }
  if (cfg.packet && cfg.packet->width) require(*cfg.packet->width > 0.0, "packet: width must be > 0");
  if (cfg.potential) {
    require(cfg.potential->type == "free" || cfg.potential->type == "harmonic",
            "potential: type must be 'free' or 'harmonic'");
    if (cfg.potential->type == "harmonic") require(cfg.potential->omega > 0.0, "potential: omega must be > 0");
  }
  if (cfg.transform && (cfg.scenario == "bargmann-loop" || cfg.scenario == "covariance")) {
    require(cfg.transform->v.tail<2>().isZero(0.0) && cfg.transform->a.tail<2>().isZero(0.0),
            "transform: field scenarios are one-dimensional; v and a must lie along x");
  }
  if (cfg.transform && (cfg.scenario == "remnant" || cfg.scenario == "group-loop")) {
    require(cfg.transform->v.norm() < c, "transform: |v| must be < c");
  }

  if (cfg.sweep) {
    const auto& sp = cfg.sweep->parameter;
    bool supported = false;
    for (const auto& p : info.sweep_parameters) supported = supported || p == sp;
    require(supported, "sweep: parameter '" + sp + "' not supported by scenario '" + cfg.scenario + "'");
    if (cfg.sweep->log_range) {
      const LogRange& lr = *cfg.sweep->log_range;
      require(lr.start > 0.0 && lr.stop > lr.start, "sweep: log_range needs 0 < start < stop");
      require(lr.count >= 2, "sweep: log_range count must be >= 2");
    } else {
      require(!cfg.sweep->values.empty(), "sweep: values must not be empty");
    }
    for (double x : cfg.sweep->resolved()) {
      require(x > 0.0, "sweep: values must be > 0");
      if (sp == "c") {
        if (cfg.transform) require(cfg.transform->v.norm() < x, "sweep: every c must exceed |v|");
        if (cfg.ring) {
          require(cfg.ring->Omega * cfg.ring->R < x, "sweep: every c must exceed Omega*R");
          require(cfg.ring->v_signal < x, "sweep: every c must exceed v_signal");
        }
      }
      if (sp == "Omega" && cfg.ring) require(x * cfg.ring->R < c, "sweep: Omega*R must be < c");
      if (sp == "v" && cfg.scenario == "group-loop") require(x < c, "sweep: v must be < c");
    }
  }

  for (const auto& [name, value] : cfg.tolerances) {
    require(info.default_tolerances.count(name) == 1,
            "tolerances: unknown tolerance '" + name + "' for scenario '" + cfg.scenario + "'");
    require(value >= 0.0 && std::isfinite(value), "tolerances: '" + name + "' must be a finite value >= 0");
  }
}

inline ScenarioConfig parse_config(const std::string& text)
{
  using detail::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: syntax error: ") + e.what());
  }

  try {
    detail::reject_unknown(doc, "",
                           {"scenario", "grid", "particle", "transform", "evolution", "ring", "sweep", "packet",
                            "potential", "event", "tolerances"});
    ScenarioConfig cfg;
    if (!doc.contains("scenario") || !doc["scenario"].is_string()) throw ConfigError("config: 'scenario' must be a string");
    cfg.scenario = doc["scenario"].get<std::string>();
    scenario_info(cfg.scenario);

    if (doc.contains("grid")) {
      const json& g = doc["grid"];
      detail::reject_unknown(g, "grid", {"n", "length"});
      cfg.grid = GridSpec{detail::get_count(g, "grid", "n"), detail::get_number(g, "grid", "length")};
    }
    if (doc.contains("particle")) {
      const json& p = doc["particle"];
      detail::reject_unknown(p, "particle", {"masses", "hbar", "c"});
      ParticleSpec ps;
      if (!p.contains("masses") || !p["masses"].is_array()) throw ConfigError("config: 'particle.masses' must be an array");
      for (const auto& m : p["masses"]) {
        if (!m.is_number()) throw ConfigError("config: 'particle.masses' must contain numbers");
        ps.masses.push_back(m.get<double>());
      }
      ps.hbar      = detail::number_or(p, "particle", "hbar", 1.0);
      ps.c         = detail::number_or(p, "particle", "c", 1.0);
      cfg.particle = ps;
    }
    if (doc.contains("transform")) {
      const json& t = doc["transform"];
      detail::reject_unknown(t, "transform", {"v", "a"});
      TransformSpec ts;
      if (t.contains("v")) ts.v = detail::get_vec3(t, "transform", "v");
      if (t.contains("a")) ts.a = detail::get_vec3(t, "transform", "a");
      cfg.transform = ts;
    }
    if (doc.contains("evolution")) {
      const json& e = doc["evolution"];
      detail::reject_unknown(e, "evolution", {"dt", "steps", "include_rest_energy"});
      EvolutionSpec es;
      es.dt    = detail::get_number(e, "evolution", "dt");
      es.steps = detail::get_count(e, "evolution", "steps");
      if (e.contains("include_rest_energy")) {
        if (!e["include_rest_energy"].is_boolean()) throw ConfigError("config: 'evolution.include_rest_energy' must be a boolean");
        es.include_rest_energy = e["include_rest_energy"].get<bool>();
      }
      cfg.evolution = es;
    }
    if (doc.contains("ring")) {
      const json& r = doc["ring"];
      detail::reject_unknown(r, "ring", {"R", "Omega", "v_signal", "t_flight"});
      RingSpec rs;
      rs.R        = detail::get_number(r, "ring", "R");
      rs.Omega    = detail::get_number(r, "ring", "Omega");
      rs.v_signal = detail::number_or(r, "ring", "v_signal", 0.0);
      if (r.contains("t_flight")) rs.t_flight = detail::get_number(r, "ring", "t_flight");
      cfg.ring = rs;
    }
    if (doc.contains("sweep")) {
      const json& s = doc["sweep"];
      detail::reject_unknown(s, "sweep", {"parameter", "values", "log_range"});
      SweepSpec ss;
      if (!s.contains("parameter") || !s["parameter"].is_string()) throw ConfigError("config: 'sweep.parameter' must be a string");
      ss.parameter = s["parameter"].get<std::string>();
      if (s.contains("values") == s.contains("log_range")) {
        throw ConfigError("config: 'sweep' needs exactly one of 'values' or 'log_range'");
      }
      if (s.contains("values")) {
        if (!s["values"].is_array()) throw ConfigError("config: 'sweep.values' must be an array");
        for (const auto& v : s["values"]) {
          if (!v.is_number()) throw ConfigError("config: 'sweep.values' must contain numbers");
          ss.values.push_back(v.get<double>());
        }
      } else {
        const json& lr = s["log_range"];
        detail::reject_unknown(lr, "sweep.log_range", {"start", "stop", "count"});
        ss.log_range = LogRange{detail::get_number(lr, "sweep.log_range", "start"),
                                detail::get_number(lr, "sweep.log_range", "stop"),
                                detail::get_count(lr, "sweep.log_range", "count")};
      }
      cfg.sweep = ss;
    }
    if (doc.contains("packet")) {
      const json& p = doc["packet"];
      detail::reject_unknown(p, "packet", {"center", "width", "k0"});
      PacketSpec ps;
      if (p.contains("center")) ps.center = detail::get_number(p, "packet", "center");
      if (p.contains("width")) ps.width = detail::get_number(p, "packet", "width");
      ps.k0      = detail::number_or(p, "packet", "k0", 0.0);
      cfg.packet = ps;
    }
    if (doc.contains("potential")) {
      const json& p = doc["potential"];
      detail::reject_unknown(p, "potential", {"type", "omega"});
      PotentialSpec ps;
      if (!p.contains("type") || !p["type"].is_string()) throw ConfigError("config: 'potential.type' must be a string");
      ps.type       = p["type"].get<std::string>();
      ps.omega      = detail::number_or(p, "potential", "omega", 0.0);
      cfg.potential = ps;
    }
    if (doc.contains("event")) {
      const json& e = doc["event"];
      detail::reject_unknown(e, "event", {"x", "t"});
      EventSpec es;
      es.x      = detail::get_vec3(e, "event", "x");
      es.t      = detail::get_number(e, "event", "t");
      cfg.event = es;
    }
    if (doc.contains("tolerances")) {
      const json& t = doc["tolerances"];
      if (!t.is_object()) throw ConfigError("config: 'tolerances' must be an object");
      for (const auto& [key, value] : t.items()) {
        if (!value.is_number()) throw ConfigError("config: 'tolerances." + key + "' must be a number");
        cfg.tolerances[key] = value.get<double>();
      }
    }

    validate_config(cfg);
    return cfg;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

inline std::string serialize_config(const ScenarioConfig& cfg)
{
  using detail::json;
  using detail::vec_json;
  json doc;
  doc["scenario"] = cfg.scenario;
  if (cfg.grid) doc["grid"] = {{"n", cfg.grid->n}, {"length", cfg.grid->length}};
  if (cfg.particle) doc["particle"] = {{"masses", cfg.particle->masses}, {"hbar", cfg.particle->hbar}, {"c", cfg.particle->c}};
  if (cfg.transform) doc["transform"] = {{"v", vec_json(cfg.transform->v)}, {"a", vec_json(cfg.transform->a)}};
  if (cfg.evolution) {
    doc["evolution"] = {{"dt", cfg.evolution->dt},
                        {"steps", cfg.evolution->steps},
                        {"include_rest_energy", cfg.evolution->include_rest_energy}};
  }
  if (cfg.ring) {
    json r = {{"R", cfg.ring->R}, {"Omega", cfg.ring->Omega}, {"v_signal", cfg.ring->v_signal}};
    if (cfg.ring->t_flight) r["t_flight"] = *cfg.ring->t_flight;
    doc["ring"] = r;
  }
  if (cfg.sweep) {
    json s = {{"parameter", cfg.sweep->parameter}};
    if (cfg.sweep->log_range) {
      s["log_range"] = {{"start", cfg.sweep->log_range->start},
                        {"stop", cfg.sweep->log_range->stop},
                        {"count", cfg.sweep->log_range->count}};
    } else {
      s["values"] = cfg.sweep->values;
    }
    doc["sweep"] = s;
  }
  if (cfg.packet) {
    json p = {{"k0", cfg.packet->k0}};
    if (cfg.packet->center) p["center"] = *cfg.packet->center;
    if (cfg.packet->width) p["width"] = *cfg.packet->width;
    doc["packet"] = p;
  }
  if (cfg.potential) doc["potential"] = {{"type", cfg.potential->type}, {"omega", cfg.potential->omega}};
  if (cfg.event) doc["event"] = {{"x", vec_json(cfg.event->x)}, {"t", cfg.event->t}};
  if (!cfg.tolerances.empty()) doc["tolerances"] = cfg.tolerances;
  return doc.dump(2) + "\n";
}

}  // namespace bargmann_lab
