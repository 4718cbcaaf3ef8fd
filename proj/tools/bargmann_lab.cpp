// bargmann-lab: run verification scenarios from a JSON config or from flags.
//
//   bargmann-lab run <config.json> [--out path] [--format csv|json]
//   bargmann-lab <scenario> [--flag ...] [--out path] [--format csv|json] [--print-config]
//   bargmann-lab --list-scenarios
//
// Exit codes: 0 all checks pass, 1 a physics tolerance failed, 2 usage / config / I/O error.

#include "bargmann_lab/config.hpp"
#include "bargmann_lab/report.hpp"
#include "bargmann_lab/scenarios.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace bargmann_lab;
using nlohmann::json;

constexpr int exit_ok      = 0;
constexpr int exit_failed  = 1;
constexpr int exit_usage   = 2;

struct OutputOptions
{
  std::string out;
  std::string format;
};

// Flags for the shorthand subcommands; unset options leave the section out.
struct ShorthandOptions
{
  std::optional<std::size_t> n;
  std::optional<double> length;
  std::vector<double> masses;
  std::optional<double> hbar, c;
  std::vector<double> v, a;
  std::optional<double> dt;
  std::optional<std::size_t> steps;
  bool rest_energy = false;
  std::optional<double> R, Omega, v_signal, t_flight;
  std::optional<std::string> sweep_parameter;
  std::vector<double> sweep_values;
  std::vector<double> log_range;
  std::optional<double> packet_center, packet_width, packet_k0;
  std::optional<std::string> potential;
  std::optional<double> potential_omega;
  std::vector<double> event_x;
  std::optional<double> event_t;
  std::vector<std::string> tolerances;
  bool print_config = false;
};

json vec3(const std::vector<double>& v)
{
  if (v.size() == 1) return json::array({v[0], 0.0, 0.0});
  return v;
}

json shorthand_document(const std::string& scenario, const ShorthandOptions& o)
{
  json doc;
  doc["scenario"] = scenario;
  if (o.n || o.length) {
    json g;
    if (o.n) g["n"] = *o.n;
    if (o.length) g["length"] = *o.length;
    doc["grid"] = g;
  }
  if (!o.masses.empty() || o.hbar || o.c) {
    json p;
    p["masses"] = o.masses.empty() ? std::vector<double>{1.0} : o.masses;
    if (o.hbar) p["hbar"] = *o.hbar;
    if (o.c) p["c"] = *o.c;
    doc["particle"] = p;
  }
  if (!o.v.empty() || !o.a.empty()) {
    json t;
    if (!o.v.empty()) t["v"] = vec3(o.v);
    if (!o.a.empty()) t["a"] = vec3(o.a);
    doc["transform"] = t;
  }
  if (o.dt || o.steps || o.rest_energy) {
    json e;
    e["dt"]    = o.dt.value_or(1e-3);
    e["steps"] = o.steps.value_or(1000);
    if (o.rest_energy) e["include_rest_energy"] = true;
    doc["evolution"] = e;
  }
  if (o.R || o.Omega || o.v_signal || o.t_flight) {
    json r;
    r["R"]     = o.R.value_or(1.0);
    r["Omega"] = o.Omega.value_or(0.0);
    if (o.v_signal) r["v_signal"] = *o.v_signal;
    if (o.t_flight) r["t_flight"] = *o.t_flight;
    doc["ring"] = r;
  }
  if (o.sweep_parameter) {
    json s;
    s["parameter"] = *o.sweep_parameter;
    if (!o.sweep_values.empty()) s["values"] = o.sweep_values;
    if (!o.log_range.empty()) {
      if (o.log_range.size() != 3) throw ConfigError("--log-range expects start stop count");
      s["log_range"] = {{"start", o.log_range[0]}, {"stop", o.log_range[1]},
                        {"count", static_cast<long long>(o.log_range[2])}};
    }
    doc["sweep"] = s;
  }
  if (o.packet_center || o.packet_width || o.packet_k0) {
    json p;
    if (o.packet_center) p["center"] = *o.packet_center;
    if (o.packet_width) p["width"] = *o.packet_width;
    if (o.packet_k0) p["k0"] = *o.packet_k0;
    doc["packet"] = p;
  }
  if (o.potential) {
    json p;
    p["type"] = *o.potential;
    if (o.potential_omega) p["omega"] = *o.potential_omega;
    doc["potential"] = p;
  }
  if (!o.event_x.empty() || o.event_t) {
    doc["event"] = {{"x", vec3(o.event_x.empty() ? std::vector<double>{0.0} : o.event_x)}, {"t", o.event_t.value_or(0.0)}};
  }
  if (!o.tolerances.empty()) {
    json t = json::object();
    for (const auto& item : o.tolerances) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ConfigError("--tol expects name=value, got '" + item + "'");
      try {
        t[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
      } catch (const std::exception&) {
        throw ConfigError("--tol: bad number in '" + item + "'");
      }
    }
    doc["tolerances"] = t;
  }
  return doc;
}

std::string resolve_format(const OutputOptions& o)
{
  if (!o.format.empty()) return o.format;
  if (o.out.size() >= 4 && o.out.compare(o.out.size() - 4, 4, ".csv") == 0) return "csv";
  return "json";
}

int emit(const PhaseReport& report, const OutputOptions& o)
{
  const std::string text = resolve_format(o) == "csv" ? to_csv(report) : to_json(report);
  if (o.out.empty() || o.out == "-") {
    std::cout << text << std::flush;
    if (!std::cout) {
      std::cerr << "error: failed writing to stdout\n";
      return exit_usage;
    }
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot open '" << o.out << "' for writing\n";
      return exit_usage;
    }
    f << text;
    f.close();
    if (!f) {
      std::cerr << "error: failed writing '" << o.out << "'\n";
      return exit_usage;
    }
  }

  for (const auto& c : report.checks) {
    std::fprintf(stderr, "%s %-24s observed=%s tolerance=%s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                 detail::format_number(c.observed).c_str(), detail::format_number(c.tolerance).c_str());
  }
  for (const auto& w : report.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  return report.all_pass() ? exit_ok : exit_failed;
}

int run_config(const ScenarioConfig& cfg, const OutputOptions& o)
{
  return emit(run_scenario(cfg), o);
}

void add_output_options(CLI::App* app, OutputOptions& o)
{
  app->add_option("--out,-o", o.out, "Report path (default stdout)");
  app->add_option("--format,-f", o.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
}

void add_shorthand_options(CLI::App* app, ShorthandOptions& o)
{
  app->add_option("--n", o.n, "grid.n");
  app->add_option("--length", o.length, "grid.length");
  app->add_option("--mass,--masses", o.masses, "particle.masses");
  app->add_option("--hbar", o.hbar, "particle.hbar");
  app->add_option("--c", o.c, "particle.c");
  app->add_option("--v", o.v, "transform.v (vx or vx vy vz)")->expected(1, 3);
  app->add_option("--a", o.a, "transform.a (ax or ax ay az)")->expected(1, 3);
  app->add_option("--dt", o.dt, "evolution.dt");
  app->add_option("--steps", o.steps, "evolution.steps");
  app->add_flag("--rest-energy", o.rest_energy, "evolution.include_rest_energy");
  app->add_option("--R", o.R, "ring.R");
  app->add_option("--Omega", o.Omega, "ring.Omega");
  app->add_option("--v-signal", o.v_signal, "ring.v_signal");
  app->add_option("--t-flight", o.t_flight, "ring.t_flight");
  app->add_option("--sweep", o.sweep_parameter, "sweep.parameter");
  app->add_option("--values", o.sweep_values, "sweep.values");
  app->add_option("--log-range", o.log_range, "sweep.log_range: start stop count")->expected(3);
  app->add_option("--packet-center", o.packet_center, "packet.center");
  app->add_option("--packet-width", o.packet_width, "packet.width");
  app->add_option("--packet-k0", o.packet_k0, "packet.k0");
  app->add_option("--potential", o.potential, "potential.type");
  app->add_option("--potential-omega", o.potential_omega, "potential.omega");
  app->add_option("--event-x", o.event_x, "event.x (x or x y z)")->expected(1, 3);
  app->add_option("--event-t", o.event_t, "event.t");
  app->add_option("--tol", o.tolerances, "Tolerance override name=value (repeatable)");
  app->add_flag("--print-config", o.print_config, "Print the equivalent JSON config and exit");
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Projective boost-phase verification scenarios"};
  app.name("bargmann-lab");
  app.require_subcommand(0, 1);

  bool list = false;
  app.add_flag("--list-scenarios", list, "Print the scenario registry");

  OutputOptions run_out;
  std::string config_path;
  CLI::App* run = app.add_subcommand("run", "Run a scenario from a JSON config");
  run->add_option("config", config_path, "Config file")->required();
  add_output_options(run, run_out);

  struct Shorthand
  {
    std::string name;
    CLI::App* app;
    ShorthandOptions opts;
    OutputOptions out;
  };
  std::vector<Shorthand> shorthands;
  shorthands.reserve(scenario_registry().size());
  for (const auto& info : scenario_registry()) {
    shorthands.push_back({info.name, nullptr, {}, {}});
    Shorthand& s = shorthands.back();
    s.app        = app.add_subcommand(info.name, info.summary);
    add_shorthand_options(s.app, s.opts);
    add_output_options(s.app, s.out);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (list) {
      for (const auto& info : scenario_registry()) {
        std::printf("%-14s %s\n", info.name, info.summary);
      }
      return exit_ok;
    }

    if (*run) {
      std::ifstream in(config_path, std::ios::binary);
      if (!in) {
        std::cerr << "error: cannot read '" << config_path << "'\n";
        return exit_usage;
      }
      std::ostringstream text;
      text << in.rdbuf();
      return run_config(parse_config(text.str()), run_out);
    }

    for (auto& s : shorthands) {
      if (!*s.app) continue;
      const ScenarioConfig cfg = parse_config(shorthand_document(s.name, s.opts).dump());
      if (s.opts.print_config) {
        std::cout << serialize_config(cfg);
        return exit_ok;
      }
      return run_config(cfg, s.out);
    }

    std::cerr << app.help();
    return exit_usage;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
}
