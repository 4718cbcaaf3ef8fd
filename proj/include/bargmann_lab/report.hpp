#pragma once

// Scenario results and their deterministic CSV / JSON serialization.
// Numbers are written with 17 significant digits ("%.17g"); non-finite values become
// null in JSON and nan/inf in CSV. JSON object keys are emitted in sorted order.

#include "bargmann_lab/fit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace bargmann_lab {

struct Check
{
  enum class Kind { at_most, at_least, within };

  std::string name;
  Kind kind        = Kind::at_most;
  double observed  = 0.0;
  double tolerance = 0.0;
  double target    = 0.0;  ///< used by Kind::within
  bool pass        = false;

  static Check at_most(std::string name, double observed, double tol)
  {
    return {std::move(name), Kind::at_most, observed, tol, 0.0, observed <= tol};
  }
  static Check at_least(std::string name, double observed, double tol)
  {
    return {std::move(name), Kind::at_least, observed, tol, 0.0, observed >= tol};
  }
  static Check within(std::string name, double observed, double target, double tol)
  {
    return {std::move(name), Kind::within, observed, tol, target, std::abs(observed - target) <= tol};
  }
};

inline const char* to_string(Check::Kind k)
{
  switch (k) {
    case Check::Kind::at_most: return "at_most";
    case Check::Kind::at_least: return "at_least";
    case Check::Kind::within: return "within";
  }
  return "?";
}

struct SweepTable
{
  std::string parameter;             ///< swept parameter name; empty when no sweep ran
  std::vector<std::string> metrics;  ///< column names after "param"
  std::vector<std::vector<double>> rows;  ///< rows[i][0] is the parameter value

  void add_row(double param, std::vector<double> values)
  {
    values.insert(values.begin(), param);
    rows.push_back(std::move(values));
  }

  void sort_rows()
  {
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  }
};

struct PhaseReport
{
  std::string scenario;
  std::map<std::string, double> scalars;
  std::map<std::string, LogLogFit> fits;
  std::vector<Check> checks;
  SweepTable sweep;
  std::vector<std::string> warnings;

  bool all_pass() const
  {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }

  void add(Check c) { checks.push_back(std::move(c)); }
};

namespace detail {

inline std::string format_number(double x)
{
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);
  return buf;
}

inline std::string json_number(double x) { return std::isfinite(x) ? format_number(x) : "null"; }

inline std::string json_string(const std::string& s)
{
  std::string out = "\"";
  for (const char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(static_cast<unsigned char>(ch)));
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out + "\"";
}

}  // namespace detail

/// Header `param,<metric...>` and one row per sweep point, ascending in param.
inline std::string to_csv(const PhaseReport& r)
{
  SweepTable table = r.sweep;
  table.sort_rows();
  std::ostringstream os;
  os << "param";
  for (const auto& m : table.metrics) os << ',' << m;
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << detail::format_number(row[i]);
    os << '\n';
  }
  return os.str();
}

inline std::string to_json(const PhaseReport& r)
{
  using detail::json_number;
  using detail::json_string;
  SweepTable table = r.sweep;
  table.sort_rows();

  std::ostringstream os;
  os << "{\n";

  os << "  \"checks\": [";
  for (std::size_t i = 0; i < r.checks.size(); ++i) {
    const Check& c = r.checks[i];
    os << (i ? ",\n" : "\n") << "    {\"kind\": " << json_string(to_string(c.kind)) << ", \"name\": " << json_string(c.name)
       << ", \"observed\": " << json_number(c.observed) << ", \"pass\": " << (c.pass ? "true" : "false");
    if (c.kind == Check::Kind::within) os << ", \"target\": " << json_number(c.target);
    os << ", \"tolerance\": " << json_number(c.tolerance) << "}";
  }
  os << (r.checks.empty() ? "],\n" : "\n  ],\n");

  os << "  \"fits\": {";
  bool first = true;
  for (const auto& [name, fit] : r.fits) {
    os << (first ? "\n" : ",\n") << "    " << json_string(name) << ": {\"intercept\": " << json_number(fit.intercept)
       << ", \"residual\": " << json_number(fit.residual) << ", \"slope\": " << json_number(fit.slope) << "}";
    first = false;
  }
  os << (r.fits.empty() ? "},\n" : "\n  },\n");

  os << "  \"pass\": " << (r.all_pass() ? "true" : "false") << ",\n";

  os << "  \"scalars\": {";
  first = true;
  for (const auto& [name, value] : r.scalars) {
    os << (first ? "\n" : ",\n") << "    " << json_string(name) << ": " << json_number(value);
    first = false;
  }
  os << (r.scalars.empty() ? "},\n" : "\n  },\n");

  os << "  \"scenario\": " << json_string(r.scenario) << ",\n";

  os << "  \"sweep\": {\"metrics\": [";
  for (std::size_t i = 0; i < table.metrics.size(); ++i) os << (i ? ", " : "") << json_string(table.metrics[i]);
  os << "], \"parameter\": " << json_string(table.parameter) << ", \"rows\": [";
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    os << (i ? ", " : "") << "[";
    for (std::size_t j = 0; j < table.rows[i].size(); ++j) os << (j ? ", " : "") << json_number(table.rows[i][j]);
    os << "]";
  }
  os << "]},\n";

  os << "  \"warnings\": [";
  for (std::size_t i = 0; i < r.warnings.size(); ++i) os << (i ? ", " : "") << json_string(r.warnings[i]);
  os << "]\n}\n";
  return os.str();
}

}  // namespace bargmann_lab
