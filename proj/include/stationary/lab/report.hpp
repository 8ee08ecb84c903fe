#pragma once

// Scenario reports and a JSON writer with fixed 17-significant-digit floats.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace stationary::lab {

using json = nlohmann::ordered_json;

inline std::string format_double(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline void write_json(std::ostream& os, const json& j, int indent, int depth) {
  auto newline = [&](int d) {
    if (indent < 0) return;
    os << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) os << ',';
        first = false;
        newline(depth + 1);
        os << json(k).dump() << (indent < 0 ? ":" : ": ");
        write_json(os, v, indent, depth + 1);
      }
      newline(depth);
      os << '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << ',';
        first = false;
        newline(depth + 1);
        write_json(os, v, indent, depth + 1);
      }
      newline(depth);
      os << ']';
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (std::isfinite(v))
        os << format_double(v);
      else
        os << "null";
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace detail

/// Serializes `j`; floats use %.17g and non-finite floats become null.
inline void write_json(std::ostream& os, const json& j, int indent = 2) {
  detail::write_json(os, j, indent, 0);
  os << '\n';
}

inline std::string to_json_text(const json& j, int indent = 2) {
  std::ostringstream os;
  write_json(os, j, indent);
  return os.str();
}

struct Check {
  std::string id;
  std::string anchor;  // the claim this check reproduces, or "plumbing"
  json measured;
  std::string threshold;
  bool pass = false;
  bool informational = false;  // reported, never fails the scenario
};

struct Report {
  std::string scenario;
  std::vector<Check> checks;
  json environment = json::object();
  json tables = json::object();

  bool passed() const {
    for (const auto& c : checks)
      if (!c.informational && !c.pass) return false;
    return true;
  }

  Check& add(std::string id, std::string anchor, json measured, std::string threshold, bool pass) {
    checks.push_back({std::move(id), std::move(anchor), std::move(measured), std::move(threshold), pass, false});
    return checks.back();
  }

  Check& note(std::string id, std::string anchor, json measured) {
    checks.push_back({std::move(id), std::move(anchor), std::move(measured), "informational", true, true});
    return checks.back();
  }

  json to_json() const {
    json j;
    j["scenario"] = scenario;
    j["passed"] = passed();
    json cs = json::array();
    for (const auto& c : checks) {
      json r;
      r["id"] = c.id;
      r["anchor"] = c.anchor;
      r["measured"] = c.measured;
      r["threshold"] = c.threshold;
      r["pass"] = c.pass;
      if (c.informational) r["informational"] = true;
      cs.push_back(std::move(r));
    }
    j["checks"] = std::move(cs);
    j["environment"] = environment;
    if (!tables.empty()) j["tables"] = tables;
    return j;
  }
};

}  // namespace stationary::lab
