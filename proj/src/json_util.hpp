#pragma once

// Canonical JSON text shared by the scene, pipeline and service code.

#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

namespace odl::detail {

using json = nlohmann::json;

inline std::string format_fixed(double v) {
  if (!std::isfinite(v)) v = 0.0;
  double q = std::round(v * 1000.0) / 1000.0;
  if (q == 0.0) q = 0.0;  // drop negative zero
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", q);
  return buf;
}

/// Compact dump with keys sorted (nlohmann objects are ordered maps) and every
/// floating-point number written with three decimals.
inline void dump_canonical(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += json(it.key()).dump();
        out += ':';
        dump_canonical(it.value(), out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        dump_canonical(j[i], out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float: out += format_fixed(j.get<double>()); break;
    default: out += j.dump(); break;
  }
}

inline std::string dump_canonical(const json& j) {
  std::string out;
  dump_canonical(j, out);
  return out;
}

}  // namespace odl::detail
