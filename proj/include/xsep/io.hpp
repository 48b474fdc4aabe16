#pragma once

#include <json.hpp>

#include <optional>
#include <string>

#include "xsep/witness.hpp"
#include "xsep/xmatrix.hpp"

namespace xsep {
namespace io {

using nlohmann::json;

// A JSON number/string as an exact scalar.  Strings may be "p/q" or decimal;
// floating literals convert via their shortest round-trip decimal form, so
// "0.1" means 1/10 in exact mode.
template <class S>
S scalar_from_json(const json& j) {
  if (j.is_string()) return num::parse<S>(j.get<std::string>());
  if (j.is_number_integer()) return num::from_ratio<S>(j.get<long long>(), 1);
  if (j.is_number_float()) {
    if constexpr (num::is_exact_v<S>)
      return num::parse<S>(j.dump());
    else
      return j.get<double>();
  }
  throw IoError("expected a number or numeric string, got " + j.dump());
}

template <class S>
std::array<S, 4> quad_from_json(const json& j, const char* field) {
  if (!j.is_array() || j.size() != 4)
    throw IoError(std::string("field '") + field + "' must be an array of 4 numbers");
  std::array<S, 4> out;
  for (int i = 0; i < 4; ++i) out[i] = scalar_from_json<S>(j[i]);
  return out;
}

// X-matrix text format:
//   {"a": [4], "b": [4], "z": [[re, im] x 4], "scale": "p/q"?}
// GHZ-diagonal shorthand: {"a": [4], "c": [4], "scale"?}.
template <class S>
XMat<S> xmatrix_from_json(const json& j) {
  if (!j.is_object()) throw IoError("state file must contain a JSON object");
  XMat<S> m;
  if (j.contains("c")) {
    GhzDiagonal<S> g;
    g.a = quad_from_json<S>(j.at("a"), "a");
    g.c = quad_from_json<S>(j.at("c"), "c");
    m = g.to_xmat();
  } else {
    m.a = quad_from_json<S>(j.at("a"), "a");
    m.b = j.contains("b") ? quad_from_json<S>(j.at("b"), "b") : m.a;
    if (j.contains("z")) {
      const json& z = j.at("z");
      if (!z.is_array() || z.size() != 4) throw IoError("field 'z' must be an array of 4 entries");
      for (int i = 0; i < 4; ++i) {
        const json& zi = z[i];
        if (zi.is_array() && zi.size() == 2) {
          m.z[i] = Cx<S>(scalar_from_json<S>(zi[0]), scalar_from_json<S>(zi[1]));
        } else if (zi.is_number() || zi.is_string()) {
          m.z[i] = Cx<S>(scalar_from_json<S>(zi));
        } else {
          throw IoError("each 'z' entry must be [re, im] or a real number");
        }
      }
    }
  }
  if (j.contains("scale")) {
    S scale = scalar_from_json<S>(j.at("scale"));
    m = scale * m;
  }
  return m;
}

inline json scalar_to_json(const Rational& x) { return num::str_of(x); }
inline json scalar_to_json(double x) { return x; }

template <class S>
json xmatrix_to_json(const XMat<S>& m) {
  json j;
  for (int i = 0; i < 4; ++i) {
    j["a"].push_back(scalar_to_json(m.a[i]));
    j["b"].push_back(scalar_to_json(m.b[i]));
    j["z"].push_back(json::array({scalar_to_json(m.z[i].re), scalar_to_json(m.z[i].im)}));
  }
  return j;
}

template <class S>
json witness_to_json(const Witness<S>& w) {
  json j = xmatrix_to_json(w.body);
  if (w.dual) j["dual_tag"] = w.dual->name();
  return j;
}

// True when every numeric token in the state object is integral or a string
// (so exact-mode parsing loses nothing).
inline bool all_entries_exact(const json& j) {
  if (j.is_number_float()) return false;
  if (j.is_array() || j.is_object()) {
    for (const auto& el : j) {
      if (!all_entries_exact(el)) return false;
    }
  }
  return true;
}

}  // namespace io
}  // namespace xsep
