#pragma once

// JSON encoding of the library types. Requires nlohmann/json on the include
// path; nothing else in the library does.

#include <json.hpp>

#include <optional>
#include <string>

#include "polyode/criteria.hpp"
#include "polyode/equation.hpp"
#include "polyode/errors.hpp"
#include "polyode/rational.hpp"
#include "polyode/solve.hpp"
#include "polyode/upoly.hpp"

namespace polyode::io {

using json = nlohmann::json;

/// Accepts "p/q", "p" or a JSON integer. Floats are refused: they would
/// silently carry binary rounding into exact computations.
inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational::parse(j.dump());
  throw ParseError("expected a rational string or integer, got " + j.dump());
}

inline json to_json(const Rational& r) { return r.to_string(); }

/// Ascending coefficients as rational strings.
inline json to_json(const RPoly& p) {
  json out = json::array();
  for (const auto& c : p.coefficients()) out.push_back(c.to_string());
  return out;
}

inline RPoly poly_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of coefficients");
  std::vector<Rational> c;
  for (const auto& e : j) c.push_back(rational_from_json(e));
  return RPoly(std::move(c));
}

/// A scalar is a rational, or {"<unknown>": [c0, c1]} for c0 + c1 t.
inline Scalar<Rational> scalar_from_json(const json& j, const std::optional<std::string>& unknown) {
  if (!j.is_object()) return Scalar<Rational>(rational_from_json(j));
  if (!unknown)
    throw ParseError("parameterized coefficient " + j.dump() + " but no unknown declared");
  if (j.size() != 1 || !j.contains(*unknown))
    throw ParseError("coefficient " + j.dump() + " must be an object with the single key '" +
                     *unknown + "'");
  const json& pair = j.at(*unknown);
  if (!pair.is_array() || pair.size() != 2)
    throw ParseError("expected [c0, c1] for the unknown '" + *unknown + "'");
  return affine(rational_from_json(pair[0]), rational_from_json(pair[1]));
}

inline json scalar_to_json(const Scalar<Rational>& s, const std::string& unknown) {
  if (s.degree() <= 0) return s.is_zero() ? json("0") : json(s[0].to_string());
  return json{{unknown, json::array({s[0].to_string(), s[1].to_string()})}};
}

struct ParsedEquation {
  EquationSpec eq;
  std::optional<std::string> unknown;
};

/// Reads {"a3": [4], "a2": [3], "tau": [2], "unknown": name}. A name given
/// by the caller overrides the one in the document.
inline ParsedEquation equation_from_json(const json& j,
                                         std::optional<std::string> unknown = std::nullopt) {
  if (!j.is_object()) throw ParseError("equation must be a JSON object");
  if (!unknown && j.contains("unknown")) {
    if (!j["unknown"].is_string()) throw ParseError("\"unknown\" must be a string");
    unknown = j["unknown"].get<std::string>();
  }
  auto read = [&](const char* key, std::size_t count) {
    if (!j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
    const json& arr = j.at(key);
    if (!arr.is_array() || arr.size() != count)
      throw ParseError(std::string("field \"") + key + "\" needs " + std::to_string(count) +
                       " entries");
    std::vector<Scalar<Rational>> out;
    for (const auto& e : arr) out.push_back(scalar_from_json(e, unknown));
    return out;
  };
  auto a3 = read("a3", 4);
  auto a2 = read("a2", 3);
  auto tau = read("tau", 2);
  EquationSpec eq({a3[0], a3[1], a3[2], a3[3]}, {a2[0], a2[1], a2[2]}, {tau[0], tau[1]});
  return {std::move(eq), unknown};
}

inline json to_json(const EquationSpec& eq, const std::string& unknown = "t") {
  json j;
  for (const auto& s : eq.a3()) j["a3"].push_back(scalar_to_json(s, unknown));
  for (const auto& s : eq.a2()) j["a2"].push_back(scalar_to_json(s, unknown));
  for (const auto& s : eq.tau()) j["tau"].push_back(scalar_to_json(s, unknown));
  if (!eq.is_numeric()) j["unknown"] = unknown;
  return j;
}

inline json to_json(const PolySolution& s) {
  json c = json::array();
  for (const auto& v : s.coefficients) c.push_back(v.to_string());
  return {{"coefficients", c},
          {"degree", s.reported_degree},
          {"residual_is_zero", s.residual_is_zero},
          {"polynomial", to_string(s.polynomial())}};
}

inline PolySolution solution_from_json(const json& j) {
  PolySolution s;
  for (const auto& c : j.at("coefficients")) s.coefficients.push_back(rational_from_json(c));
  s.reported_degree = j.at("degree").get<int>();
  s.residual_is_zero = j.at("residual_is_zero").get<bool>();
  return s;
}

inline json to_json(const RootReport& r) {
  json intervals = json::array();
  for (const auto& iv : r.isolating_intervals)
    intervals.push_back(json::array({iv.lo.to_string(), iv.hi.to_string()}));
  json exact = json::array();
  for (const auto& e : r.exact_rational_roots) exact.push_back(e.to_string());
  return {{"intervals", intervals},
          {"roots", r.refined},
          {"exact", exact},
          {"nonreal_count", r.nonreal_count}};
}

}  // namespace polyode::io
