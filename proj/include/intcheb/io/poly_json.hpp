#pragma once

#include <json.hpp>

#include <cmath>
#include <string>
#include <vector>

#include "intcheb/core/polynomial.hpp"

namespace intcheb {

using Json = nlohmann::ordered_json;

/// One coefficient: a decimal string ("12", "-3/4", "0.5") or a JSON number
/// that is an integer.
inline Rational coefficient_from_json(const Json& v) {
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const PreconditionError& e) {
      throw PreconditionError("malformed_polynomial", std::string("bad coefficient: ") + e.what());
    }
  }
  if (v.is_number_integer()) return Rational(Integer(v.dump(), 10));
  if (v.is_number_float()) {
    double d = v.get<double>();
    if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 9e15) return Rational(static_cast<long>(d));
  }
  throw PreconditionError("malformed_polynomial", "coefficient must be a decimal string or an integer: " + v.dump());
}

/// Polynomial interchange format: JSON array of coefficients, low-to-high.
inline RatPoly rat_poly_from_json(const Json& j) {
  if (!j.is_array()) throw PreconditionError("malformed_polynomial", "polynomial must be a JSON array");
  std::vector<Rational> c;
  for (const auto& v : j) c.push_back(coefficient_from_json(v));
  return RatPoly(std::move(c));
}

inline IntPoly int_poly_from_json(const Json& j) {
  RatPoly r = rat_poly_from_json(j);
  std::vector<Integer> c;
  for (const auto& q : r.coeffs()) {
    if (q.get_den() != 1) throw PreconditionError("non_integer_coefficient", "integer coefficients required");
    c.emplace_back(q.get_num());
  }
  return IntPoly(std::move(c));
}

inline Json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw PreconditionError("malformed_json", what + ": " + e.what());
  }
}

inline RatPoly rat_poly_from_text(const std::string& text) { return rat_poly_from_json(parse_json_text(text, "polynomial")); }
inline IntPoly int_poly_from_text(const std::string& text) { return int_poly_from_json(parse_json_text(text, "polynomial")); }

template <class T>
Json poly_to_json(const Polynomial<T>& p) {
  Json a = Json::array();
  for (const auto& c : p.coeffs()) a.push_back(to_string(c));
  return a;
}

}  // namespace intcheb
