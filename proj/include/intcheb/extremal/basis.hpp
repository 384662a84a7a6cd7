#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "intcheb/core/interval.hpp"
#include "intcheb/core/sturm.hpp"
#include "intcheb/io/poly_json.hpp"

namespace intcheb {

/// Nonconstant primitive integer factors, pairwise non-associate.
struct FactorBasis {
  std::vector<IntPoly> factors;
  std::vector<bool> roots_in_interval;  // all roots real and in the target interval

  std::size_t size() const { return factors.size(); }
};

inline FactorBasis make_basis(std::vector<IntPoly> factors, const std::optional<Interval>& I = std::nullopt) {
  if (factors.empty()) throw PreconditionError("empty_basis", "factor basis must not be empty");
  FactorBasis B;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const IntPoly& f = factors[i];
    if (f.degree() < 1)
      throw PreconditionError("constant_factor", "basis factor " + std::to_string(i) + " is constant");
    if (content(f) != 1)
      throw PreconditionError("non_primitive_factor", "basis factor " + std::to_string(i) + " has content != 1");
    for (std::size_t j = 0; j < i; ++j)
      if (primitive_part(factors[j]) == primitive_part(f))
        throw PreconditionError("associate_factors",
                                "basis factors " + std::to_string(j) + " and " + std::to_string(i) + " are associates");
    bool inside = false;
    if (I) {
      inside = true;
      for (const auto& [g, mult] : squarefree_decomposition(f))
        if (count_real_roots(g, I->a(), I->b()) != g.degree()) inside = false;
    }
    B.roots_in_interval.push_back(inside);
  }
  B.factors = std::move(factors);
  return B;
}

inline FactorBasis basis_from_json(const Json& j, const std::optional<Interval>& I = std::nullopt) {
  if (!j.is_array()) throw PreconditionError("malformed_basis", "basis must be a JSON list of polynomials");
  std::vector<IntPoly> f;
  for (const auto& p : j) f.push_back(int_poly_from_json(p));
  return make_basis(std::move(f), I);
}

inline FactorBasis load_basis(const std::string& path, const std::optional<Interval>& I = std::nullopt) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("file_not_found", "cannot open basis file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return basis_from_json(parse_json_text(ss.str(), "basis file " + path), I);
}

/// Shipped basis for [0,1] (also in data/default_basis_01.json).
inline FactorBasis default_basis_01() {
  static const char* kText = R"([["0","1"],["1","-1"],["-1","2"],["1","-5","5"],["1","-6","6"],
    ["1","-6","19","-26","13"],["1","-11","40","-58","29"],["1","-13","44","-62","31"]])";
  return basis_from_json(Json::parse(kText), Interval(0, 1));
}

}  // namespace intcheb
