#pragma once

#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "intcheb/extremal/bounds.hpp"
#include "intcheb/extremal/exhaustive.hpp"
#include "intcheb/extremal/factor_optimizer.hpp"
#include "intcheb/io/poly_json.hpp"
#include "intcheb/numeric/roots.hpp"
#include "intcheb/numeric/zero_stats.hpp"
#include "intcheb/schur/checks.hpp"

namespace intcheb {

// Enclosures serialize as {value, lower, upper} decimal strings (lower and
// upper rounded outward). Table rows stay flat so that CSV and JSON carry the
// same cells.

inline Json sup_norm_json(const SupNormResult& r) {
  Enclosure e = r.enclosure();
  return {{"kind", "sup_norm"},
          {"value", e.value_double()},
          {"enclosure", enclosure_json(e)},
          {"exact", {{"lower", to_string(r.lower)}, {"upper", to_string(r.upper)}}},
          {"argmax", to_string(r.argmax)}};
}

inline Json root_row_json(const Root& r) {
  return {{"re", r.center.re.str(20)},
          {"im", r.center.im.str(20)},
          {"radius", r.radius.str(6, MPFR_RNDU)},
          {"multiplicity", r.multiplicity},
          {"real", r.certified_real},
          {"unit_circle", r.on_unit_circle},
          {"modulus", r.modulus().value_str()}};
}

inline Json roots_json(const RootSet& rs) {
  Json rows = Json::array();
  for (const auto& r : rs.roots) rows.push_back(root_row_json(r));
  return {{"degree", rs.degree}, {"precision_bits", rs.precision}, {"rows", rows}};
}

inline Json zero_stats_json(const ZeroStats& z) {
  Json means = Json::array();
  for (std::size_t i = 0; i < z.powersum_means.size(); ++i)
    means.push_back({{"m", i + 1},
                     {"exact", to_string(z.exact_powersum_means[i])},
                     {"from_roots", enclosure_json(z.powersum_means[i])}});
  Json j = {{"n", z.n},
            {"mean", enclosure_json(z.mean)},
            {"powersum_means", means},
            {"consistent", z.consistent},
            {"max_modulus", enclosure_json(z.max_modulus)}};
  j["log_energy"] = z.log_energy ? enclosure_json(*z.log_energy) : Json(nullptr);
  return j;
}

inline Json check_row_json(const CheckRow& r) {
  return {{"n", r.n},
          {"quantity", r.quantity},
          {"lhs", r.lhs.value_str()},
          {"rhs", r.rhs.value_str()},
          {"margin", r.margin.value_str()},
          {"verdict", to_string(r.verdict)},
          {"lhs_lower", r.lhs.lower_str()},
          {"lhs_upper", r.lhs.upper_str()},
          {"rhs_lower", r.rhs.lower_str()},
          {"rhs_upper", r.rhs.upper_str()},
          {"margin_lower", r.margin.lower_str()},
          {"margin_upper", r.margin.upper_str()}};
}

inline Json check_json(const CheckResult& c) {
  Json rows = Json::array();
  for (const auto& r : c.rows) rows.push_back(check_row_json(r));
  Json j = {{"id", c.id}, {"verdict", c.verdict()}};
  if (auto v = c.first_violation())
    j["first_violation"] = {{"n", c.rows[*v].n}, {"quantity", c.rows[*v].quantity}};
  else
    j["first_violation"] = nullptr;
  j["notes"] = c.notes;
  j["rows"] = rows;
  return j;
}

inline Json trace_json(const TraceTable& t) {
  Json j = check_json(t.check);
  Json trends = Json::array();
  for (const auto& s : t.trends) {
    Json values = Json::array();
    for (const auto& [n, v] : s.values) values.push_back({{"n", n}, {"ratio", to_string(v)}, {"approx", v.get_d()}});
    Json e = {{"m", s.m}, {"increasing", s.increasing}};
    e["limit"] = s.limit ? Json(to_string(*s.limit)) : Json(nullptr);
    e["final_gap"] = s.limit ? Json(s.final_gap) : Json(nullptr);
    e["values"] = values;
    trends.push_back(e);
  }
  // Keep rows last so the summary block reads first.
  Json rows = j["rows"];
  j.erase("rows");
  j["trends"] = trends;
  j["rows"] = rows;
  return j;
}

/// Survivor counts are left out: pruning depends on how the leading
/// coefficients are split among workers.
inline Json exhaustive_json(const ExhaustiveResult& r) {
  Json j = to_json(r.report);
  j["truncated"] = r.truncated;
  j["completed_degree"] = r.completed_degree;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Enclosure e = row.norm.enclosure();
    rows.push_back({{"n", row.n},
                    {"polynomial", poly_to_json(row.best)},
                    {"display", to_string(row.best)},
                    {"norm", e.value_str()},
                    {"norm_lower", to_string(row.norm.lower)},
                    {"norm_upper", to_string(row.norm.upper)},
                    {"root_norm", row.root_norm.value_str()},
                    {"root_norm_lower", row.root_norm.lower_str()},
                    {"root_norm_upper", row.root_norm.upper_str()},
                    {"candidates", row.candidates}});
  }
  j["rows"] = rows;
  return j;
}

inline Json optimizer_json(const OptimizerResult& r) {
  Json j = to_json(r.report);
  j["realized_bound"] = enclosure_json(r.realized_bound);
  return j;
}

inline Json trigub_row_json(const TrigubReport& t) {
  return {{"m", t.m},
          {"interval", t.interval.str()},
          {"lower", to_string(t.lower)},
          {"upper", t.upper.value_str()},
          {"ratio", t.ratio.value_str()},
          {"ratio_lower", t.ratio.lower_str()},
          {"ratio_upper", t.ratio.upper_str()}};
}

// ---- CSV ----

/// RFC 4180 quoting: fields with a comma, quote, CR or LF are quoted and
/// inner quotes doubled.
inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

/// Strings print raw; other scalars and arrays print as JSON text.
inline std::string csv_cell(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

/// Objects become dotted keys; arrays and scalars are leaves.
inline void flatten(const Json& v, const std::string& prefix, Json& out) {
  if (v.is_object() && !v.empty()) {
    for (const auto& [k, x] : v.items()) flatten(x, prefix.empty() ? k : prefix + "." + k, out);
  } else {
    out[prefix] = v;
  }
}

/// A "rows" array becomes the table (with the rest of the document as a
/// `# summary:` line); otherwise the document is one flattened row. The first
/// line always carries the manifest.
inline void write_csv(const Json& doc, std::ostream& os) {
  if (doc.contains("manifest")) os << "# manifest: " << doc["manifest"].dump() << "\n";
  Json body = doc;
  body.erase("manifest");
  std::vector<Json> rows;
  if (body.contains("rows") && body["rows"].is_array()) {
    for (const auto& r : body["rows"]) {
      Json flat = Json::object();
      flatten(r, "", flat);
      rows.push_back(flat);
    }
    body.erase("rows");
    if (!body.empty()) os << "# summary: " << body.dump() << "\n";
  } else {
    Json flat = Json::object();
    flatten(body, "", flat);
    rows.push_back(flat);
  }
  std::vector<std::string> header;
  std::set<std::string> seen;
  for (const auto& r : rows)
    for (const auto& [k, _] : r.items())
      if (seen.insert(k).second) header.push_back(k);
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << csv_escape(header[i]);
  os << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) os << ",";
      if (r.contains(header[i])) os << csv_escape(csv_cell(r[header[i]]));
    }
    os << "\n";
  }
}

}  // namespace intcheb
