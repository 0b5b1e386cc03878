#pragma once

// Variety records, the builtin catalog, file ingestion and report rendering.
//
// Schemas:
//   genus-forge/variety/v1  {"schema", "name", "dim", one or more of
//                            "hodge" | "chi" | "invariants", "provenance"?}
//   genus-forge/bundle/v1   {"schema", "fiber", "base", "total"}; each part is
//                            a variety object (schema optional) or a spec
//                            string such as "curve:2" or "bd:2,2"
//   genus-forge/report/v1   {"schema", "kind", ...}
//   genus-forge/verdict/v1  {"schema", "kind": "verdict", "verdicts", "all_proved"}
//
// Integers are written as JSON numbers when they fit in 64 bits and as
// decimal strings otherwise; both forms are accepted on input.

#include <json.hpp>

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "genus_forge/bundle_analysis.hpp"
#include "genus_forge/closed_forms.hpp"
#include "genus_forge/errors.hpp"
#include "genus_forge/hodge_core.hpp"
#include "genus_forge/symbolic_verify.hpp"

namespace genus_forge {

using json = nlohmann::ordered_json;

inline constexpr std::string_view variety_schema = "genus-forge/variety/v1";
inline constexpr std::string_view bundle_schema = "genus-forge/bundle/v1";
inline constexpr std::string_view report_schema = "genus-forge/report/v1";
inline constexpr std::string_view verdict_schema = "genus-forge/verdict/v1";

inline json integer_to_json(const Integer& v) {
  if (v.fits_slong_p()) return json(v.get_si());
  return json(v.get_str());
}

inline Integer integer_from_json(const json& j, const std::string& where) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<unsigned long long>()));
    return Integer(std::to_string(j.get<long long>()));
  }
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() > start && std::all_of(s.begin() + static_cast<long>(start), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
      return Integer(s);
  }
  throw parse_error(where + ": expected an integer, got " + j.dump());
}

inline json integers_to_json(std::span<const Integer> values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(integer_to_json(v));
  return out;
}

inline std::vector<Integer> integers_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw parse_error(where + ": expected an array");
  std::vector<Integer> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(integer_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

enum class VarietySource { diamond, chi_vector, invariants };

inline std::string to_string(VarietySource s) {
  switch (s) {
    case VarietySource::diamond:
      return "diamond";
    case VarietySource::chi_vector:
      return "chi-vector";
    case VarietySource::invariants:
      return "invariants";
  }
  return "?";
}

struct VarietyRecord {
  std::string name;
  int dim = 0;
  VarietySource source = VarietySource::chi_vector;
  ChiVector chi;
  std::optional<HodgeDiamond> diamond;
  std::optional<ClosedFormInput> closed_form;
  std::string provenance;

  friend bool operator==(const VarietyRecord& a, const VarietyRecord& b) {
    return a.name == b.name && a.dim == b.dim && a.source == b.source && a.chi == b.chi &&
           a.diamond.has_value() == b.diamond.has_value() &&
           (!a.diamond || a.diamond->table() == b.diamond->table()) && a.provenance == b.provenance;
  }
};

inline json invariants_to_json(const ClosedFormInput& in) {
  json j = json::object();
  if (in.todd) j["todd"] = integer_to_json(*in.todd);
  if (in.euler) j["euler"] = integer_to_json(*in.euler);
  if (in.signature) j["signature"] = integer_to_json(*in.signature);
  if (!in.low_chi.empty()) j["low_chi"] = integers_to_json(in.low_chi);
  return j;
}

inline ClosedFormInput invariants_from_json(const json& j, int dim) {
  if (!j.is_object()) throw parse_error("invariants: expected an object");
  ClosedFormInput in;
  in.dim = dim;
  if (j.contains("todd")) in.todd = integer_from_json(j["todd"], "invariants.todd");
  if (j.contains("euler")) in.euler = integer_from_json(j["euler"], "invariants.euler");
  if (j.contains("signature")) in.signature = integer_from_json(j["signature"], "invariants.signature");
  if (j.contains("low_chi")) in.low_chi = integers_from_json(j["low_chi"], "invariants.low_chi");
  return in;
}

// Builds a record from a parsed variety object. The schema field is
// required when `require_schema` is set (top-level files) and optional for
// parts embedded in a bundle document.
inline VarietyRecord variety_from_json(const json& j, Strictness mode = Strictness::strict, bool require_schema = true) {
  if (!j.is_object()) throw parse_error("variety: expected a JSON object");
  if (j.contains("schema")) {
    if (!j["schema"].is_string() || j["schema"].get<std::string>() != variety_schema)
      throw parse_error("variety: schema mismatch, expected " + std::string(variety_schema) + ", got " + j["schema"].dump());
  } else if (require_schema) {
    throw parse_error("variety: missing schema field");
  }
  VarietyRecord r;
  r.name = j.value("name", std::string());
  if (!j.contains("dim") || !j["dim"].is_number_integer()) throw parse_error("variety: missing integer field dim");
  r.dim = j["dim"].get<int>();
  if (r.dim < 0) throw validation_error("variety " + r.name + ": negative dimension");
  r.provenance = j.value("provenance", std::string());

  std::optional<ChiVector> from_diamond;
  std::optional<ChiVector> given;
  if (j.contains("hodge")) {
    std::vector<std::vector<Integer>> table;
    const json& h = j["hodge"];
    if (!h.is_array()) throw parse_error("hodge: expected an array of rows");
    for (std::size_t p = 0; p < h.size(); ++p) table.push_back(integers_from_json(h[p], "hodge[" + std::to_string(p) + "]"));
    HodgeDiamond d(std::move(table));
    if (d.dim() != r.dim)
      throw validation_error("variety " + r.name + ": hodge diamond has dimension " + std::to_string(d.dim()) +
                             ", record says " + std::to_string(r.dim));
    from_diamond = chi_from_diamond(d);
    r.diamond = std::move(d);
  }
  if (j.contains("chi")) given = ChiVector(integers_from_json(j["chi"], "chi"), r.dim, mode);
  if (j.contains("invariants")) r.closed_form = invariants_from_json(j["invariants"], r.dim);

  if (from_diamond && given && !(*from_diamond == *given))
    throw validation_error("variety " + r.name + ": chi does not match the hodge diamond");
  if (from_diamond) {
    r.source = VarietySource::diamond;
    r.chi = *from_diamond;
  } else if (given) {
    r.source = VarietySource::chi_vector;
    r.chi = *given;
  } else if (r.closed_form) {
    r.source = VarietySource::invariants;
    r.chi = complete_chi_vector(*r.closed_form);
  } else {
    throw parse_error("variety " + r.name + ": needs one of hodge, chi, invariants");
  }
  if (r.closed_form && r.source != VarietySource::invariants) check_consistency(r.chi, *r.closed_form);
  return r;
}

inline VarietyRecord load_variety(std::string_view bytes, Strictness mode = Strictness::strict) {
  json j;
  try {
    j = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("variety: invalid JSON: ") + e.what());
  }
  return variety_from_json(j, mode);
}

// Inverse of load_variety: writes the payload the record was built from.
inline json variety_to_json(const VarietyRecord& r) {
  json j;
  j["schema"] = variety_schema;
  j["name"] = r.name;
  j["dim"] = r.dim;
  switch (r.source) {
    case VarietySource::diamond: {
      json rows = json::array();
      for (const auto& row : r.diamond->table()) rows.push_back(integers_to_json(row));
      j["hodge"] = rows;
      break;
    }
    case VarietySource::chi_vector:
      j["chi"] = integers_to_json(r.chi.entries());
      break;
    case VarietySource::invariants:
      break;
  }
  if (r.closed_form) j["invariants"] = invariants_to_json(*r.closed_form);
  if (!r.provenance.empty()) j["provenance"] = r.provenance;
  return j;
}

////////////////////////////////////////////////////////////////////////////
// Builtin varieties
////////////////////////////////////////////////////////////////////////////

inline VarietyRecord record_from_chi(std::string name, ChiVector chi, std::string provenance) {
  VarietyRecord r;
  r.name = std::move(name);
  r.dim = chi.dim();
  r.source = VarietySource::chi_vector;
  r.chi = std::move(chi);
  r.provenance = std::move(provenance);
  return r;
}

inline VarietyRecord builtin_curve(long genus) {
  if (genus < 0) throw validation_error("curve genus must be nonnegative, got " + std::to_string(genus));
  return record_from_chi("curve_g" + std::to_string(genus), curve_chi(Integer(genus)), "builtin: chi_y = (1-g)(1-y)");
}

// chi_y(P^n) = sum_p (-y)^p.
inline VarietyRecord builtin_projective_space(int n) {
  if (n < 0) throw validation_error("projective space dimension must be nonnegative, got " + std::to_string(n));
  std::vector<Integer> c;
  for (int p = 0; p <= n; ++p) c.emplace_back(sign_pow(p));
  return record_from_chi("P" + std::to_string(n), ChiVector(std::move(c), n), "builtin: h^{p,p} = 1");
}

inline VarietyRecord builtin_product(const VarietyRecord& a, const VarietyRecord& b) {
  return record_from_chi(a.name + "*" + b.name, product_chi(a.chi, b.chi), "builtin: product");
}

inline VarietyRecord builtin_bryan_donagi(long g, long n) {
  const BundleExample ex = bryan_donagi_example(g, n);
  ChiVector chi({ex.chi_y.coefficient(0), ex.chi_y.coefficient(1), ex.chi_y.coefficient(2)}, 2);
  return record_from_chi("bd_" + std::to_string(g) + "_" + std::to_string(n), std::move(chi),
                         "builtin: bryan-donagi surface");
}

namespace detail {

inline long parse_long(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw parse_error("bad " + what + ": '" + s + "'");
  }
}

}  // namespace detail

// name in {curve, projective_space, product, bryan_donagi_total}.
inline VarietyRecord builtin_variety(const std::string& name, const std::vector<long>& params,
                                     const std::vector<VarietyRecord>& factors = {}) {
  auto need = [&](std::size_t k) {
    if (params.size() != k)
      throw validation_error(name + " takes " + std::to_string(k) + " parameter(s), got " + std::to_string(params.size()));
  };
  if (name == "curve") {
    need(1);
    return builtin_curve(params[0]);
  }
  if (name == "projective_space") {
    need(1);
    return builtin_projective_space(static_cast<int>(params[0]));
  }
  if (name == "bryan_donagi_total") {
    need(2);
    return builtin_bryan_donagi(params[0], params[1]);
  }
  if (name == "product") {
    if (factors.size() != 2) throw validation_error("product takes two varieties");
    return builtin_product(factors[0], factors[1]);
  }
  throw validation_error("unknown builtin variety '" + name + "'");
}

// Spec strings: point | curve:G | proj:N | bd:G,N, joined by '*' for products.
inline VarietyRecord variety_from_spec(const std::string& spec) {
  const auto star = spec.find('*');
  if (star != std::string::npos) {
    return builtin_variety("product", {},
                           {variety_from_spec(spec.substr(0, star)), variety_from_spec(spec.substr(star + 1))});
  }
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string args = colon == std::string::npos ? std::string() : spec.substr(colon + 1);
  std::vector<long> params;
  if (!args.empty()) {
    std::stringstream ss(args);
    std::string item;
    while (std::getline(ss, item, ',')) params.push_back(detail::parse_long(item, "parameter in '" + spec + "'"));
  }
  if (head == "point") return builtin_projective_space(0);
  if (head == "curve") return builtin_variety("curve", params);
  if (head == "proj" || head == "P") return builtin_variety("projective_space", params);
  if (head == "bd") return builtin_variety("bryan_donagi_total", params);
  throw validation_error("unknown variety spec '" + spec + "'");
}

// Curves g = 0..3, projective spaces n = 1..3 and the (2,2) Bryan-Donagi
// surface, sorted by (name, dim).
inline std::vector<VarietyRecord> fixed_catalog() {
  std::vector<VarietyRecord> out;
  for (long g = 0; g <= 3; ++g) out.push_back(builtin_curve(g));
  for (int n = 1; n <= 3; ++n) out.push_back(builtin_projective_space(n));
  out.push_back(builtin_bryan_donagi(2, 2));
  std::sort(out.begin(), out.end(),
            [](const VarietyRecord& a, const VarietyRecord& b) { return std::tie(a.name, a.dim) < std::tie(b.name, b.dim); });
  return out;
}

////////////////////////////////////////////////////////////////////////////
// Bundles
////////////////////////////////////////////////////////////////////////////

struct BundleInput {
  VarietyRecord fiber;
  VarietyRecord base;
  VarietyRecord total;
};

inline VarietyRecord bundle_part(const json& j, const std::string& role, Strictness mode) {
  if (j.is_string()) return variety_from_spec(j.get<std::string>());
  try {
    VarietyRecord r = variety_from_json(j, mode, false);
    if (r.name.empty()) r.name = role;
    return r;
  } catch (const error& e) {
    throw validation_error(role + ": " + e.what());
  }
}

inline BundleInput load_bundle(std::string_view bytes, Strictness mode = Strictness::strict) {
  json j;
  try {
    j = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("bundle: invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("schema") || j["schema"] != bundle_schema)
    throw parse_error("bundle: schema mismatch, expected " + std::string(bundle_schema));
  for (const char* key : {"fiber", "base", "total"})
    if (!j.contains(key)) throw parse_error(std::string("bundle: missing field ") + key);
  return BundleInput{bundle_part(j["fiber"], "fiber", mode), bundle_part(j["base"], "base", mode),
                     bundle_part(j["total"], "total", mode)};
}

////////////////////////////////////////////////////////////////////////////
// Reports
////////////////////////////////////////////////////////////////////////////

enum class ReportKind { genus, bundle, verdict, table };
enum class ReportFormat { json, csv };

inline std::string to_string(ReportKind k) {
  switch (k) {
    case ReportKind::genus:
      return "genus";
    case ReportKind::bundle:
      return "bundle";
    case ReportKind::verdict:
      return "verdict";
    case ReportKind::table:
      return "table";
  }
  return "?";
}

inline ReportKind report_kind_from_string(const std::string& s) {
  if (s == "genus") return ReportKind::genus;
  if (s == "bundle") return ReportKind::bundle;
  if (s == "verdict") return ReportKind::verdict;
  if (s == "table") return ReportKind::table;
  throw parse_error("unknown report kind '" + s + "'");
}

struct ReportDocument {
  ReportKind kind = ReportKind::genus;
  json body = json::object();
  std::string schema{report_schema};

  friend bool operator==(const ReportDocument& a, const ReportDocument& b) {
    return a.kind == b.kind && a.body == b.body && a.schema == b.schema;
  }
};

inline json genus_entry(const VarietyRecord& r) {
  const InvariantSet inv = invariants(r.chi);
  const GenusPolynomial p = genus_polynomial(r.chi);
  json e;
  e["name"] = r.name;
  e["dim"] = r.dim;
  e["source"] = to_string(r.source);
  e["chi"] = integers_to_json(r.chi.entries());
  e["euler"] = integer_to_json(inv.euler);
  e["todd"] = integer_to_json(inv.todd);
  e["signature"] = integer_to_json(inv.signature);
  e["chi_y"] = integers_to_json(p.coeffs());
  e["chi_y_text"] = to_string(p);
  e["duality"] = r.chi.satisfies_duality();
  json congruences = json::array();
  if (r.chi.satisfies_duality()) {
    for (const auto& c : congruence_report(r.chi))
      congruences.push_back({{"name", c.name}, {"value", integer_to_json(c.value)}, {"pass", c.pass}});
  }
  e["congruences"] = congruences;
  return e;
}

// kind genus for explicitly requested varieties, table for catalog listings.
inline ReportDocument genus_report(std::vector<VarietyRecord> records, ReportKind kind = ReportKind::genus) {
  std::stable_sort(records.begin(), records.end(),
                   [](const VarietyRecord& a, const VarietyRecord& b) { return std::tie(a.name, a.dim) < std::tie(b.name, b.dim); });
  ReportDocument doc;
  doc.kind = kind;
  json list = json::array();
  for (const auto& r : records) list.push_back(genus_entry(r));
  doc.body["varieties"] = list;
  return doc;
}

inline json poly_to_json(const IntPoly& p) { return integers_to_json(p.coeffs()); }

inline ReportDocument bundle_report(const BundleInput& in, Strictness mode) {
  const BundleTriple t(in.fiber.chi, in.base.chi, in.total.chi, mode);
  ReportDocument doc;
  doc.kind = ReportKind::bundle;
  json& b = doc.body;
  b["fiber"] = genus_entry(in.fiber);
  b["base"] = genus_entry(in.base);
  b["total"] = genus_entry(in.total);
  b["strict"] = mode == Strictness::strict;
  b["constraints"] = t.constraints_hold() ? "satisfied" : "constraints violated";
  b["euler_multiplicative"] = t.euler_multiplicative();

  const GenusPolynomial diff = difference_direct(t);
  b["difference"] = poly_to_json(diff);
  b["difference_text"] = to_string(diff);

  const SignatureResidueReport sr = signature_mod4_check(t);
  json sig;
  sig["signature_total"] = integer_to_json(sr.signature_total);
  sig["signature_product"] = integer_to_json(sr.signature_product);
  sig["difference"] = integer_to_json(sr.difference);
  sig["residue_mod4"] = integer_to_json(sr.residue);
  if (sr.quarter_parity) sig["quarter_parity"] = integer_to_json(*sr.quarter_parity);
  sig["violated"] = sr.violated;
  b["signature_mod4"] = sig;

  if (t.euler_multiplicative() && t.constraints_hold()) {
    const DefectDecomposition d = difference_decomposition(t);
    json dec;
    dec["todd_defect"] = integer_to_json(d.todd_defect);
    if (d.signature_defect) dec["signature_defect"] = integer_to_json(*d.signature_defect);
    json terms = json::array();
    for (const auto& term : d.terms) {
      terms.push_back({{"role", to_string(term.role)},
                       {"index", term.index},
                       {"defect", integer_to_json(term.defect.get_num())},
                       {"weight", to_string(term.weight)},
                       {"cofactor", poly_to_json(term.cofactor)}});
    }
    dec["terms"] = terms;
    const auto summed = to_integer_poly(d.sum());
    dec["terms_sum_matches"] = summed && *summed == diff;
    b["decomposition"] = dec;

    const MultiplicativityVerdict v = multiplicativity_verdict(t);
    json verdict;
    verdict["kind"] = to_string(v.kind);
    verdict["vanishes_at"] = {{"-1", v.vanishes_at_minus_one}, {"0", v.vanishes_at_zero}, {"1", v.vanishes_at_one}};
    json eqs = json::array();
    for (const auto& e : v.equivalences) eqs.push_back({{"statement", e.statement}, {"holds", e.holds}, {"agrees", e.agrees}});
    verdict["equivalences"] = eqs;
    b["verdict"] = verdict;
  }
  return doc;
}

inline json verdict_to_json(const VerificationVerdict& v) {
  json j;
  j["claim"] = v.claim;
  json params = json::object();
  for (const auto& [k, val] : v.parameters) params[k] = val;
  j["parameters"] = params;
  j["outcome"] = to_string(v.outcome);
  j["residual_hash"] = v.residual_hash;
  if (v.witness) j["witness"] = *v.witness;
  if (!v.notes.empty()) j["notes"] = v.notes;
  return j;
}

inline ReportDocument verdict_report(const std::vector<VerificationVerdict>& verdicts) {
  ReportDocument doc;
  doc.kind = ReportKind::verdict;
  doc.schema = verdict_schema;
  json list = json::array();
  bool all = !verdicts.empty();
  for (const auto& v : verdicts) {
    list.push_back(verdict_to_json(v));
    all = all && v.proved();
  }
  doc.body["verdicts"] = list;
  doc.body["all_proved"] = all;
  return doc;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string json_scalar_text(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

inline std::string joined(const json& arr) {
  if (arr.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < arr.size(); ++i) out += (i ? " " : "") + json_scalar_text(arr[i]);
  return out;
}

}  // namespace detail

// JSON: the full document, two-space indent, trailing newline.
// CSV (genus, table): name,dim,euler,todd,signature,chi_y one row per
// variety, no header. CSV (bundle): key,value rows. Verdicts are JSON only.
inline std::string render_report(const ReportDocument& doc, ReportFormat format) {
  if (format == ReportFormat::json) {
    json j;
    j["schema"] = doc.schema;
    j["kind"] = to_string(doc.kind);
    for (auto it = doc.body.begin(); it != doc.body.end(); ++it) j[it.key()] = it.value();
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  switch (doc.kind) {
    case ReportKind::genus:
    case ReportKind::table:
      for (const auto& e : doc.body.at("varieties")) {
        os << detail::csv_field(e.at("name").get<std::string>()) << ',' << e.at("dim").dump() << ','
           << detail::json_scalar_text(e.at("euler")) << ',' << detail::json_scalar_text(e.at("todd")) << ','
           << detail::json_scalar_text(e.at("signature")) << ',' << detail::joined(e.at("chi_y")) << '\n';
      }
      break;
    case ReportKind::bundle: {
      const json& b = doc.body;
      auto row = [&](const std::string& key, const std::string& value) { os << key << ',' << detail::csv_field(value) << '\n'; };
      for (const char* part : {"fiber", "base", "total"}) row(std::string(part), b.at(part).at("name").get<std::string>());
      row("constraints", b.at("constraints").get<std::string>());
      row("difference", detail::joined(b.at("difference")));
      if (b.contains("decomposition")) {
        const json& d = b.at("decomposition");
        row("todd_defect", detail::json_scalar_text(d.at("todd_defect")));
        if (d.contains("signature_defect")) row("signature_defect", detail::json_scalar_text(d.at("signature_defect")));
        for (const auto& t : d.at("terms"))
          if (t.at("role") == "chi")
            row("chi" + t.at("index").dump() + "_defect", detail::json_scalar_text(t.at("defect")));
      }
      row("signature_residue_mod4", detail::json_scalar_text(b.at("signature_mod4").at("residue_mod4")));
      if (b.contains("verdict")) row("verdict", b.at("verdict").at("kind").get<std::string>());
      break;
    }
    case ReportKind::verdict:
      throw validation_error("verdict reports are JSON only");
  }
  return os.str();
}

inline ReportDocument parse_report(std::string_view bytes) {
  json j;
  try {
    j = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("report: invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("schema") || !j.contains("kind")) throw parse_error("report: missing schema or kind");
  ReportDocument doc;
  doc.schema = j["schema"].get<std::string>();
  if (doc.schema != report_schema && doc.schema != verdict_schema) throw parse_error("report: unknown schema " + doc.schema);
  doc.kind = report_kind_from_string(j["kind"].get<std::string>());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "schema" && it.key() != "kind") doc.body[it.key()] = it.value();
  return doc;
}

}  // namespace genus_forge
