#pragma once

// Command-line surface. run_cli() is the whole program minus process
// plumbing, so tests can drive it in-process.
//
//   genus        --input PATH | --variety SPEC...      chi_y and invariants
//   bundle       --input PATH | --fiber S --base S --total S
//   verify       --claim NAME [--dims RANGE] [--seed N] [--samples N]
//   catalog                                            fixed catalog table
//   bryan-donagi [--dims RANGE]                        X_{g,n} for g, n in RANGE
//
// Common flags: --out PATH, --format json|csv, --strict|--lax.
// Exit codes: 0 ok, 1 input or validation error, 2 identity refuted, 3 I/O.

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "genus_forge/bundle_analysis.hpp"
#include "genus_forge/catalog.hpp"
#include "genus_forge/closed_forms.hpp"
#include "genus_forge/random.hpp"
#include "genus_forge/symbolic_verify.hpp"

namespace genus_forge {

enum ExitCode : int { exit_ok = 0, exit_invalid = 1, exit_refuted = 2, exit_io = 3 };

struct DimRange {
  int lo = 0;
  int hi = 0;
};

// "a..b" or "a".
inline DimRange parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    DimRange r{std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
    if (r.lo > r.hi) throw parse_error("empty range " + text);
    return r;
  } catch (const std::logic_error&) {
    throw parse_error("bad range '" + text + "', expected a..b");
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot read " + path);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

namespace detail {

struct CliState {
  std::string input;
  std::string out;
  std::string format = "json";
  bool lax = false;
  bool strict = false;
  std::vector<std::string> varieties;
  std::string fiber, base, total;
  std::string claim = "all";
  std::string dims;
  std::uint64_t seed = 20240601;
  long samples = 1000;
  std::uint64_t cap = std::uint64_t{1} << 24;
  bool inject_fault = false;
};

inline ReportFormat format_of(const std::string& f) { return f == "csv" ? ReportFormat::csv : ReportFormat::json; }

inline VerificationVerdict sweep_verdict(std::string claim, std::map<std::string, long> params, long failures,
                                         std::string first_failure) {
  VerificationVerdict v;
  v.claim = std::move(claim);
  v.parameters = std::move(params);
  v.parameters["failures"] = failures;
  v.outcome = failures == 0 ? Outcome::proved : Outcome::refuted;
  if (failures != 0) v.witness = std::move(first_failure);
  return v;
}

// Seeded random chi-vectors through the closed forms and reconstruction.
inline VerificationVerdict round_trip_sweep(int dim, long samples, std::uint64_t seed) {
  long failures = 0;
  std::string first;
  for (long i = 0; i < samples; ++i) {
    auto rng = case_engine(seed, {static_cast<std::uint64_t>(dim), static_cast<std::uint64_t>(i)});
    const ChiVector c = random_chi_vector(dim, rng);
    const ClosedFormInput in = closed_form_input(c);
    const bool ok = chi_y_closed_form(in) == genus_polynomial(c) && complete_chi_vector(in) == c;
    if (!ok && failures++ == 0) first = "case " + std::to_string(i);
  }
  return sweep_verdict("round-trip", {{"dim", dim}, {"samples", samples}}, failures, first);
}

inline VerificationVerdict random_triple_sweep(int f, int b, long samples, std::uint64_t seed) {
  long failures = 0;
  std::string first;
  for (long i = 0; i < samples; ++i) {
    auto rng = case_engine(seed, {static_cast<std::uint64_t>(f), static_cast<std::uint64_t>(b), static_cast<std::uint64_t>(i)});
    const BundleTriple t = random_strict_triple(f, b, rng);
    const DefectDecomposition d = difference_decomposition(t);
    bool ok = to_integer_poly(d.sum()) == std::optional<IntPoly>(d.difference);
    if (t.dim() % 2 == 0) ok = ok && sgn(mod_nonneg(*d.signature_defect, 4)) == 0;
    if (!ok && failures++ == 0) first = "case " + std::to_string(i);
  }
  return sweep_verdict("random-triples", {{"fiber_dim", f}, {"base_dim", b}, {"samples", samples}}, failures, first);
}

inline std::vector<VerificationVerdict> run_claim(const std::string& claim, const std::string& dims, const CliState& s) {
  VerifyOptions opts;
  opts.inject_fault = s.inject_fault;
  opts.exhaustion_cap = s.cap;
  auto range_or = [&](DimRange fallback) { return dims.empty() ? fallback : parse_range(dims); };
  std::vector<VerificationVerdict> out;

  if (claim == "closed-form") {
    const DimRange r = range_or({1, 20});
    for (int d = r.lo; d <= r.hi; ++d) out.push_back(verify_closed_form(d, opts));
  } else if (claim == "duality") {
    const DimRange r = range_or({0, 20});
    for (int d = r.lo; d <= r.hi; ++d) out.push_back(verify_duality_consequences(d));
  } else if (claim == "difference") {
    const DimRange r = range_or({2, 10});
    for (int n = std::max(2, r.lo); n <= r.hi; ++n)
      for (int f = 1; f < n; ++f) out.push_back(verify_difference_identity(f, n - f, opts));
  } else if (claim == "signature-mod4") {
    const DimRange r = range_or({2, 8});
    for (int n = std::max(2, r.lo); n <= r.hi; ++n)
      if (n % 2 == 0)
        for (int f = 1; f < n; ++f) out.push_back(verify_signature_mod4(f, n - f, opts));
  } else if (claim == "round-trip") {
    const DimRange r = range_or({1, 12});
    for (int d = r.lo; d <= r.hi; ++d) out.push_back(round_trip_sweep(d, s.samples, s.seed));
  } else if (claim == "random-triples") {
    const DimRange r = range_or({2, 10});
    for (int n = std::max(2, r.lo); n <= r.hi; ++n)
      for (int f = 1; f < n; ++f) out.push_back(random_triple_sweep(f, n - f, s.samples, s.seed));
  } else if (claim == "all") {
    for (const char* c : {"closed-form", "duality", "difference", "signature-mod4"}) {
      auto part = run_claim(c, "", s);
      out.insert(out.end(), part.begin(), part.end());
    }
  } else {
    throw validation_error("unknown claim '" + claim +
                           "'; expected closed-form, duality, difference, signature-mod4, round-trip, random-triples or all");
  }
  return out;
}

inline ReportDocument bryan_donagi_table(const DimRange& r) {
  ReportDocument doc;
  doc.kind = ReportKind::table;
  json list = json::array();
  for (long g = r.lo; g <= r.hi; ++g) {
    for (long n = r.lo; n <= r.hi; ++n) {
      const BundleExample ex = bryan_donagi_example(g, n);
      VarietyRecord rec = builtin_bryan_donagi(g, n);
      json e = genus_entry(rec);
      e["g"] = g;
      e["n"] = n;
      e["fibrations"] = json::array({{{"base_genus", integer_to_json(ex.fibration1.base_genus)},
                                      {"fiber_genus", integer_to_json(ex.fibration1.fiber_genus)}},
                                     {{"base_genus", integer_to_json(ex.fibration2.base_genus)},
                                      {"fiber_genus", integer_to_json(ex.fibration2.fiber_genus)}}});
      list.push_back(e);
    }
  }
  doc.body["varieties"] = list;
  return doc;
}

}  // namespace detail

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  detail::CliState s;
  CLI::App app{"genus-forge: exact chi_y-genus computations"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", s.out, "Write the report to PATH instead of stdout");
    sub->add_option("--format", s.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    auto* strict = sub->add_flag("--strict", s.strict, "Reject duality and euler violations (default)");
    auto* lax = sub->add_flag("--lax", s.lax, "Report constraint violations instead of rejecting");
    strict->excludes(lax);
  };

  auto* genus = app.add_subcommand("genus", "chi_y and invariants of varieties");
  add_common(genus);
  genus->add_option("--input", s.input, "Variety file (genus-forge/variety/v1)");
  genus->add_option("--variety", s.varieties, "Builtin spec: point, curve:G, proj:N, bd:G,N, A*B");

  auto* bundle = app.add_subcommand("bundle", "Multiplicativity defects of a fiber bundle");
  add_common(bundle);
  bundle->add_option("--input", s.input, "Bundle file (genus-forge/bundle/v1)");
  bundle->add_option("--fiber", s.fiber, "Fiber spec");
  bundle->add_option("--base", s.base, "Base spec");
  bundle->add_option("--total", s.total, "Total space spec");

  auto* verify = app.add_subcommand("verify", "Symbolic and exhaustive identity checks");
  add_common(verify);
  verify->add_option("--claim", s.claim,
                     "closed-form, duality, difference, signature-mod4, round-trip, random-triples or all");
  verify->add_option("--dims", s.dims, "Dimension range a..b (total dimension for bundle claims)");
  verify->add_option("--seed", s.seed, "Seed for randomized sweeps");
  verify->add_option("--samples", s.samples, "Cases per dimension for randomized sweeps");
  verify->add_option("--cap", s.cap, "Maximum assignments for the mod-4 sweep");
  verify->add_flag("--inject-fault", s.inject_fault, "Corrupt the claim to exercise the refutation path");

  auto* catalog = app.add_subcommand("catalog", "Fixed catalog of curves, projective spaces and X_{2,2}");
  add_common(catalog);

  auto* bd = app.add_subcommand("bryan-donagi", "Bryan-Donagi surfaces X_{g,n}");
  add_common(bd);
  bd->add_option("--dims", s.dims, "Range for both g and n, default 2..2");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_invalid;
  }
  const Strictness mode = s.lax ? Strictness::lax : Strictness::strict;
  const ReportFormat format = detail::format_of(s.format);

  try {
    ReportDocument doc;
    int code = exit_ok;
    if (genus->parsed()) {
      std::vector<VarietyRecord> records;
      if (!s.input.empty()) records.push_back(load_variety(read_file(s.input), mode));
      for (const auto& spec : s.varieties) records.push_back(variety_from_spec(spec));
      if (records.empty()) throw validation_error("genus needs --input or --variety");
      doc = genus_report(std::move(records));
    } else if (bundle->parsed()) {
      BundleInput in;
      if (!s.input.empty()) {
        in = load_bundle(read_file(s.input), mode);
      } else {
        if (s.fiber.empty() || s.base.empty() || s.total.empty())
          throw validation_error("bundle needs --input or all of --fiber, --base, --total");
        in = BundleInput{variety_from_spec(s.fiber), variety_from_spec(s.base), variety_from_spec(s.total)};
      }
      doc = bundle_report(in, mode);
    } else if (verify->parsed()) {
      if (format == ReportFormat::csv) throw validation_error("verdict reports are JSON only");
      std::vector<VerificationVerdict> verdicts;
      try {
        verdicts = detail::run_claim(s.claim, s.dims, s);
      } catch (const exhaustion_cap_error& e) {
        err << "not attempted: " << e.what() << "\n";
        return exit_invalid;
      }
      doc = verdict_report(verdicts);
      if (!doc.body["all_proved"].get<bool>()) code = exit_refuted;
    } else if (catalog->parsed()) {
      doc = genus_report(fixed_catalog(), ReportKind::table);
    } else if (bd->parsed()) {
      doc = detail::bryan_donagi_table(s.dims.empty() ? DimRange{2, 2} : parse_range(s.dims));
    }

    const std::string bytes = render_report(doc, format);
    if (s.out.empty()) {
      out << bytes;
    } else {
      std::ofstream file(s.out, std::ios::binary);
      if (!file || !(file << bytes)) throw io_error("cannot write " + s.out);
    }
    if (code == exit_refuted) err << "refuted: at least one identity failed\n";
    return code;
  } catch (const io_error& e) {
    err << "I/O error: " << e.what() << "\n";
    return exit_io;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return exit_invalid;
  }
}

}  // namespace genus_forge
