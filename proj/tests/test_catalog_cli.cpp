#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "genus_forge/catalog.hpp"
#include "genus_forge/cli.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace genus_forge;
using test::chi;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string golden(const std::string& name) { return slurp(std::string(GF_GOLDEN_DIR) + "/" + name); }
std::string data(const std::string& name) { return std::string(GF_DATA_DIR) + "/" + name; }

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(LoadVariety, Examples) {
  const auto p2 = load_variety(R"({"schema":"genus-forge/variety/v1","name":"P2","dim":2,"chi":[1,-1,1]})");
  EXPECT_EQ(p2.name, "P2");
  EXPECT_EQ(p2.chi, chi({1, -1, 1}));
  EXPECT_THROW(load_variety(R"({"schema":"genus-forge/variety/v1","name":"x","dim":1,"chi":[1,2]})"), validation_error);
  const auto c3 = load_variety(R"({"schema":"genus-forge/variety/v1","name":"c3","dim":1,"hodge":[[1,3],[3,1]]})");
  EXPECT_EQ(c3.chi, chi({-2, 2}));
  EXPECT_EQ(c3.source, VarietySource::diamond);
}

TEST(LoadVariety, Rejections) {
  EXPECT_THROW(load_variety("{"), parse_error);
  EXPECT_THROW(load_variety(R"({"name":"P2","dim":2,"chi":[1,-1,1]})"), parse_error);
  EXPECT_THROW(load_variety(R"({"schema":"genus-forge/variety/v1","name":"x","dim":1,"chi":[1,-1],"hodge":[[1,3],[3,1]]})"),
               validation_error);
}

TEST(LoadVariety, InvariantsAndBigIntegers) {
  const auto r = load_variety(
      R"({"schema":"genus-forge/variety/v1","name":"bd","dim":2,"invariants":{"todd":28,"euler":96,"signature":16}})");
  EXPECT_EQ(r.chi, chi({28, -40, 28}));
  const auto big = load_variety(
      R"({"schema":"genus-forge/variety/v1","name":"big","dim":1,"chi":["-123456789012345678901234567890","123456789012345678901234567890"]})");
  EXPECT_EQ(big.chi[1].get_str(), "123456789012345678901234567890");
  EXPECT_EQ(load_variety(variety_to_json(big).dump()), big);
}

TEST(Builtins, Examples) {
  EXPECT_EQ(builtin_variety("curve", {0}).chi, chi({1, -1}));
  EXPECT_EQ(builtin_variety("projective_space", {2}).chi, chi({1, -1, 1}));
  EXPECT_EQ(builtin_variety("bryan_donagi_total", {2, 2}).chi, chi({28, -40, 28}));
  EXPECT_THROW(builtin_variety("nonsense", {}), validation_error);
  EXPECT_THROW(builtin_variety("curve", {}), validation_error);
  EXPECT_EQ(variety_from_spec("proj:2*curve:3").chi, product_chi(chi({1, -1, 1}), chi({-2, 2})));
}

TEST(Builtins, KnownVarietiesMatchOracles) {
  for (long g = 0; g <= 5; ++g)
    EXPECT_EQ(genus_polynomial(builtin_curve(g).chi), test::ip({1 - g}) * test::ip({1, -1}));
  for (int n = 0; n <= 8; ++n) EXPECT_EQ(builtin_projective_space(n).chi, test::from_oracle(oracle::projective_space(n)));
}

TEST(Builtins, ProductsOfCatalogAreMultiplicative) {
  const auto cat = fixed_catalog();
  for (const auto& a : cat) {
    for (const auto& b : cat) {
      const auto p = builtin_product(a, b);
      EXPECT_EQ(genus_polynomial(p.chi), genus_polynomial(a.chi) * genus_polynomial(b.chi));
      EXPECT_EQ(p.name, a.name + "*" + b.name);
    }
  }
}

TEST(Render, Examples) {
  const auto doc = genus_report({builtin_projective_space(2)});
  EXPECT_EQ(render_report(doc, ReportFormat::csv), "P2,2,3,1,1,1 -1 1\n");
  const auto parsed = json::parse(render_report(doc, ReportFormat::json));
  EXPECT_EQ(parsed["varieties"][0]["chi_y"], json::parse("[1,-1,1]"));
  EXPECT_THROW(render_report(verdict_report({verify_closed_form(1)}), ReportFormat::csv), validation_error);
}

TEST(Render, JsonRoundTrip) {
  for (const auto& doc : {genus_report(fixed_catalog(), ReportKind::table), verdict_report({verify_closed_form(4)})}) {
    const std::string text = render_report(doc, ReportFormat::json);
    EXPECT_EQ(parse_report(text), doc);
    EXPECT_EQ(render_report(parse_report(text), ReportFormat::json), text);
  }
}

TEST(Render, VarietyRoundTrip) {
  for (const auto& r : fixed_catalog()) EXPECT_EQ(load_variety(variety_to_json(r).dump()), r);
  const auto c3 = load_variety(R"({"schema":"genus-forge/variety/v1","name":"c3","dim":1,"hodge":[[1,3],[3,1]]})");
  EXPECT_EQ(load_variety(variety_to_json(c3).dump()), c3);
}

TEST(Cli, GenusCsv) {
  const auto r = cli({"genus", "--input", data("p2.json"), "--format", "csv"});
  EXPECT_EQ(r.code, exit_ok) << r.err;
  EXPECT_EQ(r.out, "P2,2,3,1,1,1 -1 1\n");
}

TEST(Cli, VerifyClosedForm) {
  const auto r = cli({"verify", "--claim", "closed-form", "--dims", "1..20"});
  EXPECT_EQ(r.code, exit_ok) << r.err;
  EXPECT_TRUE(json::parse(r.out)["all_proved"].get<bool>());
  EXPECT_EQ(cli({"verify", "--claim", "closed-form", "--dims", "1..4", "--inject-fault"}).code, exit_refuted);
}

TEST(Cli, BundleFromSpecs) {
  const auto r = cli({"bundle", "--fiber", "curve:25", "--base", "curve:2", "--total", "bd:2,2", "--format", "csv"});
  EXPECT_EQ(r.code, exit_ok) << r.err;
  EXPECT_EQ(r.out, golden("bundle_bd22.csv"));
  EXPECT_NE(r.out.find("difference,4 8 4"), std::string::npos);
  EXPECT_NE(r.out.find("signature_defect,16"), std::string::npos);
}

TEST(Cli, BundleFromFileMatchesSpecs) {
  const auto r = cli({"bundle", "--input", data("bd22_bundle.json"), "--format", "csv"});
  EXPECT_EQ(r.code, exit_ok) << r.err;
  EXPECT_EQ(r.out, golden("bundle_bd22.csv"));
}

TEST(Cli, CatalogGolden) {
  EXPECT_EQ(cli({"catalog"}).out, golden("catalog.json"));
  EXPECT_EQ(cli({"catalog", "--format", "csv"}).out, golden("catalog.csv"));
  EXPECT_EQ(cli({"bryan-donagi", "--dims", "2..3", "--format", "csv"}).out, golden("bryan_donagi_2_3.csv"));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli({"genus", "--input", "/nonexistent/file.json"}).code, exit_io);
  EXPECT_EQ(cli({"genus", "--variety", "curve:x"}).code, exit_invalid);
  EXPECT_EQ(cli({"bogus"}).code, exit_invalid);
  EXPECT_EQ(cli({"bundle", "--fiber", "proj:1", "--base", "proj:1", "--total", "proj:2"}).code, exit_invalid);
  EXPECT_EQ(cli({"bundle", "--fiber", "proj:1", "--base", "proj:1", "--total", "proj:2", "--lax"}).code, exit_ok);
  EXPECT_EQ(cli({"verify", "--claim", "signature-mod4", "--dims", "4", "--cap", "16"}).code, exit_invalid);
}

TEST(Cli, OutWritesFile) {
  const auto path = std::filesystem::temp_directory_path() / "genus_forge_out_test.csv";
  const auto r = cli({"catalog", "--format", "csv", "--out", path.string()});
  EXPECT_EQ(r.code, exit_ok);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(slurp(path.string()), golden("catalog.csv"));
  std::filesystem::remove(path);
}

// The golden CSV agrees with independently computed values.
TEST(Cli, CatalogCsvAgreesWithOracles) {
  std::istringstream rows(golden("catalog.csv"));
  std::string line;
  int seen = 0;
  while (std::getline(rows, line)) {
    if (line.rfind("curve_g", 0) == 0) {
      const long g = std::stol(line.substr(7, line.find(',') - 7));
      const auto c = oracle::curve(g);
      const std::string expect = "curve_g" + std::to_string(g) + ",1," + std::to_string(oracle::at(c, -1)) + "," +
                                 std::to_string(c[0]) + ",0," + (g == 1 ? "0" : std::to_string(c[0]) + " " + std::to_string(c[1]));
      EXPECT_EQ(line, expect);
      ++seen;
    }
    if (line.rfind("bd_2_2,", 0) == 0) {
      const auto s = oracle::bryan_donagi(2, 2);
      EXPECT_EQ(line, "bd_2_2,2," + std::to_string(s.chi) + "," + std::to_string(s.tau) + "," + std::to_string(s.sigma) +
                          ",28 -40 28");
      ++seen;
    }
  }
  EXPECT_EQ(seen, 5);
}
