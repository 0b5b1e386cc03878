#include <gtest/gtest.h>

#include <random>

#include "genus_forge/hodge_core.hpp"
#include "genus_forge/random.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace genus_forge;
using test::chi;
using test::ints;
using test::ip;

namespace {

HodgeDiamond curve_diamond(long g) { return HodgeDiamond({ints({1, g}), ints({g, 1})}); }

HodgeDiamond projective_diamond(int n) {
  std::vector<std::vector<Integer>> h(n + 1, std::vector<Integer>(n + 1));
  for (int p = 0; p <= n; ++p) h[p][p] = 1;
  return HodgeDiamond(std::move(h));
}

}  // namespace

TEST(Diamond, CurveGivesOneMinusG) {
  for (long g = 0; g <= 6; ++g) EXPECT_EQ(chi_from_diamond(curve_diamond(g)), test::from_oracle(oracle::curve(g)));
}

TEST(Diamond, ProjectiveSpaceMatchesColumnSums) {
  EXPECT_EQ(chi_from_diamond(projective_diamond(2)), chi({1, -1, 1}));
  for (int n = 0; n <= 8; ++n)
    EXPECT_EQ(chi_from_diamond(projective_diamond(n)), test::from_oracle(oracle::projective_space(n)));
}

TEST(Diamond, Point) { EXPECT_EQ(chi_from_diamond(HodgeDiamond({ints({1})})), chi({1})); }

TEST(Diamond, RejectsMalformed) {
  EXPECT_THROW(HodgeDiamond({}), validation_error);
  EXPECT_THROW(HodgeDiamond({ints({1, 2}), ints({1})}), validation_error);
  EXPECT_THROW(HodgeDiamond({ints({1, -1}), ints({-1, 1})}), validation_error);
  EXPECT_THROW(HodgeDiamond({ints({1, 2}), ints({3, 1})}), validation_error);
  // symmetric but breaks Serre duality: h00 != h11
  EXPECT_THROW(HodgeDiamond({ints({1, 0}), ints({0, 2})}), validation_error);
}

TEST(GenusPolynomial, Examples) {
  EXPECT_EQ(genus_polynomial(test::from_oracle(oracle::curve(0))), ip({1, -1}));
  EXPECT_EQ(genus_polynomial(chi({1, -1, 1})), ip({1, -1, 1}));
  EXPECT_EQ(genus_polynomial(chi({1})), ip({1}));
}

TEST(Invariants, Examples) {
  EXPECT_EQ(invariants(chi({1, -1, 1})), (InvariantSet{2, 3, 1, 1}));
  EXPECT_EQ(invariants(test::from_oracle(oracle::curve(2))), (InvariantSet{1, -2, -1, 0}));
  EXPECT_EQ(invariants(chi({28, -40, 28})), (InvariantSet{2, 96, 28, 16}));
}

TEST(ProductChi, Examples) {
  EXPECT_EQ(product_chi(chi({1, -1}), chi({1, -1})), chi({1, -2, 1}));
  EXPECT_EQ(product_chi(chi({1, -1}), chi({1, -1, 1})), chi({1, -2, 2, -1}));
  EXPECT_EQ(product_chi(chi({1, -1, 1}), chi({1, -1, 1})), chi({1, -2, 3, -2, 1}));
}

TEST(ProductChi, LaxInputGivesLaxOutput) {
  const ChiVector bad(ints({1, 2}), 1, Strictness::lax);
  const ChiVector p = product_chi(bad, chi({1, -1}));
  EXPECT_FALSE(p.satisfies_duality());
}

TEST(Validate, Examples) {
  EXPECT_NO_THROW(validate_chi_vector(ints({1, -3, 5, -5, 3, -1}), 5));
  EXPECT_NO_THROW(validate_chi_vector(ints({1, 0, 1}), 2));
  try {
    validate_chi_vector(ints({1, 2}), 1);
    FAIL() << "expected duality violation";
  } catch (const validation_error& e) {
    EXPECT_NE(std::string(e.what()).find("(0,1)"), std::string::npos) << e.what();
  }
  const ChiVector lax = validate_chi_vector(ints({1, 2}), 1, Strictness::lax);
  ASSERT_TRUE(lax.duality_violation().has_value());
  EXPECT_EQ(*lax.duality_violation(), (std::pair{0, 1}));
  EXPECT_THROW(validate_chi_vector(ints({1, 2, 3}), 1), validation_error);
  EXPECT_THROW(validate_chi_vector(ints({1}), -1), validation_error);
}

TEST(Validate, LowerHalf) {
  const auto lower = ints({1, -3, 5});
  EXPECT_EQ(ChiVector::from_lower_half(lower, 5), chi({1, -3, 5, -5, 3, -1}));
  EXPECT_EQ(ChiVector::from_lower_half(lower, 4), chi({1, -3, 5, -3, 1}));
}

// Properties over random duality-valid vectors.

TEST(HodgeProperties, DualityMakesPolynomialSignPalindromic) {
  auto rng = case_engine(1, {0});
  for (int i = 0; i < 2000; ++i) {
    const int n = static_cast<int>(rng() % 13);
    const ChiVector c = random_chi_vector(n, rng);
    ASSERT_TRUE(is_sign_palindromic(genus_polynomial(c), n));
  }
}

TEST(HodgeProperties, OddDimensionHasZeroSignatureAndEvenEuler) {
  auto rng = case_engine(2, {0});
  for (int i = 0; i < 2000; ++i) {
    const int n = 2 * static_cast<int>(rng() % 6) + 1;
    const InvariantSet inv = invariants(random_chi_vector(n, rng));
    ASSERT_EQ(inv.signature, 0);
    ASSERT_EQ(mpz_even_p(inv.euler.get_mpz_t()) != 0, true);
  }
}

TEST(HodgeProperties, ProductIsConvolutionAndMultiplicative) {
  auto rng = case_engine(3, {0});
  for (int i = 0; i < 1000; ++i) {
    const int a = static_cast<int>(rng() % 6), b = static_cast<int>(rng() % 6);
    const ChiVector f = random_chi_vector(a, rng, 9), g = random_chi_vector(b, rng, 9);
    const ChiVector p = product_chi(f, g);
    ASSERT_TRUE(p.satisfies_duality());
    ASSERT_EQ(genus_polynomial(p), genus_polynomial(f) * genus_polynomial(g));
    oracle::Vec fv, gv;
    for (const auto& x : f.entries()) fv.push_back(x.get_si());
    for (const auto& x : g.entries()) gv.push_back(x.get_si());
    ASSERT_EQ(p, test::from_oracle(oracle::convolve(fv, gv)));
    const InvariantSet ip_ = invariants(p), fi = invariants(f), gi = invariants(g);
    ASSERT_EQ(ip_.euler, fi.euler * gi.euler);
    ASSERT_EQ(ip_.todd, fi.todd * gi.todd);
    ASSERT_EQ(ip_.signature, fi.signature * gi.signature);
  }
}
