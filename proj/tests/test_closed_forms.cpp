#include <gtest/gtest.h>

#include "genus_forge/closed_forms.hpp"
#include "genus_forge/random.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace genus_forge;
using test::chi;
using test::ints;
using test::ip;

namespace {

ClosedFormInput input(int dim, std::optional<long> todd, std::optional<long> euler, std::optional<long> sigma,
                      std::initializer_list<long> low = {}) {
  ClosedFormInput in;
  in.dim = dim;
  if (todd) in.todd = Integer(*todd);
  if (euler) in.euler = Integer(*euler);
  if (sigma) in.signature = Integer(*sigma);
  in.low_chi = ints(low);
  return in;
}

IntPoly oracle_poly(const oracle::Vec& v) { return test::poly_from_oracle(v); }

}  // namespace

TEST(ChiYOdd, Examples) {
  EXPECT_EQ(chi_y_odd(input(1, 1, 2, std::nullopt)), ip({1, -1}));
  const auto p1p2 = oracle::convolve(oracle::projective_space(1), oracle::projective_space(2));
  EXPECT_EQ(chi_y_odd(input(3, 1, 6, std::nullopt)), oracle_poly(p1p2));
  const auto p1p2p2 = oracle::convolve(p1p2, oracle::projective_space(2));
  EXPECT_EQ(chi_y_odd(input(5, 1, 18, std::nullopt, {-3})), oracle_poly(p1p2p2));
  EXPECT_EQ(chi_y_odd(input(5, 1, 18, std::nullopt, {-3})), ip({1, -3, 5, -5, 3, -1}));
}

TEST(ChiYOdd, Rejections) {
  EXPECT_THROW(chi_y_odd(input(3, 1, 7, std::nullopt)), validation_error);     // odd euler
  EXPECT_THROW(chi_y_odd(input(3, 1, 6, 2)), validation_error);                // sigma != 0
  EXPECT_THROW(chi_y_odd(input(1, 1, 4, std::nullopt)), validation_error);     // curve: tau != chi/2
  EXPECT_THROW(chi_y_odd(input(5, 1, 18, std::nullopt)), validation_error);    // missing chi^1
  EXPECT_THROW(chi_y_odd(input(2, 1, 3, 1)), dimension_error);
}

TEST(ChiY4k, Examples) {
  const auto p2p2 = oracle::convolve(oracle::projective_space(2), oracle::projective_space(2));
  EXPECT_EQ(chi_y_4k(input(4, 1, 9, 1)), oracle_poly(p2p2));
  EXPECT_EQ(chi_y_4k(input(4, 1, 9, 1)), ip({1, -2, 3, -2, 1}));
  EXPECT_THROW(chi_y_4k(input(2, 28, 96, 16)), dimension_error);
  EXPECT_THROW(chi_y_4k(input(4, 1, 9, 2)), validation_error);
  EXPECT_THROW(chi_y_4k(input(0, 1, 1, 1)), dimension_error);
}

TEST(ChiY4k2, Examples) {
  EXPECT_EQ(chi_y_4k2(input(2, std::nullopt, 3, 1)), ip({1, -1, 1}));
  const auto p2 = oracle::projective_space(2);
  EXPECT_EQ(chi_y_4k2(input(6, 1, 27, 1, {-3})), oracle_poly(oracle::convolve(oracle::convolve(p2, p2), p2)));
  EXPECT_EQ(chi_y_4k2(input(6, 1, 27, 1, {-3})), ip({1, -3, 6, -7, 6, -3, 1}));
  EXPECT_EQ(chi_y_4k2(input(2, std::nullopt, 96, 16)), ip({28, -40, 28}));
  EXPECT_THROW(chi_y_4k2(input(2, std::nullopt, 96, 14)), validation_error);
  EXPECT_THROW(chi_y_4k2(input(2, 27, 96, 16)), validation_error);  // tau forced to 28
  EXPECT_THROW(chi_y_4k2(input(4, 1, 9, 1)), dimension_error);
}

TEST(ChiYSmallDim, Examples) {
  EXPECT_EQ(chi_y_small_dim(input(2, std::nullopt, 4, 0)), ip({1, -2, 1}));
  EXPECT_EQ(chi_y_small_dim(input(3, 1, 6, std::nullopt)), ip({1, -2, 2, -1}));
  EXPECT_EQ(chi_y_small_dim(input(1, -1, std::nullopt, std::nullopt)), ip({-1, 1}));
  EXPECT_THROW(chi_y_small_dim(input(6, 1, 27, 1, {-3})), dimension_error);
}

TEST(CompleteChiVector, Examples) {
  EXPECT_EQ(complete_chi_vector(input(3, 1, 6, std::nullopt)), chi({1, -2, 2, -1}));
  EXPECT_EQ(complete_chi_vector(input(4, 1, 9, 1)), chi({1, -2, 3, -2, 1}));
  EXPECT_EQ(complete_chi_vector(input(0, 5, std::nullopt, std::nullopt)), chi({5}));
}

TEST(Consistency, NamesMismatchedField) {
  try {
    check_consistency(chi({1, -1, 1}), input(2, std::nullopt, 4, 1));
    FAIL();
  } catch (const validation_error& e) {
    EXPECT_NE(std::string(e.what()).find("euler"), std::string::npos) << e.what();
  }
  EXPECT_NO_THROW(check_consistency(chi({1, -1, 1}), input(2, 1, 3, 1)));
}

TEST(CofactorTable, LowChiCounts) {
  EXPECT_EQ(required_low_chi_count(0), 0U);
  EXPECT_EQ(required_low_chi_count(1), 0U);
  EXPECT_EQ(required_low_chi_count(2), 0U);
  EXPECT_EQ(required_low_chi_count(3), 0U);
  EXPECT_EQ(required_low_chi_count(4), 0U);
  EXPECT_EQ(required_low_chi_count(5), 1U);
  EXPECT_EQ(required_low_chi_count(6), 1U);
  EXPECT_EQ(required_low_chi_count(8), 2U);
  EXPECT_EQ(required_low_chi_count(10), 3U);
}

// Round trip: any duality-valid vector is reproduced from its invariants.
TEST(ClosedFormProperties, RoundTripAllShapes) {
  auto rng = case_engine(11, {0});
  for (int n = 0; n <= 14; ++n) {
    for (int i = 0; i < 300; ++i) {
      const ChiVector c = random_chi_vector(n, rng);
      const ClosedFormInput in = closed_form_input(c);
      ASSERT_EQ(chi_y_closed_form(in), genus_polynomial(c)) << "dim " << n;
      ASSERT_EQ(complete_chi_vector(in), c) << "dim " << n;
      if (n >= 1 && n <= 5) {
        ASSERT_EQ(chi_y_small_dim(in), genus_polynomial(c)) << "dim " << n;
      }
    }
  }
}

TEST(ClosedFormProperties, CongruencesOfRandomVectors) {
  auto rng = case_engine(12, {0});
  for (int n = 1; n <= 14; ++n) {
    for (int i = 0; i < 300; ++i) {
      const InvariantSet inv = invariants(random_chi_vector(n, rng));
      const Integer plus = inv.signature + inv.euler, minus = inv.signature - inv.euler;
      auto div = [](const Integer& v, unsigned long m) { return mpz_divisible_ui_p(v.get_mpz_t(), m) != 0; };
      switch (n % 4) {
        case 0:
          ASSERT_TRUE(div(minus, 4) && div(plus, 2));
          break;
        case 2:
          ASSERT_TRUE(div(plus, 4) && div(minus, 2));
          break;
        default:
          ASSERT_TRUE(div(inv.euler, 2) && inv.signature == 0);
      }
    }
  }
}

// Cofactors vanish or not at y = -1 exactly as the euler term dictates:
// plugging y = -1 into the closed form returns the euler characteristic.
TEST(ClosedFormProperties, EulerRecoveredAtMinusOne) {
  auto rng = case_engine(13, {0});
  for (int n = 1; n <= 12; ++n) {
    const ChiVector c = random_chi_vector(n, rng);
    const auto inv = invariants(c);
    EXPECT_EQ(evaluate(chi_y_closed_form(closed_form_input(c)), Integer(-1)), inv.euler);
    EXPECT_EQ(evaluate(chi_y_closed_form(closed_form_input(c)), Integer(1)), inv.signature);
  }
}
