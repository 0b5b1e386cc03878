#include <gtest/gtest.h>

#include "genus_forge/symbolic_verify.hpp"

using namespace genus_forge;

TEST(FormalChi, DualityForcedEntries) {
  const FormalChiVector x(3, "s");
  ASSERT_EQ(x.entries().size(), 4U);
  EXPECT_EQ(x.entries()[3], -x.entries()[0]);
  EXPECT_EQ(x.entries()[2], -x.entries()[1]);
  EXPECT_TRUE(x.signature().is_zero());
}

TEST(VerifyClosedForm, ProvedForDimensionsOneToTwenty) {
  for (int n = 1; n <= 20; ++n) {
    const auto v = verify_closed_form(n);
    EXPECT_EQ(v.outcome, Outcome::proved) << "dim " << n << ": " << v.residual;
    EXPECT_EQ(v.residual, "0");
    EXPECT_EQ(v.residual_hash, stable_hash("0"));
  }
}

TEST(VerifyClosedForm, DimensionZeroUnsupported) { EXPECT_THROW(verify_closed_form(0), dimension_error); }

TEST(VerifyClosedForm, InjectedFaultIsRefuted) {
  VerifyOptions opts;
  opts.inject_fault = true;
  for (int n : {1, 3, 4, 6, 9}) {
    const auto v = verify_closed_form(n, opts);
    EXPECT_EQ(v.outcome, Outcome::refuted) << n;
    EXPECT_TRUE(v.witness.has_value());
    EXPECT_NE(v.residual_hash, stable_hash("0"));
  }
}

TEST(VerifyDifference, SmallSplits) {
  for (auto [f, b] : {std::pair{1, 1}, {1, 2}, {2, 2}}) {
    const auto v = verify_difference_identity(f, b);
    EXPECT_EQ(v.outcome, Outcome::proved) << f << "," << b << ": " << v.residual;
  }
  // (2,2): tau and signature terms with cofactors (1-y^2)^2 and y(1+y)^2.
  const auto v = verify_difference_identity(2, 2);
  bool todd = false, sig = false;
  for (const auto& note : v.notes) {
    todd = todd || note.find("todd defect x 1 x (1 - 2*y^2 + 1*y^4)") != std::string::npos;
    sig = sig || note.find("signature defect x 1/4 x (1*y + 2*y^2 + 1*y^3)") != std::string::npos;
  }
  EXPECT_TRUE(todd && sig);
}

TEST(VerifyDifference, AllSplitsUpToTen) {
  for (int f = 1; f <= 9; ++f)
    for (int b = 1; f + b <= 10; ++b)
      ASSERT_EQ(verify_difference_identity(f, b).outcome, Outcome::proved) << f << "," << b;
}

TEST(VerifyDifference, InjectedFaultIsRefuted) {
  VerifyOptions opts;
  opts.inject_fault = true;
  EXPECT_EQ(verify_difference_identity(2, 2, opts).outcome, Outcome::refuted);
}

TEST(VerifySignatureMod4, Examples) {
  const auto a = verify_signature_mod4(1, 1);
  EXPECT_EQ(a.outcome, Outcome::proved);
  EXPECT_EQ(a.parameters.at("free_symbols"), 3);
  const auto b = verify_signature_mod4(2, 2);
  EXPECT_EQ(b.outcome, Outcome::proved);
  EXPECT_EQ(b.parameters.at("free_symbols"), 6);
  EXPECT_EQ(verify_signature_mod4(1, 3).outcome, Outcome::proved);
  EXPECT_THROW(verify_signature_mod4(1, 2), dimension_error);
}

TEST(VerifySignatureMod4, CapIsHonoured) {
  VerifyOptions opts;
  opts.exhaustion_cap = 16;
  EXPECT_THROW(verify_signature_mod4(2, 2, opts), exhaustion_cap_error);
}

TEST(VerifySignatureMod4, DroppingEulerGivesWitness) {
  VerifyOptions opts;
  opts.inject_fault = true;
  const auto v = verify_signature_mod4(1, 1, opts);
  EXPECT_EQ(v.outcome, Outcome::refuted);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_NE(v.witness->find("mod 4"), std::string::npos) << *v.witness;
}

TEST(VerifyDuality, Examples) {
  for (int n = 1; n <= 16; ++n) EXPECT_EQ(verify_duality_consequences(n).outcome, Outcome::proved) << n;
  const auto four = verify_duality_consequences(4);
  bool found = false;
  for (const auto& note : four.notes) found = found || note.find("4*(") != std::string::npos;
  EXPECT_TRUE(found);
}

TEST(StableHash, Deterministic) {
  EXPECT_EQ(stable_hash("0"), stable_hash("0"));
  EXPECT_NE(stable_hash("0"), stable_hash("1"));
  EXPECT_EQ(stable_hash("").size(), 16U);
}
