#include <gtest/gtest.h>

#include "support.hpp"

using namespace bordcalc;
using testsupport::P;

namespace {

// Partitions of d into parts that are not of the form 2^k - 1.
std::size_t count_partitions(int d) {
  std::vector<std::size_t> ways(static_cast<std::size_t>(d) + 1, 0);
  ways[0] = 1;
  for (int part = 2; part <= d; ++part) {
    if (((part + 1) & part) == 0) continue;
    for (int s = part; s <= d; ++s) ways[static_cast<std::size_t>(s)] += ways[static_cast<std::size_t>(s - part)];
  }
  return ways[static_cast<std::size_t>(d)];
}

}  // namespace

TEST(Coefficients, Rho) {
  EXPECT_EQ(rho(2), P("a2"));
  EXPECT_TRUE(rho(3).is_zero());
  EXPECT_TRUE(rho(1).is_zero());
  EXPECT_EQ(rho(6), P("a6"));
  EXPECT_THROW(rho(0), ContractViolation);
}

TEST(Coefficients, MonomialsOfDegree) {
  CoefRing ring(16);
  auto d0 = ring.monomials_of_degree(0);
  ASSERT_EQ(d0.size(), 1u);
  EXPECT_TRUE(d0[0].is_one());
  EXPECT_TRUE(ring.monomials_of_degree(3).empty());
  auto d4 = ring.monomials_of_degree(4);
  std::set<std::string> names;
  for (const auto& m : d4) names.insert(gf2::to_string(m));
  EXPECT_EQ(names, (std::set<std::string>{"a4", "a2^2"}));
  EXPECT_THROW(ring.monomials_of_degree(17), CapacityError);
}

// Dimensions of the unoriented bordism groups, N_0 .. N_12.
TEST(Coefficients, RankMatchesKnownDimensions) {
  const std::vector<std::size_t> known{1, 0, 1, 0, 2, 1, 3, 1, 5, 3, 8, 5};
  CoefRing ring(16);
  for (int d = 0; d < static_cast<int>(known.size()); ++d) EXPECT_EQ(ring.rank(d), known[static_cast<std::size_t>(d)]) << d;
}

TEST(Coefficients, RankMatchesPartitionCount) {
  CoefRing ring(16);
  for (int d = 0; d <= 16; ++d) EXPECT_EQ(ring.rank(d), count_partitions(d)) << d;
}

TEST(Coefficients, GeneratorDegrees) {
  for (int d : {1, 3, 7, 15, 31}) {
    EXPECT_FALSE(is_generator_degree(d));
    EXPECT_THROW(representative(d), ContractViolation);
  }
  for (int d = 2; d <= 20; ++d) {
    if (!is_generator_degree(d)) continue;
    EXPECT_EQ(representative(d).dimension(), d);
    if (d % 2 == 0) EXPECT_EQ(representative(d).kind, GeneratorRepresentative::Kind::RealProjective);
    else EXPECT_EQ(representative(d).kind, GeneratorRepresentative::Kind::Dold);
  }
  auto r5 = representative(5);  // P(1,2)
  EXPECT_EQ(r5.m, 1);
  EXPECT_EQ(r5.n, 2);
}

TEST(Coefficients, RestrictedRing) {
  CoefRing ring(8, {2});
  EXPECT_EQ(ring.rank(4), 1u);
  EXPECT_EQ(ring.rank(5), 0u);
  EXPECT_THROW(CoefRing(8, {3}), ContractViolation);
  EXPECT_THROW(CoefRing(kAlphabetCap + 1), CapacityError);
}

TEST(Coefficients, IsCoefficient) {
  EXPECT_TRUE(is_coefficient(P("a2*a4 + a5")));
  EXPECT_FALSE(is_coefficient(P("a2*e")));
  EXPECT_FALSE(is_coefficient(P("c1")));
}
