#include <gtest/gtest.h>

#include "bordcalc/verify.hpp"

using namespace bordcalc;

namespace {

std::string failures(const std::vector<Check>& v) {
  std::string s;
  for (const auto& c : v)
    if (!c.passed) s += c.suite + "/" + c.name + " d=" + std::to_string(c.degree) + ": " + c.detail + "\n";
  return s;
}

Config at(int d) {
  Config c;
  c.max_degree = d;
  return c;
}

}  // namespace

TEST(Verify, EverySuiteAtDegreeSix) {
  for (const auto& s : suite_names()) {
    auto r = verify(s, at(6));
    EXPECT_FALSE(r.empty()) << s;
    EXPECT_TRUE(all_passed(r)) << failures(r);
  }
}

TEST(Verify, DegreeZeroIsTrivial) {
  auto r = verify("all", at(0));
  EXPECT_TRUE(all_passed(r)) << failures(r);
}

TEST(Verify, Errors) {
  EXPECT_THROW(verify("nope", at(2)), ContractViolation);
  Config c = at(20);
  EXPECT_THROW(verify("basis", c), CapacityError);
}

// Ordered by degree regardless of which worker finished first.
TEST(Verify, Deterministic) {
  auto a = verify("loc", at(5)), b = verify("loc", at(5));
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].degree, b[i].degree);
    EXPECT_EQ(a[i].detail, b[i].detail);
    if (i > 0) {
      EXPECT_LE(a[i - 1].degree, a[i].degree);
    }
  }
}
