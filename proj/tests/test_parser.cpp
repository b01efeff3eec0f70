#include <gtest/gtest.h>

#include "support.hpp"

using namespace bordcalc;
using testsupport::P;

TEST(Parser, Presentation) {
  auto x = parse_presentation("Gamma(X2)*X2 + a2*Gamma(X2)");
  EXPECT_EQ(x, Presentation::g(1, 2) * Presentation::x(2) + Presentation::g(1, 2).times(P("a2")));
  EXPECT_EQ(parse_presentation("G(2, 3) * e^2"), Presentation::g(2, 3) * Presentation::e(2));
  EXPECT_EQ(parse_presentation("(X2 + 1)^2"), Presentation::x(2) * Presentation::x(2) + Presentation::one());
  EXPECT_TRUE(parse_presentation("2*X3").is_zero());
  EXPECT_EQ(parse_presentation("iota(a2*a4)"), iota(P("a2*a4")));
  EXPECT_TRUE(parse_presentation("X1").is_zero());
}

TEST(Parser, PresentationErrors) {
  try {
    parse_presentation("");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position, 0u);
    EXPECT_FALSE(e.expected.empty());
  }
  EXPECT_THROW(parse_presentation("e^-1"), ParseError);
  EXPECT_THROW(parse_presentation("X2 +"), ParseError);
  EXPECT_THROW(parse_presentation("iota(X2)"), ParseError);
  EXPECT_THROW(parse_presentation("a3"), ParseError);
  EXPECT_THROW(parse_presentation("G(1,2"), ParseError);
  try {
    parse_presentation("X2 * * X3");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position, 5u);
  }
}

TEST(Parser, Laurent) {
  EXPECT_EQ(parse_laurent("c1*e^-1 + e^-2"), loc_P(2));
  EXPECT_EQ(parse_laurent("(c1 + e^-1)*e^-1"), loc_P(2));
  EXPECT_THROW(parse_laurent("c1^-1"), ParseError);
  EXPECT_THROW(parse_laurent("X2"), ParseError);
  EXPECT_EQ(parse_coefficient("a2 + a4"), P("a2 + a4"));
  EXPECT_THROW(parse_coefficient("e"), ParseError);
  EXPECT_EQ(parse_bundle("b1*(a2 + b2)"), P("a2*b1 + b1*b2"));
}

TEST(Parser, Manifold) {
  auto m = parse_manifold("gamma(P(2)) * P(3) * triv(a2)");
  EXPECT_EQ(to_string(m), "gamma(P(2))*P(3)*triv(a2)");
  EXPECT_EQ(dimension(m), 8);
  EXPECT_EQ(to_string(parse_manifold("S(3)")), "S(3)");
  EXPECT_THROW(parse_manifold("P(0)"), ParseError);
  EXPECT_THROW(parse_manifold("Q(2)"), ParseError);
}

TEST(Parser, Space) {
  auto s = parse_space("PB(RP(2) * RP(1); u_1, u_1 + u_2, 0)");
  EXPECT_EQ(s.kind, SpaceDesc::Kind::ProjBundle);
  EXPECT_EQ(s.dimension(), 5);
  EXPECT_EQ(parse_space("Dold(1,2)").dimension(), 5);
  EXPECT_THROW(parse_space("PB(RP(2))"), ParseError);
}

TEST(ParserProperty, PrintParseRoundTrip) {
  testsupport::Gen g(51);
  NormalFormEngine eng;
  for (int k = 0; k < 200; ++k) {
    auto x = eng.normal_form(g.presentation(3, true));
    ASSERT_EQ(parse_presentation(to_string(x)), x) << to_string(x);
    auto l = localize(x);
    ASSERT_EQ(parse_laurent(gf2::to_string(l)), l);
  }
}
