#include "chtrace/algebra_spec.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace chtrace;

TEST(AlgebraSpec, Examples) {
  AlgebraSpec s = parse_algebra_spec("u3star(u3star(rat))");
  EXPECT_EQ(s.kind, RingKind::u3star);
  ASSERT_TRUE(s.inner);
  EXPECT_EQ(s.inner->kind, RingKind::u3star);
  EXPECT_EQ(s.dim(), 16u);
  AlgebraSpec g = parse_algebra_spec("grassmann:4");
  EXPECT_EQ(g.kind, RingKind::grassmann);
  EXPECT_EQ(g.parameter, 4u);
  EXPECT_EQ(g.dim(), 16u);
  EXPECT_EQ(parse_algebra_spec("full:3").dim(), 9u);
}

TEST(AlgebraSpec, UnbalancedWithBoundNote) {
  try {
    parse_algebra_spec("u3star(grassmann:9");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 18u);
    EXPECT_EQ(std::string(e.what()), "unbalanced parenthesis at column 18: expected ')'; also r=9 exceeds bound [1,8]");
  }
}

TEST(AlgebraSpec, SyntaxErrors) {
  for (const char* bad : {"", "rational", "grassmann:", "grassmann:x", "full:2)", "u3star()", "u3star(rat", " rat",
                          "Rat", "u3star[rat]"})
    EXPECT_THROW(parse_algebra_spec(bad), ParseError) << bad;
  try {
    parse_algebra_spec("full:2x");
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 6u);
  }
}

TEST(AlgebraSpec, BoundErrors) {
  for (const char* bad : {"grassmann:0", "grassmann:9", "full:1", "full:5", "u3star(grassmann:5)",
                          "u3star(u3star(u3star(u3star(rat))))"})
    EXPECT_THROW(parse_algebra_spec(bad), BoundError) << bad;
  EXPECT_NO_THROW(parse_algebra_spec("u3star(u3star(u3star(rat)))"));
  EXPECT_NO_THROW(parse_algebra_spec("u3star(grassmann:4)"));
}

TEST(AlgebraSpec, PolyIsRatAlias) {
  EXPECT_EQ(parse_algebra_spec("poly").render(), "rat");
  EXPECT_EQ(parse_algebra_spec("u3star(poly)"), parse_algebra_spec("u3star(rat)"));
}

TEST(AlgebraSpec, BuildsMatchingRings) {
  for (const char* s : {"rat", "grassmann:3", "full:2", "u3star(rat)", "u3star(u3star(rat))", "u3star(full:2)"}) {
    Ring r = parse_ring(s);
    EXPECT_EQ(r->name(), s);
    EXPECT_EQ(r->dim(), parse_algebra_spec(s).dim());
  }
}

// render(parse(s)) = s for canonical s, over random ASTs within bounds.
TEST(AlgebraSpec, RoundTripOnRandomAsts) {
  std::mt19937_64 rng(42);
  for (int it = 0; it < 500; ++it) {
    AlgebraSpec leaf;
    switch (rng() % 3) {
      case 0: break;
      case 1:
        leaf.kind = RingKind::grassmann;
        leaf.parameter = 1 + rng() % 8;
        break;
      default:
        leaf.kind = RingKind::full;
        leaf.parameter = 2 + rng() % 3;
    }
    AlgebraSpec s = leaf;
    for (int depth = static_cast<int>(rng() % 4); depth > 0; --depth) {
      AlgebraSpec outer;
      outer.kind = RingKind::u3star;
      outer.inner = std::make_shared<AlgebraSpec>(s);
      s = outer;
    }
    std::string text = s.render();
    if (s.dim() > kMaxU3starDim && s.kind == RingKind::u3star) {
      EXPECT_THROW(parse_algebra_spec(text), BoundError) << text;
      continue;
    }
    AlgebraSpec back = parse_algebra_spec(text);
    EXPECT_EQ(back.render(), text);
    EXPECT_EQ(back, s);
    EXPECT_EQ(back.dim(), s.dim());
  }
}
