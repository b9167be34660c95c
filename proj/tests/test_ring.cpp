#include "chtrace/kernel_checks.hpp"
#include "chtrace/ring.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace chtrace;

namespace {

RingElement b(const Ring& r, std::string_view label) {
  auto idx = r->index_of(label);
  if (!idx) throw std::runtime_error("no basis label " + std::string(label));
  return RingElement::basis(r, *idx);
}

// Grassmann oracle: concatenate generator words and bubble-sort, counting swaps.
std::pair<int, std::uint32_t> grassmann_oracle(std::uint32_t s, std::uint32_t t) {
  std::vector<int> word;
  for (int g = 0; g < 32; ++g)
    if (s & (1u << g)) word.push_back(g);
  for (int g = 0; g < 32; ++g)
    if (t & (1u << g)) word.push_back(g);
  int swaps = 0;
  for (std::size_t i = 0; i < word.size(); ++i)
    for (std::size_t j = 0; j + 1 < word.size() - i; ++j)
      if (word[j] > word[j + 1]) {
        std::swap(word[j], word[j + 1]);
        ++swaps;
      }
  for (std::size_t i = 0; i + 1 < word.size(); ++i)
    if (word[i] == word[i + 1]) return {0, 0};
  return {swaps % 2 ? -1 : 1, s | t};
}

// Random element with small integer coefficients on a random support.
RingElement random_element(const Ring& r, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> c(-3, 3);
  std::vector<RingElement::Coord> coords;
  for (std::uint32_t i = 0; i < r->dim(); ++i)
    if (rng() % 3 == 0) coords.emplace_back(i, Polynomial(c(rng)));
  return RingElement::from_coords(r, coords);
}

}  // namespace

TEST(Ring, RatExamples) {
  Ring q = make_rat();
  EXPECT_EQ(q->dim(), 1u);
  RingElement one = RingElement::unit(q);
  EXPECT_EQ(one * one, one);
  VarAllocator vars;
  RingElement g = generic_element(q, vars);
  EXPECT_EQ(g.str(), "t0*1");
  EXPECT_EQ(vars.allocated(), 1u);
}

TEST(Ring, GrassmannExamples) {
  Ring e = make_grassmann(3);
  EXPECT_EQ(e->dim(), 8u);
  EXPECT_EQ(b(e, "v{1}") * b(e, "v{2}"), b(e, "v{1,2}"));
  EXPECT_EQ(b(e, "v{2}") * b(e, "v{1}"), -b(e, "v{1,2}"));
  EXPECT_TRUE((b(e, "v{1}") * b(e, "v{1}")).is_zero());
  EXPECT_EQ(b(e, "v{2}") * b(e, "v{1,3}"), -b(e, "v{1,2,3}"));
}

TEST(Ring, GrassmannTableMatchesSortingOracle) {
  for (unsigned r = 1; r <= 5; ++r) {
    Ring e = make_grassmann(r);
    for (std::uint32_t s = 0; s < e->dim(); ++s)
      for (std::uint32_t t = 0; t < e->dim(); ++t) {
        auto [sign, mask] = grassmann_oracle(s, t);
        RingElement expect = sign == 0 ? RingElement(e) : RingElement::basis(e, mask, Polynomial(sign));
        ASSERT_EQ(RingElement::basis(e, s) * RingElement::basis(e, t), expect) << r << " " << s << " " << t;
      }
  }
}

TEST(Ring, GrassmannGenericExamples) {
  VarAllocator vars;
  Ring e1 = make_grassmann(1);
  EXPECT_EQ(generic_element(e1, vars).str(), "t0*1 + t1*v{1}");
  Ring e2 = make_grassmann(2);
  auto p = Polynomial::variable(VarId{100}), q = Polynomial::variable(VarId{101});
  RingElement x = RingElement::basis(e2, 1, p), y = RingElement::basis(e2, 2, q);
  EXPECT_EQ(x * y, RingElement::basis(e2, 3, p * q));
  EXPECT_EQ(commutator(b(e2, "v{1}"), b(e2, "v{2}")), RingElement::basis(e2, 3, Polynomial(2)));
}

TEST(Ring, FullMatrixExamples) {
  Ring m = make_full(3);
  EXPECT_EQ(b(m, "E12") * b(m, "E21"), b(m, "E11"));
  EXPECT_TRUE((b(m, "E12") * b(m, "E13")).is_zero());
  EXPECT_EQ(RingElement::unit(m) * b(m, "E21"), b(m, "E21"));
  Ring m2 = make_full(2);
  RingElement s = b(m2, "E12") + b(m2, "E21");
  EXPECT_EQ(s * s, RingElement::unit(m2));
}

TEST(Ring, FullMatrixTableMatchesDenseProduct) {
  for (unsigned n = 2; n <= 4; ++n) {
    Ring m = make_full(n);
    for (unsigned i = 0; i < n * n; ++i)
      for (unsigned j = 0; j < n * n; ++j) {
        // dense n x n integer matrices for the two units
        std::vector<int> x(n * n, 0), y(n * n, 0), z(n * n, 0);
        x[i] = 1;
        y[j] = 1;
        for (unsigned r = 0; r < n; ++r)
          for (unsigned c = 0; c < n; ++c)
            for (unsigned k = 0; k < n; ++k) z[r * n + c] += x[r * n + k] * y[k * n + c];
        std::vector<RingElement::Coord> coords;
        for (unsigned k = 0; k < n * n; ++k)
          if (z[k]) coords.emplace_back(k, Polynomial(z[k]));
        ASSERT_EQ(RingElement::basis(m, i) * RingElement::basis(m, j), RingElement::from_coords(m, coords));
      }
  }
}

TEST(Ring, U3starExamples) {
  Ring u = make_u3star(make_rat());
  EXPECT_EQ(u->dim(), 4u);
  EXPECT_EQ(b(u, "E12") * b(u, "E23"), b(u, "E13"));
  EXPECT_TRUE((b(u, "E23") * b(u, "E12")).is_zero());
  EXPECT_EQ(commutator(b(u, "E12"), b(u, "E23")), b(u, "E13"));
  Ring uu = make_u3star(u);
  EXPECT_EQ(uu->dim(), 16u);
  EXPECT_TRUE(uu->index_of("E12⊗E23′").has_value());
  EXPECT_EQ(b(uu, "E12⊗E12′") * b(uu, "E23⊗E23′"), b(uu, "E13⊗E13′"));
}

// aI acts on (a',b',c',d') by left multiplication in every slot.
TEST(Ring, U3starScalarSlotActsByLeftMultiplication) {
  Ring base = make_full(2);
  Ring u = make_u3star(base);
  VarAllocator vars;
  RingElement a = generic_element(base, vars);
  RingElement y = generic_element(u, vars);
  RingElement x = u3star_lift(u, a, U3Slot::identity);
  RingElement xy = x * y;
  for (U3Slot s : {U3Slot::identity, U3Slot::e12, U3Slot::e13, U3Slot::e23})
    EXPECT_EQ(u3star_part(xy, s), a * u3star_part(y, s));
}

// Rational 3x3 oracle for u3star(rat): plain arithmetic on the matrix form.
TEST(Ring, U3starRatMatchesThreeByThreeArithmetic) {
  Ring u = make_u3star(make_rat());
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> c(-5, 5);
  for (int it = 0; it < 200; ++it) {
    std::array<std::int64_t, 4> p{c(rng), c(rng), c(rng), c(rng)}, q{c(rng), c(rng), c(rng), c(rng)};
    auto dense = [](const std::array<std::int64_t, 4>& v) {
      return std::array<std::int64_t, 9>{v[0], v[1], v[2], 0, v[0], v[3], 0, 0, v[0]};
    };
    auto mp = dense(p), mq = dense(q);
    std::array<std::int64_t, 9> z{};
    for (int r = 0; r < 3; ++r)
      for (int col = 0; col < 3; ++col)
        for (int k = 0; k < 3; ++k) z[r * 3 + col] += mp[r * 3 + k] * mq[k * 3 + col];
    auto elem = [&](const std::array<std::int64_t, 4>& v) {
      std::vector<RingElement::Coord> coords;
      for (std::uint32_t i = 0; i < 4; ++i)
        if (v[i]) coords.emplace_back(i, Polynomial(v[i]));
      return RingElement::from_coords(u, coords);
    };
    ASSERT_EQ(z[3], 0);
    ASSERT_EQ(z[0], z[4]);
    ASSERT_EQ(z[4], z[8]);
    ASSERT_EQ(elem(p) * elem(q), elem({z[0], z[1], z[2], z[5]}));
  }
}

TEST(Ring, U3starEmbeddingExamples) {
  Ring u = make_u3star(make_rat());
  EXPECT_EQ(u3star_embed_oracle(b(u, "E12")) * u3star_embed_oracle(b(u, "E23")), u3star_embed_oracle(b(u, "E13")));
  Upper3 id = u3star_embed_oracle(RingElement::unit(u));
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      EXPECT_EQ(id.at(r, c), r == c ? RingElement::unit(u->inner()) : RingElement(u->inner()));
}

TEST(Ring, U3starEmbeddingIsHomomorphismOnRandomPairs) {
  Ring u = make_u3star(make_grassmann(2));
  std::mt19937_64 rng(8);
  for (int it = 0; it < 200; ++it) {
    RingElement x = random_element(u, rng), y = random_element(u, rng);
    ASSERT_EQ(u3star_embed_oracle(x * y), u3star_embed_oracle(x) * u3star_embed_oracle(y));
    ASSERT_EQ(u3star_embed_oracle(x + y), u3star_embed_oracle(x) + u3star_embed_oracle(y));
  }
  VarAllocator vars;
  RingElement x = generic_element(u, vars), y = generic_element(u, vars);
  EXPECT_EQ(u3star_embed_oracle(x * y), u3star_embed_oracle(x) * u3star_embed_oracle(y));
}

TEST(Ring, CommutatorPartsReassemble) {
  Ring u = make_u3star(make_grassmann(2));
  VarAllocator vars;
  RingElement x = generic_element(u, vars), y = generic_element(u, vars);
  auto parts = u3star_commutator_parts(x, y);
  EXPECT_EQ(u3star_reassemble(u, parts), commutator(x, y));

  auto same = u3star_commutator_parts(x, x);
  EXPECT_TRUE(same.center.is_zero());
  EXPECT_TRUE(same.strict.is_zero());
  EXPECT_TRUE(same.alpha.is_zero());
}

TEST(Ring, CommutatorPartsOfScalarAndStrictElement) {
  Ring base = make_grassmann(2);
  Ring u = make_u3star(base);
  RingElement r = RingElement::basis(base, 1), s = RingElement::basis(base, 2);
  RingElement x = u3star_lift(u, r, U3Slot::identity), y = u3star_lift(u, s, U3Slot::e12);
  auto parts = u3star_commutator_parts(x, y);
  EXPECT_TRUE(parts.center.is_zero());
  EXPECT_EQ(parts.strict, u3star_lift(u, commutator(r, s), U3Slot::e12));
  EXPECT_FALSE(parts.strict.is_zero());
  EXPECT_TRUE(parts.alpha.is_zero());
}

TEST(Ring, KernelChecksPassOnEveryConstructor) {
  for (const Ring& r : {make_rat(), make_grassmann(3), make_grassmann(4), make_u3star(make_rat()),
                        make_u3star(make_u3star(make_rat())), make_full(2), make_full(3), make_full(4),
                        make_u3star(make_grassmann(4)), make_u3star(make_full(2))}) {
    for (const auto& c : kernel_checks(r)) EXPECT_TRUE(c.passed) << r->name() << " " << c.name << ": " << c.failure;
  }
}

TEST(Ring, NonCommutativeInEveryU3star) {
  for (const Ring& inner : {make_rat(), make_grassmann(2), make_full(2), make_u3star(make_rat())}) {
    Ring u = make_u3star(inner);
    RingElement e12 = u3star_lift(u, RingElement::unit(inner), U3Slot::e12);
    RingElement e23 = u3star_lift(u, RingElement::unit(inner), U3Slot::e23);
    EXPECT_FALSE(commutator(e12, e23).is_zero()) << u->name();
  }
}

TEST(Ring, CommutatorBilinearAndAntisymmetric) {
  Ring r = make_full(2);
  VarAllocator vars;
  RingElement x = generic_element(r, vars), y = generic_element(r, vars), z = generic_element(r, vars);
  EXPECT_EQ(commutator(x, y), -commutator(y, x));
  EXPECT_EQ(commutator(x + z, y), commutator(x, y) + commutator(z, y));
  EXPECT_EQ(commutator(x, Rational(3) * y), Rational(3) * commutator(x, y));
  EXPECT_TRUE(commutator(x, x).is_zero());
}

TEST(Ring, MismatchedRingsThrow) {
  Ring a = make_grassmann(2), c = make_full(2);
  EXPECT_THROW(RingElement::unit(a) * RingElement::unit(c), RingMismatch);
  EXPECT_THROW(RingElement::unit(a) + RingElement::unit(c), RingMismatch);
  // separately built descriptors with the same expression are the same ring
  EXPECT_NO_THROW(RingElement::unit(make_grassmann(2)) * RingElement::unit(a));
}

TEST(Ring, BoundsAreEnforced) {
  EXPECT_THROW(make_grassmann(0), BoundError);
  EXPECT_THROW(make_grassmann(9), BoundError);
  EXPECT_THROW(make_full(1), BoundError);
  EXPECT_THROW(make_full(5), BoundError);
  EXPECT_THROW(make_u3star(make_grassmann(5)), BoundError);
  EXPECT_NO_THROW(make_u3star(make_grassmann(4)));
  EXPECT_THROW(u3star_part(RingElement::unit(make_rat()), U3Slot::e12), PreconditionError);
}

TEST(Ring, SubstituteEvaluatesCoordinates) {
  Ring r = make_grassmann(2);
  VarAllocator vars;
  RingElement g = generic_element(r, vars);
  RingElement at = g.substitute([](VarId v) { return Rational(static_cast<std::int64_t>(v.index) + 1); });
  EXPECT_EQ(at.str(), "1 + 2*v{1} + 3*v{2} + 4*v{1,2}");
}
