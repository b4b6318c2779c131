#include <gtest/gtest.h>

#include "qenrich/oracle.hpp"
#include "support.hpp"

using namespace qtest;

TEST(Space, ValidatesExamples) {
  auto b = bool2();
  EXPECT_NO_THROW(Space(b, {"x", "y"}, mat(b, {{1, 1}, {0, 1}})));
  Space indiscrete(b, {"x", "y"}, mat(b, {{1, 1}, {1, 1}}));
  EXPECT_FALSE(underlying_order(indiscrete).skeletal);

  auto l = lawvere(10);
  EXPECT_TRUE(oracle::is_space(l, table(mat(l, {{0, 3}, {9, 0}}))));
  EXPECT_NO_THROW(Space(l, {"x", "y"}, mat(l, {{0, 3}, {9, 0}})));
}

TEST(Space, ReportsFirstViolatedAxiom) {
  auto b = bool2();
  try {
    Space(b, {"x", "y"}, mat(b, {{0, 1}, {0, 1}}));
    FAIL();
  } catch (const LawViolation& e) {
    EXPECT_EQ(e.violation().law, "reflexivity");
    EXPECT_EQ(e.violation().witnesses, std::vector<std::string>{"x"});
  }
  try {
    Space(b, {"x", "y", "z"}, mat(b, {{1, 1, 0}, {0, 1, 1}, {0, 0, 1}}));
    FAIL();
  } catch (const LawViolation& e) {
    EXPECT_EQ(e.violation().law, "transitivity");
    EXPECT_EQ(e.violation().witnesses, (std::vector<std::string>{"x", "y", "z"}));
  }
  EXPECT_THROW(Space(b, {"x"}, mat(b, {{1, 1}})), InvalidInput);
  EXPECT_THROW(Space(b, {"x", "x"}, mat(b, {{1, 0}, {0, 1}})), InvalidInput);
}

TEST(Space, ValidatorMatchesOracleOnAllBooleanMatrices) {
  auto b = bool2();
  for (unsigned m = 0; m < (1u << 9); ++m) {
    std::vector<std::vector<int>> rows(3, std::vector<int>(3));
    for (int k = 0; k < 9; ++k) rows[k / 3][k % 3] = m >> k & 1;
    Matrix h = mat(b, rows);
    bool valid = true;
    try {
      Space(b, {"x", "y", "z"}, h);
    } catch (const LawViolation&) {
      valid = false;
    }
    ASSERT_EQ(valid, oracle::is_space(b, table(h))) << m;
  }
}

TEST(Space, ValidatorMatchesOracleOnRandomChainMatrices) {
  Rng rng(11);
  for (const auto& q : {lawvere(4), similarity(2)})
    for (int trial = 0; trial < 2000; ++trial) {
      Matrix h(3, 3, q.bottom());
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) h.at(i, j) = random_value(q, rng, false);
      bool valid = !space_violation(q, {"x", "y", "z"}, h).has_value();
      ASSERT_EQ(valid, oracle::is_space(q, table(h)));
    }
}

TEST(Space, UnderlyingOrder) {
  auto c2 = chain(2);
  auto o = underlying_order(c2);
  EXPECT_TRUE(o.leq(0, 1));
  EXPECT_FALSE(o.leq(1, 0));
  EXPECT_TRUE(o.skeletal);

  auto l = lawvere(10);
  Space s(l, {"x", "y"}, mat(l, {{0, 0}, {4, 0}}));
  auto lo = underlying_order(s);
  EXPECT_TRUE(lo.leq(0, 1));
  EXPECT_FALSE(lo.leq(1, 0));

  Rng rng(3);
  for (const auto& q : small_quantales()) {
    Space X = random_space(q, 4, rng);
    auto u = underlying_order(X);
    for (std::size_t x = 0; x < 4; ++x) {
      EXPECT_TRUE(u.leq(x, x));
      for (std::size_t y = 0; y < 4; ++y)
        for (std::size_t z = 0; z < 4; ++z)
          if (u.leq(x, y) && u.leq(y, z)) {
            EXPECT_TRUE(u.leq(x, z));
          }
    }
  }
}

TEST(Space, Functors) {
  auto c2 = chain(2);
  auto id = SpaceMap::identity(c2);
  EXPECT_TRUE(order_on_maps(id, id));
  EXPECT_FALSE(functor_violation(c2, c2, {0, 1}));
  auto swap = functor_violation(c2, c2, {1, 0});
  ASSERT_TRUE(swap);
  EXPECT_EQ(swap->law, "functoriality");
  EXPECT_THROW(SpaceMap(c2, c2, {1, 0}), LawViolation);
  EXPECT_THROW(SpaceMap(c2, c2, {0}), InvalidInput);

  // A constant map is a functor exactly when every X(x,x') lies below Y(c,c).
  auto d = diamond();
  EXPECT_FALSE(functor_violation(d, c2, {1, 1, 1, 1}));
  auto l = lawvere(10);
  Space X(l, {"x", "y"}, mat(l, {{0, 2}, {2, 0}}));
  Space Y(l, {"c"}, mat(l, {{0}}));
  EXPECT_FALSE(functor_violation(X, Y, {0, 0}));
  // Over languages the unit is not the top, so the condition can fail.
  auto lang = language({"a"}, 1);
  Space loop(lang, {"x"}, Matrix(1, 1, lang.word_set({"", "a"})));
  Space point(lang, {"c"}, Matrix(1, 1, lang.unit()));
  EXPECT_TRUE(functor_violation(loop, point, {0}));
  EXPECT_FALSE(functor_violation(point, loop, {0}));

  SpaceMap lo(c2, c2, {0, 0}), hi(c2, c2, {1, 1});
  EXPECT_TRUE(order_on_maps(lo, hi));
  EXPECT_FALSE(order_on_maps(hi, lo));
}

TEST(Space, OppositeAndDiscrete) {
  auto c2 = chain(2);
  auto op = opposite_space(c2);
  EXPECT_EQ(op.hom(), c2.hom().transposed());
  EXPECT_EQ(opposite_space(op), c2);

  auto b = bool2();
  auto d = discrete_space(b, {"p", "q"});
  EXPECT_EQ(d.hom(), mat(b, {{1, 0}, {0, 1}}));

  auto lang = language({"a", "b"}, 1);
  Rng rng(5);
  Space X = random_space(lang, 3, rng);
  Space Xo = opposite_space(X);
  EXPECT_EQ(Xo.quantale(), lang.opposite());
  EXPECT_NO_THROW(Space(Xo.quantale(), Xo.names(), Xo.hom()));
}

TEST(Space, SelfEnrichment) {
  auto l = lawvere(10);
  auto s1 = self_enrichment(l, 1);
  for (unsigned r = 0; r <= 10; ++r)
    for (unsigned s = 0; s <= 10; ++s) EXPECT_EQ(s1(r, s), l.number(s > r ? s - r : 0));

  auto b = bool2();
  EXPECT_EQ(self_enrichment(b, 1).hom(), mat(b, {{1, 1}, {0, 1}}));
  EXPECT_EQ(self_enrichment(b, 2).hom(), mat(b, {{1, 0}, {1, 1}}));
  EXPECT_EQ(self_enrichment(b, 3).hom(), mat(b, {{1, 0}, {1, 1}}));
  EXPECT_EQ(self_enrichment(b, 4).hom(), mat(b, {{1, 1}, {0, 1}}));
  EXPECT_THROW(self_enrichment(b, 5), InvalidInput);

  for (const auto& q : small_quantales()) {
    Space e[4] = {self_enrichment(q, 1), self_enrichment(q, 2), self_enrichment(q, 3), self_enrichment(q, 4)};
    for (const auto& S : e) EXPECT_NO_THROW(Space(S.quantale(), S.names(), S.hom())) << q.name();
    EXPECT_EQ(e[0].hom(), e[2].hom().transposed());
    EXPECT_EQ(e[1].hom(), e[3].hom().transposed());
    if (check_quantale_laws(q).commutative) {
      EXPECT_EQ(e[0].hom(), e[3].hom());
      EXPECT_EQ(e[1].hom(), e[2].hom());
    }
    const auto& C = q.carrier();
    auto o1 = underlying_order(e[0]), o2 = underlying_order(e[1]);
    auto o3 = underlying_order(e[2]), o4 = underlying_order(e[3]);
    for (std::size_t i = 0; i < C.size(); ++i)
      for (std::size_t j = 0; j < C.size(); ++j) {
        bool le = q.leq(C[i], C[j]);
        EXPECT_EQ(o1.leq(i, j), le);
        EXPECT_EQ(o4.leq(i, j), le);
        EXPECT_EQ(o2.leq(i, j), q.leq(C[j], C[i]));
        EXPECT_EQ(o3.leq(i, j), q.leq(C[j], C[i]));
      }
  }
}

// History (a ▷ b) and prophecy (a ◁ b) homs differ on a binary alphabet.
TEST(Space, HistoryAndProphecyAutomata) {
  auto q = language({"a", "b"}, 2);
  auto h = self_enrichment(q, 1), p = self_enrichment(q, 2);
  EXPECT_NE(h.hom(), p.hom());
  QVal L = q.word_set({"a"}), M = q.word_set({"ab"});
  std::size_t i = carrier_index(q, L), j = carrier_index(q, M);
  EXPECT_EQ(h(i, j), q.rres(L, M));
  EXPECT_EQ(p(i, j), q.lres(L, M));
}
