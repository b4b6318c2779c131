#include <gtest/gtest.h>

#include <set>
#include <string>

#include "qenrich/oracle.hpp"
#include "support.hpp"

using namespace qtest;

TEST(Quantale, MultiplicationExamples) {
  auto b = bool2();
  EXPECT_EQ(b.mul(b.boolean(true), b.boolean(true)), b.boolean(true));
  EXPECT_EQ(b.mul(b.boolean(true), b.boolean(false)), b.boolean(false));

  auto l = lawvere(10);
  EXPECT_EQ(l.mul(l.number(3), l.number(4)), l.number(7));
  EXPECT_EQ(l.mul(l.number(6), l.number(7)), l.number(10));

  auto lang = language({"a", "b"}, 2);
  EXPECT_EQ(lang.mul(lang.word_set({"a"}), lang.word_set({"b", "ab"})), lang.word_set({"ab"}));
}

TEST(Quantale, JoinAndMeetExamples) {
  auto b = bool2();
  Vec bs{b.boolean(false), b.boolean(true)};
  EXPECT_EQ(b.join(bs), b.boolean(true));

  auto l = lawvere(10);
  Vec ls{l.number(3), l.number(7)};
  EXPECT_EQ(l.join(ls), l.number(3));
  EXPECT_EQ(l.meet(ls), l.number(7));

  auto s = similarity(5);
  Vec ss{s.number(2), s.infinity()};
  EXPECT_EQ(s.meet(ss), s.number(2));

  for (const auto& q : standard_quantales()) {
    EXPECT_EQ(q.join(Vec{}), q.bottom()) << q.name();
    EXPECT_EQ(q.meet(Vec{}), q.top()) << q.name();
  }
}

TEST(Quantale, ResidualExamples) {
  auto l = lawvere(10);
  EXPECT_EQ(l.lres(l.number(5), l.number(3)), l.number(2));

  auto s = similarity(5);
  EXPECT_EQ(s.rres(s.number(2), s.number(5)), s.infinity());
  EXPECT_EQ(s.rres(s.number(5), s.number(2)), s.number(2));
}

// Truncated residual: every word w with |a w| > 2 satisfies the condition
// vacuously, so the nine words of length two join {b, c}.
TEST(Quantale, LanguageResidualInsideTheQuotient) {
  auto q = language({"a", "b", "c"}, 2);
  QVal a = q.word_set({"a"}), m = q.word_set({"ab", "ac"});
  QVal r = q.rres(a, m);
  EXPECT_EQ(r, oracle::rres(q, a, m));
  EXPECT_EQ(r, q.word_set({"b", "c", "aa", "ab", "ac", "ba", "bb", "bc", "ca", "cb", "cc"}));

  std::vector<std::string> short_words;
  for (const auto& w : q.words_of(r))
    if (w.size() < 2) short_words.push_back(w);
  EXPECT_EQ(short_words, (std::vector<std::string>{"b", "c"}));
}

TEST(Quantale, ResidualsAgreeWithOracleEverywhere) {
  for (const auto& q : standard_quantales())
    for (QVal a : q.carrier())
      for (QVal c : q.carrier()) {
        ASSERT_EQ(q.rres(a, c), oracle::rres(q, a, c)) << q.name();
        ASSERT_EQ(q.lres(c, a), oracle::lres(q, c, a)) << q.name();
      }
}

TEST(Quantale, LawSuitePassesOnStandardInstances) {
  for (const auto& q : standard_quantales()) {
    auto rep = check_quantale_laws(q);
    for (const auto& r : rep.laws.results) EXPECT_TRUE(r.passed) << q.name() << ": " << r.law;
    EXPECT_EQ(rep.laws.results.size(), 18u);
  }
}

TEST(Quantale, UnaryLanguageIsCommutative) {
  auto q = language({"a"}, 3);
  auto rep = check_quantale_laws(q);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.carrier_size, 16u);
  EXPECT_TRUE(rep.commutative);
  EXPECT_TRUE(rep.residuals_coincide);
  EXPECT_TRUE(q.commutative());
}

TEST(Quantale, BinaryLanguageIsNotCommutative) {
  auto q = language({"a", "b"}, 2);
  auto rep = check_quantale_laws(q);
  EXPECT_FALSE(rep.commutative);
  EXPECT_FALSE(rep.residuals_coincide);
  EXPECT_FALSE(q.commutative());
}

TEST(Quantale, CommutativeInstancesHaveOneResidual) {
  for (const auto& q : {bool2(), lawvere(10), similarity(5)}) {
    auto rep = check_quantale_laws(q);
    EXPECT_TRUE(rep.commutative) << q.name();
    EXPECT_TRUE(rep.residuals_coincide) << q.name();
  }
}

TEST(Quantale, LatticeOperationLaws) {
  for (const auto& q : small_quantales()) {
    const auto& C = q.carrier();
    for (QVal a : C) {
      EXPECT_EQ(q.join(a, a), a);
      EXPECT_EQ(q.meet(a, a), a);
      EXPECT_EQ(q.join(a, q.bottom()), a);
      EXPECT_EQ(q.meet(a, q.top()), a);
      for (QVal b : C) {
        EXPECT_EQ(q.join(a, b), q.join(b, a));
        EXPECT_EQ(q.meet(a, b), q.meet(b, a));
        for (QVal c : C) {
          EXPECT_EQ(q.join(q.join(a, b), c), q.join(a, q.join(b, c)));
          EXPECT_EQ(q.meet(q.meet(a, b), c), q.meet(a, q.meet(b, c)));
        }
      }
    }
  }
}

TEST(Quantale, Opposite) {
  auto q = language({"a", "b"}, 2);
  auto o = q.opposite();
  EXPECT_TRUE(o.is_opposite());
  EXPECT_EQ(o.mul(q.word_set({"a"}), q.word_set({"b"})), q.word_set({"ba"}));
  EXPECT_EQ(o.opposite(), q);
  EXPECT_EQ(bool2().opposite().name(), "Bool2^o");

  const auto oo = o.opposite();
  for (QVal a : q.carrier())
    for (QVal b : q.carrier()) {
      ASSERT_EQ(oo.mul(a, b), q.mul(a, b));
      ASSERT_EQ(oo.rres(a, b), q.rres(a, b));
      ASSERT_EQ(oo.lres(a, b), q.lres(a, b));
      ASSERT_EQ(o.rres(a, b), q.lres(b, a));
      ASSERT_EQ(o.lres(b, a), q.rres(a, b));
    }
  EXPECT_TRUE(check_quantale_laws(o).ok());
  auto b = bool2();
  for (QVal x : b.carrier())
    for (QVal y : b.carrier()) EXPECT_EQ(b.opposite().mul(x, y), b.mul(x, y));
}

namespace {
std::set<std::string> concat_all(const std::set<std::string>& a, const std::set<std::string>& b) {
  std::set<std::string> out;
  for (const auto& x : a)
    for (const auto& y : b) out.insert(x + y);
  return out;
}
std::vector<std::string> truncate(const std::set<std::string>& s, std::size_t n) {
  std::vector<std::string> out;
  for (const auto& w : s)
    if (w.size() <= n) out.push_back(w);
  return out;
}
}  // namespace

TEST(Quantale, TruncationIsAQuotient) {
  auto q = language({"a", "b"}, 2);
  std::vector<std::string> long_words{"", "a", "b", "aa", "ab", "ba", "bb", "aab", "bab", "abb", "bbb", "aba"};
  Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    std::set<std::string> l1, l2;
    for (const auto& w : long_words) {
      if (rng() % 3 == 0) l1.insert(w);
      if (rng() % 3 == 0) l2.insert(w);
    }
    QVal full = q.word_set(truncate(concat_all(l1, l2), 2));
    QVal quotient = q.mul(q.word_set(truncate(l1, 2)), q.word_set(truncate(l2, 2)));
    ASSERT_EQ(full, quotient);
  }
}

TEST(Quantale, CarrierOrderIsFixed) {
  auto b = bool2();
  EXPECT_EQ(b.carrier(), (Vec{b.boolean(false), b.boolean(true)}));
  auto s = similarity(2);
  EXPECT_EQ(s.carrier(), (Vec{s.number(0), s.number(1), s.number(2), s.infinity()}));
  auto l = language({"a", "b"}, 1);
  const auto& C = l.carrier();
  ASSERT_EQ(C.size(), 8u);
  EXPECT_EQ(l.format(C[0]), "{}");
  EXPECT_EQ(l.format(C[1]), "{eps}");
  EXPECT_EQ(l.format(C[2]), "{a}");
  EXPECT_EQ(l.format(C[3]), "{b}");
  EXPECT_EQ(l.format(C[4]), "{eps,a}");
  EXPECT_EQ(l.format(C[7]), "{eps,a,b}");
}

TEST(Quantale, Errors) {
  auto b = bool2();
  auto l = lawvere(10);
  EXPECT_THROW(b.mul(b.boolean(true), l.number(3)), InvalidInput);
  EXPECT_THROW(l.number(11), InvalidInput);
  EXPECT_THROW(similarity(3).number(4), InvalidInput);
  EXPECT_THROW(Quantale(LawvereChain{0}), InvalidInput);
  EXPECT_THROW(language({"a", "a"}, 1), InvalidInput);
  EXPECT_THROW(language({"ab"}, 1), InvalidInput);
  EXPECT_THROW(language({"a", "b"}, 6), InvalidInput);
  EXPECT_THROW(language({"a", "b"}, 5).carrier(), BudgetExceeded);
  EXPECT_THROW(check_quantale_laws(lawvere(10), 100), BudgetExceeded);
  EXPECT_THROW(language({"a"}, 1).word_set({"b"}), InvalidInput);
}

TEST(Quantale, ReportLookup) {
  auto rep = check_quantale_laws(lawvere(3));
  ASSERT_NE(rep.laws.find("associativity"), nullptr);
  EXPECT_EQ(rep.laws.find("no such law"), nullptr);
  EXPECT_TRUE(rep.laws.find("mixed associativity r>(s<t) = (r>s)<t")->passed);
}
