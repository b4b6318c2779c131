#include <gtest/gtest.h>

#include "properties.hpp"

using namespace qtest;

namespace {

constexpr ClassSpec kFin = ClassSpec::FinLimPreserving;
constexpr ClassSpec kRep = ClassSpec::Representables;
constexpr ClassSpec kAll = ClassSpec::All;

FunctorExtension extension_of(const SpaceMap& G, ClassSpec fs, ClassSpec is) {
  return FunctorExtension(G, canonical_extension(G.source(), fs, is), canonical_extension(G.target(), fs, is));
}

}  // namespace

TEST(FunExt, PushforwardsOfRepresentables) {
  auto d = diamond();
  auto c3 = chain(3);
  SpaceMap G(d, c3, {0, 2, 0, 2});
  for (std::size_t c = 0; c < 4; ++c) {
    EXPECT_EQ(gpi(G, yoneda_down(d, c)), yoneda_down(c3, G(c)));
    EXPECT_EQ(gsigma(G, yoneda_up(d, c)), yoneda_up(c3, G(c)));
  }
  EXPECT_EQ(precompose(G, yoneda_up(c3, 1)), bvec(bool2(), {0, 1, 0, 1}));
  EXPECT_THROW(precompose(G, bvec(bool2(), {1, 1})), InvalidInput);
}

TEST(FunExt, IdentityOnTheDiamond) {
  auto X = extension_of(SpaceMap::identity(diamond()), kFin, kFin);
  auto r = funext_check(X, true);
  EXPECT_TRUE(r.ok()) << describe(r);
  auto t = extension_tables(X);
  for (std::size_t k = 0; k < t.l.size(); ++k) {
    EXPECT_EQ(t.l[k], k);
    EXPECT_EQ(t.pi[k], k);
    EXPECT_EQ(t.sigma[k], k);
    EXPECT_EQ(t.r[k], k);
  }
}

TEST(FunExt, LatticeHomomorphismOntoTheChain) {
  SpaceMap G(diamond(), chain(3), {0, 2, 0, 2});
  auto X = extension_of(G, kFin, kFin);
  auto rep = check_adjunctions(X);
  EXPECT_TRUE(rep.l_closed);
  EXPECT_TRUE(rep.r_closed);
  EXPECT_TRUE(rep.pi_closed);
  EXPECT_TRUE(rep.sigma_closed);
  auto r = funext_check(X, true);
  EXPECT_TRUE(r.ok()) << describe(r);
}

TEST(FunExt, AtomSwap) {
  auto X = extension_of(SpaceMap(diamond(), diamond(), {0, 2, 1, 3}), kFin, kFin);
  auto r = funext_check(X, true);
  EXPECT_TRUE(r.ok()) << describe(r);
  auto t = extension_tables(X);
  const auto& E = X.source();
  EXPECT_EQ(t.pi[E.embedding(1)], E.embedding(2));
}

TEST(FunExt, RepresentableClassesOverSimilarity) {
  Rng rng(61);
  Space C = random_space(similarity(2), 3, rng);
  auto X = extension_of(SpaceMap::identity(C), kRep, kRep);
  auto r = funext_check(X, true);
  EXPECT_TRUE(r.ok()) << describe(r);
}

TEST(FunExt, ExchangeHoldsForEveryClassChoice) {
  Rng rng(62);
  std::vector<SpaceMap> maps{SpaceMap(diamond(), chain(3), {0, 1, 1, 2}), SpaceMap(chain(2), diamond(), {0, 3}),
                             SpaceMap(antichain(2), chain(2), {0, 1})};
  for (int k = 0; k < 3; ++k) {
    auto q = k == 0 ? lawvere(3) : similarity(2);
    Space C = random_space(q, 2, rng);
    maps.push_back(SpaceMap::identity(C));
  }
  for (const auto& G : maps)
    for (ClassSpec fs : {kAll, kRep, kFin})
      for (ClassSpec is : {kAll, kRep, kFin}) {
        auto X = extension_of(G, fs, is);
        auto r = funext_check(X, false);
        EXPECT_TRUE(r.ok()) << class_spec_name(fs) << "/" << class_spec_name(is) << ": " << describe(r);
      }
}

// (0,1,1,2) sends both atoms to the middle of the chain, so it does not
// preserve the meet a ∧ b and the pullback of ↑c1 is no filter.
TEST(FunExt, NonMeetPreservingMapNamesItsViolator) {
  SpaceMap G(diamond(), chain(3), {0, 1, 1, 2});
  auto X = extension_of(G, kFin, kFin);
  ASSERT_TRUE(X.l_violator().has_value());
  const auto& k = X.target().delta().concept_at(0);
  try {
    glift_l(X, k);
    FAIL() << "expected PreconditionFailed";
  } catch (const PreconditionFailed& e) {
    EXPECT_EQ(e.violator(), "filter (0,1,1) of the target");
    EXPECT_NE(std::string(e.what()).find("G_l"), std::string::npos);
  }
  auto rep = check_adjunctions(X);
  EXPECT_FALSE(rep.l_closed);
  EXPECT_EQ(rep.laws.find("G^l -| G^pi"), nullptr);
}

TEST(FunExt, MismatchedExtensionsAreRejected) {
  SpaceMap G(chain(2), diamond(), {0, 3});
  EXPECT_THROW(FunctorExtension(G, canonical_extension(diamond(), kFin, kFin), canonical_extension(diamond(), kFin, kFin)),
               InvalidInput);
  EXPECT_THROW(SpaceMap(diamond(), chain(3), {2, 1, 1, 0}), LawViolation);
}
