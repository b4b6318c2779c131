#include <gtest/gtest.h>

#include "properties.hpp"

using namespace qtest;

namespace {

constexpr ClassSpec kFin = ClassSpec::FinLimPreserving;
constexpr ClassSpec kRep = ClassSpec::Representables;
constexpr ClassSpec kAll = ClassSpec::All;

// Filters and ideals of a boolean space by the textbook definition: up-sets
// (down-sets) closed under the binary meets (joins) that exist and
// containing the top (bottom) if there is one.
std::vector<Vec> textbook_filters(const Space& C, bool ideals) {
  auto b = bool2();
  auto o = underlying_order(C);
  const std::size_t n = C.size();
  auto leq = [&](std::size_t x, std::size_t y) { return ideals ? o.leq(y, x) : o.leq(x, y); };
  auto meet = [&](std::size_t x, std::size_t y) -> std::optional<std::size_t> {
    for (std::size_t m = 0; m < n; ++m) {
      if (!leq(m, x) || !leq(m, y)) continue;
      bool greatest = true;
      for (std::size_t z = 0; z < n; ++z)
        if (leq(z, x) && leq(z, y) && !leq(z, m)) greatest = false;
      if (greatest) return m;
    }
    return std::nullopt;
  };
  std::optional<std::size_t> top;
  for (std::size_t t = 0; t < n; ++t) {
    bool is_top = true;
    for (std::size_t x = 0; x < n; ++x) is_top = is_top && leq(x, t);
    if (is_top) top = t;
  }
  std::vector<Vec> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    auto in = [&](std::size_t x) { return (mask >> x & 1) != 0; };
    bool ok = !top || in(*top);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        if (in(x) && leq(x, y) && !in(y)) ok = false;
        if (auto m = meet(x, y); m && in(x) && in(y) && !in(*m)) ok = false;
      }
    if (!ok) continue;
    Vec v;
    for (std::size_t x = 0; x < n; ++x) v.push_back(b.boolean(in(x)));
    out.push_back(v);
  }
  std::sort(out.begin(), out.end(), [&](const Vec& a, const Vec& c) { return b.less_enum(a, c); });
  return out;
}

}  // namespace

TEST(CanExt, DiamondFiltersArePrincipal) {
  auto d = diamond();
  auto F = enumerate_filters(d, kFin);
  auto I = enumerate_ideals(d, kFin);
  ASSERT_EQ(F.size(), 4u);
  ASSERT_EQ(I.size(), 4u);
  for (std::size_t c = 0; c < 4; ++c) {
    EXPECT_TRUE(std::find(F.begin(), F.end(), yoneda_up(d, c)) != F.end());
    EXPECT_TRUE(std::find(I.begin(), I.end(), yoneda_down(d, c)) != I.end());
  }
}

TEST(CanExt, FinLimClassesMatchTextbookFilters) {
  Rng rng(51);
  std::vector<Space> spaces{diamond(), chain(3), antichain(2), antichain(3)};
  for (int k = 0; k < 4; ++k) spaces.push_back(random_lattice(3, rng));
  for (int k = 0; k < 4; ++k) spaces.push_back(random_space(bool2(), 4, rng));
  for (const auto& C : spaces) {
    EXPECT_EQ(enumerate_filters(C, kFin), textbook_filters(C, false));
    EXPECT_EQ(enumerate_ideals(C, kFin), textbook_filters(C, true));
  }
}

// Without a top or binary meets every up-set passes, the empty one included.
TEST(CanExt, AntichainFilters) {
  auto b = bool2();
  auto F = enumerate_filters(antichain(2), kFin);
  EXPECT_EQ(F, (std::vector<Vec>{bvec(b, {0, 0}), bvec(b, {0, 1}), bvec(b, {1, 0}), bvec(b, {1, 1})}));
  EXPECT_EQ(canonical_extension(antichain(2), kFin, kFin).delta().size(), 6u);
}

TEST(CanExt, ClassesContainRepresentables) {
  Rng rng(52);
  for (const auto& q : small_quantales()) {
    Space C = random_space(q, 3, rng);
    for (ClassSpec s : {kAll, kRep, kFin}) {
      auto F = enumerate_filters(C, s);
      auto I = enumerate_ideals(C, s);
      for (std::size_t c = 0; c < C.size(); ++c) {
        EXPECT_TRUE(std::find(F.begin(), F.end(), yoneda_up(C, c)) != F.end()) << q.name();
        EXPECT_TRUE(std::find(I.begin(), I.end(), yoneda_down(C, c)) != I.end()) << q.name();
      }
    }
  }
}

TEST(CanExt, RepresentablesAreDeduplicated) {
  auto b = bool2();
  Space C(b, {"x", "y"}, mat(b, {{1, 1}, {1, 1}}));
  EXPECT_EQ(enumerate_filters(C, kRep).size(), 1u);
  EXPECT_EQ(enumerate_filters(chain(3), kRep).size(), 3u);
}

TEST(CanExt, ClassBudget) {
  auto q = lawvere(10);
  Space C = discrete_space(q, {"a", "b", "c", "d", "e", "f", "g"});
  try {
    enumerate_filters(C, kAll);
    FAIL();
  } catch (const BudgetExceeded& e) {
    EXPECT_NE(std::string(e.what()).find("representables"), std::string::npos);
  }
  EXPECT_EQ(enumerate_filters(C, kRep).size(), 7u);
  EXPECT_THROW(parse_class_spec("some"), InvalidInput);
  EXPECT_EQ(parse_class_spec("finlim"), kFin);
  EXPECT_STREQ(class_spec_name(kRep), "representables");
}

TEST(CanExt, IntermediateContextExamples) {
  auto b = bool2();
  auto d = diamond();
  auto F = enumerate_filters(d, kAll);
  auto I = enumerate_ideals(d, kAll);
  auto ctx = intermediate_context(d, F, I);
  for (std::size_t f = 0; f < F.size(); ++f)
    for (std::size_t i = 0; i < I.size(); ++i) {
      bool meets = false;
      for (std::size_t c = 0; c < 4; ++c) meets = meets || (F[f][c] == b.top() && I[i][c] == b.top());
      EXPECT_EQ(ctx(f, i), b.boolean(meets));
    }
  EXPECT_EQ(F.front(), bvec(b, {0, 0, 0, 0}));
  for (std::size_t i = 0; i < I.size(); ++i) EXPECT_EQ(ctx(0, i), b.bottom());

  Rng rng(53);
  for (const auto& q : small_quantales()) {
    Space C = random_space(q, 3, rng);
    std::vector<Copresheaf> ups;
    std::vector<Presheaf> downs;
    for (std::size_t c = 0; c < 3; ++c) {
      ups.push_back(yoneda_up(C, c));
      downs.push_back(yoneda_down(C, c));
    }
    auto rc = intermediate_context(C, ups, downs);
    for (std::size_t c = 0; c < 3; ++c)
      for (std::size_t e = 0; e < 3; ++e) EXPECT_EQ(rc(c, e), C(c, e));
  }
  EXPECT_THROW(intermediate_context(d, {}, I), InvalidInput);
}

TEST(CanExt, OnePointAllClasses) {
  auto E = canonical_extension(one_point_space(bool2()), kAll, kAll);
  EXPECT_EQ(E.filters().size(), 2u);
  EXPECT_EQ(E.delta().size(), 3u);
  EXPECT_EQ(oracle::concepts(bool2(), table(E.context().I()), 2).size(), 3u);
}

TEST(CanExt, DiamondIsCanonicallyClosed) {
  auto d = diamond();
  auto E = canonical_extension(d, kFin, kFin);
  EXPECT_EQ(E.delta().size(), 4u);
  EXPECT_TRUE(delta_isomorphic_to_base(E));
  // closed_element(↑a) = [a]
  EXPECT_EQ(closed_element(E, yoneda_up(d, 1)), E.delta().concept_at(E.embedding(1)));
  auto r = canext_check(E);
  EXPECT_TRUE(r.ok()) << describe(r);
}

TEST(CanExt, RandomLatticesAreCanonicallyClosed) {
  Rng rng(54);
  for (int k = 0; k < 6; ++k) {
    Space C = random_lattice(3 + k % 2, rng);
    auto E = canonical_extension(C, kFin, kFin);
    EXPECT_EQ(E.delta().size(), C.size());
    EXPECT_TRUE(delta_isomorphic_to_base(E));
    auto r = canext_check(E);
    EXPECT_TRUE(r.ok()) << describe(r);
  }
}

TEST(CanExt, RepresentablesGiveTheMacNeilleCompletion) {
  Rng rng(55);
  std::vector<Space> spaces{chain(3), antichain(2), diamond(), random_space(similarity(2), 3, rng),
                            random_space(lawvere(4), 3, rng), random_space(language({"a", "b"}, 1), 2, rng)};
  for (const auto& C : spaces) {
    auto E = canonical_extension(C, kRep, kRep);
    auto M = enumerate_concepts(Context::internal_hom(C));
    SpaceMap emb(detail::Trusted{}, C, E.delta().space(), E.embedding());
    EXPECT_TRUE(completion_iso(E.delta().space(), emb, M.space(), embedding_x(M)).has_value());
    EXPECT_EQ(E.delta().size(), M.size());
    auto r = canext_check(E);
    EXPECT_TRUE(r.ok()) << describe(r);
  }
}

TEST(CanExt, CompactnessAndDensityAcrossClasses) {
  Rng rng(56);
  std::vector<Space> spaces{chain(3), antichain(2), random_space(similarity(2), 2, rng),
                            random_space(lawvere(2), 2, rng), random_space(language({"a"}, 2), 1, rng)};
  for (const auto& C : spaces)
    for (ClassSpec fs : {kAll, kRep, kFin})
      for (ClassSpec is : {kAll, kRep, kFin}) {
        auto E = canonical_extension(C, fs, is);
        auto r = canext_check(E);
        EXPECT_TRUE(r.ok()) << C.quantale().name() << " " << class_spec_name(fs) << "/" << class_spec_name(is) << ": "
                            << describe(r);
      }
}

TEST(CanExt, LargeExtensionsHitTheDistanceBudget) {
  auto l = lawvere(4);
  Space C(l, {"u", "v"}, mat(l, {{0, 4}, {4, 0}}));
  EXPECT_EQ(enumerate_filters(C, kAll).size(), 25u);
  EXPECT_THROW(canonical_extension(C, kAll, kAll), BudgetExceeded);
  auto E = canonical_extension(C, kRep, kRep);
  EXPECT_EQ(E.delta().size(), oracle::concepts(l, table(E.context().I()), E.ideals().size()).size());
}

TEST(CanExt, PreservationDependsOnTheClasses) {
  auto d = diamond();
  auto fin = canonical_extension(d, kFin, kFin);
  auto bat = finite_battery(d);
  auto good = check_embedding_preservation(fin, bat);
  EXPECT_TRUE(good.ok());
  EXPECT_EQ(good.checked, bat.limits.size() + bat.colimits.size());

  auto all = canonical_extension(d, kAll, kAll);
  auto bad = check_embedding_preservation(all, bat);
  EXPECT_FALSE(bad.ok());
  EXPECT_EQ(bad.failures.front(), "empty meet");
  EXPECT_TRUE(std::find(bad.failures.begin(), bad.failures.end(), "meet (a, b)") != bad.failures.end());

  auto rep = canonical_extension(d, kRep, kRep);
  EXPECT_TRUE(check_embedding_preservation(rep, bat).ok());
}

TEST(CanExt, ClosedAndOpenElementErrors) {
  auto E = canonical_extension(chain(2), kRep, kRep);
  auto b = bool2();
  EXPECT_THROW(closed_element(E, bvec(b, {0, 0})), InvalidInput);
  EXPECT_THROW(open_element(E, bvec(b, {0, 0})), InvalidInput);
  // Outside the class the weighted formulas still give concepts.
  auto k = closed_of_weight(E, bvec(b, {0, 0}));
  EXPECT_TRUE(is_stable(E.context(), k));
}
