#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "qenrich/error.hpp"
#include "qenrich/limits.hpp"
#include "qenrich/macneille.hpp"
#include "qenrich/relation.hpp"
#include "qenrich/space.hpp"

namespace qenrich {

inline constexpr double kDefaultClassBudget = 1e6;

enum class ClassSpec { All, Representables, FinLimPreserving };

inline ClassSpec parse_class_spec(const std::string& s) {
  if (s == "all") return ClassSpec::All;
  if (s == "representables") return ClassSpec::Representables;
  if (s == "finlim") return ClassSpec::FinLimPreserving;
  throw InvalidInput("unknown class '" + s + "' (expected all, representables or finlim)");
}

inline const char* class_spec_name(ClassSpec s) {
  switch (s) {
    case ClassSpec::All: return "all";
    case ClassSpec::Representables: return "representables";
    case ClassSpec::FinLimPreserving: return "finlim";
  }
  return "?";
}

namespace detail {

template <class Rep, class Keep>
std::vector<Vec> enumerate_class(const Space& C, ClassSpec spec, double budget, const char* what, Rep representable,
                                 std::vector<Vec> (*all)(const Space&, double), Keep keep) {
  std::vector<Vec> out;
  if (spec == ClassSpec::Representables) {
    std::unordered_set<Vec, VecHash> seen;
    for (std::size_t c = 0; c < C.size(); ++c) {
      Vec v = representable(C, c);
      if (seen.insert(v).second) out.push_back(std::move(v));
    }
    return out;
  }
  double count = std::pow(C.quantale().carrier_size(), static_cast<double>(C.size()));
  if (count > budget) throw BudgetExceeded(std::string(what) + " (use representables instead)", count, budget);
  for (auto& v : all(C, budget))
    if (spec == ClassSpec::All || keep(v)) out.push_back(std::move(v));
  return out;
}

inline std::vector<Vec> all_copresheaves(const Space& C, double b) { return enumerate_copresheaves(C, b); }
inline std::vector<Vec> all_presheaves(const Space& C, double b) { return enumerate_presheaves(C, b); }

}  // namespace detail

/// The filter class F ⊆ 𝒰C. Representables come in point order (duplicates
/// dropped); the other classes in the lexicographic carrier order.
inline std::vector<Copresheaf> enumerate_filters(const Space& C, ClassSpec spec, double budget = kDefaultClassBudget) {
  std::optional<Battery> bat;
  if (spec == ClassSpec::FinLimPreserving) bat = finite_battery(C);
  return detail::enumerate_class(
      C, spec, budget, "filter enumeration", [](const Space& S, std::size_t c) { return yoneda_up(S, c); },
      &detail::all_copresheaves, [&](const Vec& f) { return preserves_limits(C.quantale(), f, *bat); });
}

/// The ideal class I ⊆ 𝒟C.
inline std::vector<Presheaf> enumerate_ideals(const Space& C, ClassSpec spec, double budget = kDefaultClassBudget) {
  std::optional<Battery> bat;
  if (spec == ClassSpec::FinLimPreserving) bat = finite_battery(C);
  return detail::enumerate_class(
      C, spec, budget, "ideal enumeration", [](const Space& S, std::size_t c) { return yoneda_down(S, c); },
      &detail::all_presheaves, [&](const Vec& i) { return preserves_colimits(C.quantale(), i, *bat); });
}

/// I(f,i) = ⊔_c f(c)·i(c), between filters and ideals as discrete sets.
inline Context intermediate_context(const Space& C, const std::vector<Copresheaf>& F, const std::vector<Presheaf>& I) {
  if (F.empty() || I.empty()) throw InvalidInput("intermediate context needs at least one filter and one ideal");
  const auto& q = C.quantale();
  std::vector<std::string> fn, in;
  for (std::size_t k = 0; k < F.size(); ++k) fn.push_back("f" + std::to_string(k));
  for (std::size_t k = 0; k < I.size(); ++k) in.push_back("i" + std::to_string(k));
  Matrix m(F.size(), I.size(), q.bottom());
  for (std::size_t f = 0; f < F.size(); ++f)
    for (std::size_t i = 0; i < I.size(); ++i) m.at(f, i) = pair_compose(q, F[f], I[i]);
  return Context::raw(q, std::move(fn), std::move(in), std::move(m));
}

/// A canonical extension C^δ: the completion of the intermediate context of
/// chosen filter and ideal classes, with the embedding C → C^δ.
class CanExt {
 public:
  CanExt(Space base, ClassSpec fspec, ClassSpec ispec, std::vector<Copresheaf> filters, std::vector<Presheaf> ideals,
         double concept_budget = kDefaultConceptBudget)
      : base_(std::move(base)),
        fspec_(fspec),
        ispec_(ispec),
        filters_(std::move(filters)),
        ideals_(std::move(ideals)),
        delta_(enumerate_concepts(intermediate_context(base_, filters_, ideals_), concept_budget)) {
    for (std::size_t c = 0; c < base_.size(); ++c) {
      Concept k = embed(c);
      if (!is_stable(delta_.context(), k)) throw LawViolation(Violation{"embedding stability", {base_.name(c)}});
      embedding_.push_back(delta_.index_of(k));
    }
  }

  const Space& base() const { return base_; }
  const Quantale& quantale() const { return base_.quantale(); }
  ClassSpec filter_spec() const { return fspec_; }
  ClassSpec ideal_spec() const { return ispec_; }
  const std::vector<Copresheaf>& filters() const { return filters_; }
  const std::vector<Presheaf>& ideals() const { return ideals_; }
  const Completion& delta() const { return delta_; }
  const Context& context() const { return delta_.context(); }
  /// Index of [c] among the concepts.
  std::size_t embedding(std::size_t c) const { return embedding_.at(c); }
  const std::vector<std::size_t>& embedding() const { return embedding_; }

  /// [c] = (f ↦ f(c), i ↦ i(c)).
  Concept embed(std::size_t c) const {
    Concept k;
    for (const auto& f : filters_) k.extent.push_back(f.at(c));
    for (const auto& i : ideals_) k.intent.push_back(i.at(c));
    return k;
  }

  std::optional<std::size_t> filter_index(const Copresheaf& f) const { return find_in(filters_, f); }
  std::optional<std::size_t> ideal_index(const Presheaf& i) const { return find_in(ideals_, i); }

  /// I(g, j) for arbitrary vectors, not only class members.
  QVal pairing(const Copresheaf& g, const Presheaf& j) const { return pair_compose(quantale(), g, j); }

 private:
  static std::optional<std::size_t> find_in(const std::vector<Vec>& vs, const Vec& v) {
    auto it = std::find(vs.begin(), vs.end(), v);
    if (it == vs.end()) return std::nullopt;
    return static_cast<std::size_t>(it - vs.begin());
  }

  Space base_;
  ClassSpec fspec_, ispec_;
  std::vector<Copresheaf> filters_;
  std::vector<Presheaf> ideals_;
  Completion delta_;
  std::vector<std::size_t> embedding_;
};

inline CanExt canonical_extension(const Space& C, ClassSpec fspec, ClassSpec ispec,
                                  double class_budget = kDefaultClassBudget,
                                  double concept_budget = kDefaultConceptBudget) {
  return CanExt(C, fspec, ispec, enumerate_filters(C, fspec, class_budget), enumerate_ideals(C, ispec, class_budget),
                concept_budget);
}

/// lim_g [-] for any copresheaf g on C: the concept with extent
/// f' ↦ ⊓_c f'(c) ◁ g(c).
inline Concept closed_of_weight(const CanExt& E, const Copresheaf& g) {
  const auto& q = E.quantale();
  Presheaf ext;
  for (const auto& f : E.filters()) {
    QVal v = q.top();
    for (std::size_t c = 0; c < g.size(); ++c) v = q.meet(v, q.lres(f[c], g[c]));
    ext.push_back(v);
  }
  return concept_from_extent(E.context(), ext);
}

/// colim_j [-] for any presheaf j on C: the concept with intent
/// i' ↦ ⊓_c j(c) ▷ i'(c).
inline Concept open_of_weight(const CanExt& E, const Presheaf& j) {
  const auto& q = E.quantale();
  Copresheaf in;
  for (const auto& i : E.ideals()) {
    QVal v = q.top();
    for (std::size_t c = 0; c < j.size(); ++c) v = q.meet(v, q.rres(j[c], i[c]));
    in.push_back(v);
  }
  return concept_from_intent(E.context(), in);
}

/// f̄ for a filter of the class.
inline Concept closed_element(const CanExt& E, const Copresheaf& f) {
  auto k = E.filter_index(f);
  if (!k) throw InvalidInput("closed_element: not a filter of the class");
  return mc_embed_x(E.context(), *k);
}

/// ī for an ideal of the class.
inline Concept open_element(const CanExt& E, const Presheaf& i) {
  auto k = E.ideal_index(i);
  if (!k) throw InvalidInput("open_element: not an ideal of the class");
  return mc_embed_a(E.context(), *k);
}

/// C^δ(f̄, ī) = I(f,i) for every filter f and ideal i.
inline LawReport check_compactness(const CanExt& E) {
  const auto& q = E.quantale();
  LawResult r{"compactness", true, {}};
  for (std::size_t f = 0; f < E.filters().size() && r.passed; ++f) {
    Concept kf = closed_element(E, E.filters()[f]);
    for (std::size_t i = 0; i < E.ideals().size(); ++i) {
      Concept ki = open_element(E, E.ideals()[i]);
      if (mc_hom(q, kf, ki) != E.context()(f, i)) {
        r.passed = false;
        r.counterexample = {"f" + std::to_string(f), "i" + std::to_string(i)};
        break;
      }
    }
  }
  return LawReport{{r}};
}

/// Every concept is the colimit of closed elements weighted by its extent and
/// the limit of open elements weighted by its intent, found by witness
/// search in C^δ; closed and open elements are themselves limits and
/// colimits of the embedding.
inline LawReport check_density(const CanExt& E) {
  const Space& D = E.delta().space();
  std::vector<std::size_t> closed, open;
  for (const auto& f : E.filters()) closed.push_back(E.delta().index_of(closed_element(E, f)));
  for (const auto& i : E.ideals()) open.push_back(E.delta().index_of(open_element(E, i)));

  auto contains = [](const std::vector<std::size_t>& ws, std::size_t k) {
    return std::find(ws.begin(), ws.end(), k) != ws.end();
  };
  LawResult lim{"closed elements are limits of [-]", true, {}};
  for (std::size_t f = 0; f < closed.size() && lim.passed; ++f)
    if (!contains(limit(D, E.embedding(), E.filters()[f]), closed[f])) lim = {lim.law, false, {"f" + std::to_string(f)}};
  LawResult colim{"open elements are colimits of [-]", true, {}};
  for (std::size_t i = 0; i < open.size() && colim.passed; ++i)
    if (!contains(colimit(D, E.embedding(), E.ideals()[i]), open[i]))
      colim = {colim.law, false, {"i" + std::to_string(i)}};
  LawResult by_closed{"colimit of closed elements", true, {}};
  LawResult by_open{"limit of open elements", true, {}};
  for (std::size_t k = 0; k < E.delta().size(); ++k) {
    const auto& kap = E.delta().concept_at(k);
    if (by_closed.passed && !contains(colimit(D, closed, kap.extent), k))
      by_closed = {by_closed.law, false, {D.name(k)}};
    if (by_open.passed && !contains(limit(D, open, kap.intent), k)) by_open = {by_open.law, false, {D.name(k)}};
  }
  return LawReport{{lim, colim, by_closed, by_open}};
}

/// The two routes through the Yoneda embeddings agree:
/// I(C(c,-), i) = i(c) = 𝒟C(C(-,c), i) and I(f, C(-,c)) = f(c) = 𝒰C(f, C(c,-)).
inline LawReport check_yoneda_routes(const CanExt& E) {
  const auto& q = E.quantale();
  const Space& C = E.base();
  LawResult a{"I(C(c,-), i) = i(c)", true, {}};
  LawResult b{"I(f, C(-,c)) = f(c)", true, {}};
  for (std::size_t c = 0; c < C.size(); ++c) {
    Copresheaf rep_up = yoneda_up(C, c);
    Presheaf rep_down = yoneda_down(C, c);
    for (std::size_t i = 0; i < E.ideals().size() && a.passed; ++i) {
      const auto& iv = E.ideals()[i];
      if (E.pairing(rep_up, iv) != iv[c] || down_hom(q, rep_down, iv) != iv[c])
        a = {a.law, false, {C.name(c), "i" + std::to_string(i)}};
    }
    for (std::size_t f = 0; f < E.filters().size() && b.passed; ++f) {
      const auto& fv = E.filters()[f];
      if (E.pairing(fv, rep_down) != fv[c] || up_hom(q, fv, rep_up) != fv[c])
        b = {b.law, false, {"f" + std::to_string(f), C.name(c)}};
    }
  }
  return LawReport{{a, b}};
}

/// For each existing battery (co)limit of C, whether [-] carries its witness
/// to a (co)limit witness of the embedded diagram in C^δ.
struct PreservationReport {
  std::size_t checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

inline PreservationReport check_embedding_preservation(const CanExt& E, const Battery& bat) {
  const Space& D = E.delta().space();
  PreservationReport rep;
  auto image = [&](const std::vector<std::size_t>& pts) {
    std::vector<std::size_t> out;
    for (std::size_t p : pts) out.push_back(E.embedding(p));
    return out;
  };
  for (const auto& e : bat.limits) {
    ++rep.checked;
    auto ws = limit(D, image(e.image), e.weight);
    if (std::find(ws.begin(), ws.end(), E.embedding(e.witness)) == ws.end()) rep.failures.push_back(e.label);
  }
  for (const auto& e : bat.colimits) {
    ++rep.checked;
    auto ws = colimit(D, image(e.image), e.weight);
    if (std::find(ws.begin(), ws.end(), E.embedding(e.witness)) == ws.end()) rep.failures.push_back(e.label);
  }
  return rep;
}

}  // namespace qenrich
