#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "qenrich/error.hpp"
#include "qenrich/limits.hpp"
#include "qenrich/matrix.hpp"
#include "qenrich/quantale.hpp"
#include "qenrich/relation.hpp"
#include "qenrich/space.hpp"

namespace qenrich {

inline constexpr double kDefaultConceptBudget = 1e6;
// The concept space stores all pairwise distances, so its size is bounded
// independently of the enumeration budget.
inline constexpr double kMaxConceptDistances = 2.5e7;

namespace detail {
inline void check_distance_table(std::size_t n) {
  const double entries = static_cast<double>(n) * static_cast<double>(n);
  if (entries > kMaxConceptDistances)
    throw BudgetExceeded("distance table of " + std::to_string(n) + " concepts", entries, kMaxConceptDistances);
}
}  // namespace detail

/// An incidence relation I: X ⇸ A between objects and attributes.
class Context {
 public:
  /// Validates the bimodule laws against the homs of X and A.
  Context(Space X, Space A, Matrix I) : rel_(std::move(X), std::move(A), std::move(I)) {}

  /// A context over discrete object and attribute sets; any matrix is accepted.
  static Context raw(const Quantale& q, std::vector<std::string> objects, std::vector<std::string> attributes,
                     Matrix I) {
    return Context(discrete_space(q, std::move(objects)), discrete_space(q, std::move(attributes)), std::move(I));
  }

  /// The hom of C read as a context C ⇸ C.
  static Context internal_hom(const Space& C) { return Context(hom_relation(C)); }

  explicit Context(Relation r) : rel_(std::move(r)) {}

  const Space& X() const { return rel_.source(); }
  const Space& A() const { return rel_.target(); }
  const Matrix& I() const { return rel_.matrix(); }
  const Quantale& quantale() const { return rel_.quantale(); }
  const Relation& relation() const { return rel_; }
  QVal operator()(std::size_t x, std::size_t a) const { return rel_(x, a); }

 private:
  Relation rel_;
};

/// (φ ▸ I)(a) = ⊓_x φ(x) ▷ I(x,a).
inline Copresheaf up(const Context& c, const Presheaf& phi) {
  if (phi.size() != c.X().size()) throw InvalidInput("up: presheaf length differs from |X|");
  const auto& q = c.quantale();
  Copresheaf out(c.A().size(), q.top());
  for (std::size_t a = 0; a < out.size(); ++a)
    for (std::size_t x = 0; x < phi.size(); ++x) out[a] = q.meet(out[a], q.rres(phi[x], c(x, a)));
  return out;
}

/// (I ◂ ψ)(x) = ⊓_a I(x,a) ◁ ψ(a).
inline Presheaf down(const Context& c, const Copresheaf& psi) {
  if (psi.size() != c.A().size()) throw InvalidInput("down: copresheaf length differs from |A|");
  const auto& q = c.quantale();
  Presheaf out(c.X().size(), q.top());
  for (std::size_t x = 0; x < out.size(); ++x)
    for (std::size_t a = 0; a < psi.size(); ++a) out[x] = q.meet(out[x], q.lres(c(x, a), psi[a]));
  return out;
}

inline Presheaf closure(const Context& c, const Presheaf& phi) { return down(c, up(c, phi)); }
inline Copresheaf coclosure(const Context& c, const Copresheaf& psi) { return up(c, down(c, psi)); }

struct Concept {
  Presheaf extent;
  Copresheaf intent;
  friend bool operator==(const Concept&, const Concept&) = default;
};

inline bool is_stable(const Context& c, const Concept& k) {
  return up(c, k.extent) == k.intent && down(c, k.intent) == k.extent;
}

/// M(I)(κ,κ') = ⟦κ⟧ ▸ ⟦κ'⟧.
inline QVal mc_hom(const Quantale& q, const Concept& k, const Concept& k2) { return down_hom(q, k.extent, k2.extent); }

/// The MacNeille completion M(I): all concepts of a context, ordered by
/// extent in the carrier order, with the space of concepts.
class Completion {
 public:
  Completion(Context ctx, std::vector<Concept> concepts) : ctx_(std::move(ctx)), concepts_(std::move(concepts)) {
    const auto& q = ctx_.quantale();
    const std::size_t n = concepts_.size();
    detail::check_distance_table(n);
    std::vector<std::string> names;
    Matrix hom(n, n, q.bottom());
    for (std::size_t i = 0; i < n; ++i) {
      names.push_back("k" + std::to_string(i));
      index_.emplace(concepts_[i].extent, i);
      for (std::size_t j = 0; j < n; ++j) hom.at(i, j) = mc_hom(q, concepts_[i], concepts_[j]);
    }
    space_ = std::make_shared<Space>(detail::Trusted{}, q, std::move(names), std::move(hom));
  }

  const Context& context() const { return ctx_; }
  const std::vector<Concept>& concepts() const { return concepts_; }
  const Concept& concept_at(std::size_t k) const { return concepts_.at(k); }
  std::size_t size() const { return concepts_.size(); }
  const Space& space() const { return *space_; }

  std::optional<std::size_t> find_extent(const Presheaf& extent) const {
    auto it = index_.find(extent);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index_of(const Concept& k) const {
    auto i = find_extent(k.extent);
    if (!i || concepts_[*i].intent != k.intent) throw InvalidInput("pair is not a concept of this completion");
    return *i;
  }

 private:
  Context ctx_;
  std::vector<Concept> concepts_;
  std::unordered_map<Vec, std::size_t, VecHash> index_;
  std::shared_ptr<const Space> space_;
};

/// Concept from an extent known to be stable.
inline Concept concept_from_extent(const Context& c, const Presheaf& extent) { return {extent, up(c, extent)}; }
inline Concept concept_from_intent(const Context& c, const Copresheaf& intent) { return {down(c, intent), intent}; }

/// All concepts of `c`.
///
/// Every extent is a meet of scaled attribute columns x ↦ I(x,a) ◁ r, so the
/// extents are the meet-closure of those columns together with the top
/// vector. Throws BudgetExceeded once more than `budget` extents appear.
inline Completion enumerate_concepts(const Context& c, double budget = kDefaultConceptBudget) {
  const auto& q = c.quantale();
  const auto& carrier = q.carrier();
  const std::size_t nx = c.X().size();

  std::vector<Presheaf> gens;
  {
    std::unordered_set<Vec, VecHash> seen;
    for (std::size_t a = 0; a < c.A().size(); ++a)
      for (QVal r : carrier) {
        Presheaf g(nx);
        for (std::size_t x = 0; x < nx; ++x) g[x] = q.lres(c(x, a), r);
        if (seen.insert(g).second) gens.push_back(std::move(g));
      }
  }

  std::unordered_set<Vec, VecHash> extents;
  std::vector<Presheaf> frontier{Presheaf(nx, q.top())};
  extents.insert(frontier.front());
  while (!frontier.empty()) {
    std::vector<Presheaf> next;
    for (const auto& e : frontier)
      for (const auto& g : gens) {
        Presheaf m(nx);
        for (std::size_t x = 0; x < nx; ++x) m[x] = q.meet(e[x], g[x]);
        if (extents.insert(m).second) {
          if (static_cast<double>(extents.size()) > budget)
            throw BudgetExceeded("concept enumeration (" + std::to_string(gens.size()) + " generators)",
                                 static_cast<double>(extents.size()), budget);
          detail::check_distance_table(extents.size());
          next.push_back(std::move(m));
        }
      }
    frontier = std::move(next);
  }

  std::vector<Presheaf> sorted(extents.begin(), extents.end());
  std::sort(sorted.begin(), sorted.end(), [&](const Vec& a, const Vec& b) { return q.less_enum(a, b); });
  std::vector<Concept> concepts;
  concepts.reserve(sorted.size());
  for (auto& e : sorted) concepts.push_back(concept_from_extent(c, e));
  return Completion(c, std::move(concepts));
}

/// x̄ = (I ◂ I(x,-), I(x,-)).
inline Concept mc_embed_x(const Context& c, std::size_t x) {
  if (x >= c.X().size()) throw InvalidInput("mc_embed_x: unknown object");
  return concept_from_intent(c, c.I().row(x));
}

/// ā = (I(-,a), I(-,a) ▸ I).
inline Concept mc_embed_a(const Context& c, std::size_t a) {
  if (a >= c.A().size()) throw InvalidInput("mc_embed_a: unknown attribute");
  return concept_from_extent(c, c.I().col(a));
}

/// The colimit of X → M(I) weighted by φ: the concept with intent φ ▸ I.
inline Concept mc_colimit(const Context& c, const Presheaf& phi) { return concept_from_intent(c, up(c, phi)); }

/// The limit of A → M(I) weighted by ψ: the concept with extent I ◂ ψ.
inline Concept mc_limit(const Context& c, const Copresheaf& psi) { return concept_from_extent(c, down(c, psi)); }

/// The same matrix over the discrete spaces on the same points.
inline Context restrict_discrete(const Context& c) {
  return Context::raw(c.quantale(), c.X().names(), c.A().names(), c.I());
}

/// The embeddings X → M(I) and A → M(I) as space maps.
inline SpaceMap embedding_x(const Completion& m) {
  std::vector<std::size_t> a;
  for (std::size_t x = 0; x < m.context().X().size(); ++x) a.push_back(m.index_of(mc_embed_x(m.context(), x)));
  return SpaceMap(detail::Trusted{}, m.context().X(), m.space(), std::move(a));
}

inline SpaceMap embedding_a(const Completion& m) {
  std::vector<std::size_t> a;
  for (std::size_t k = 0; k < m.context().A().size(); ++k) a.push_back(m.index_of(mc_embed_a(m.context(), k)));
  return SpaceMap(detail::Trusted{}, m.context().A(), m.space(), std::move(a));
}

// ---------------------------------------------------------------------------
// Completions up to isomorphism

/// Verdict of is_completion_of; `failure` names the failed condition.
struct CompletionVerdict {
  std::optional<Violation> failure;
  bool ok() const { return !failure.has_value(); }
};

/// Checks that C with l: X → C and r: A → C is a MacNeille completion of the
/// context: C has all (co)limits weighted along l and r, C(lx, ra) = I(x,a),
/// and every point of C is the colimit of l weighted by some concept extent
/// and the limit of r weighted by the matching intent.
inline CompletionVerdict is_completion_of(const Space& C, const Context& ctx, const SpaceMap& l, const SpaceMap& r,
                                          double budget = kDefaultVectorBudget) {
  if (!(l.source() == ctx.X()) || !(r.source() == ctx.A()) || !(l.target() == C) || !(r.target() == C))
    throw InvalidInput("is_completion_of: maps must go from X and A into C");
  const auto& q = C.quantale();

  for (const auto& phi : enumerate_presheaves(ctx.X(), budget))
    if (colimit(C, l.assignment(), phi).empty()) return {Violation{"cocompleteness", {format_vec(q, phi)}}};
  for (const auto& psi : enumerate_copresheaves(ctx.A(), budget))
    if (limit(C, r.assignment(), psi).empty()) return {Violation{"completeness", {format_vec(q, psi)}}};

  for (std::size_t x = 0; x < ctx.X().size(); ++x)
    for (std::size_t a = 0; a < ctx.A().size(); ++a)
      if (C(l(x), r(a)) != ctx(x, a)) return {Violation{"C(lx, ra) = I(x,a)", {ctx.X().name(x), ctx.A().name(a)}}};

  const auto M = enumerate_concepts(ctx);
  std::vector<bool> covered(C.size(), false);
  for (const auto& k : M.concepts()) {
    auto cw = colimit(C, l.assignment(), k.extent);
    auto lw = limit(C, r.assignment(), k.intent);
    for (std::size_t c : cw)
      if (std::find(lw.begin(), lw.end(), c) != lw.end()) covered[c] = true;
  }
  for (std::size_t c = 0; c < C.size(); ++c)
    if (!covered[c]) return {Violation{"density", {C.name(c)}}};
  return {};
}

/// Mutually inverse comparison maps between two completions of one context.
struct CompletionIso {
  std::vector<std::size_t> forward;   // C → D
  std::vector<std::size_t> backward;  // D → C
};

namespace detail {
// c ↦ colim_{C(l-, c)} l_D
inline std::optional<std::vector<std::size_t>> comparison(const Space& C, const SpaceMap& lC, const Space& D,
                                                          const SpaceMap& lD) {
  std::vector<std::size_t> f;
  for (std::size_t c = 0; c < C.size(); ++c) {
    Presheaf w(lC.source().size());
    for (std::size_t x = 0; x < w.size(); ++x) w[x] = C(lC(x), c);
    auto ws = colimit(D, lD.assignment(), w);
    if (ws.empty()) return std::nullopt;
    f.push_back(ws.front());
  }
  return f;
}
}  // namespace detail

/// Builds the comparison maps f(c) = colim_{⟦κ_c⟧} l_D and g(d) = colim_{⟦κ_d⟧} l_C
/// and checks that both preserve distances exactly and compose to maps
/// isomorphic to the identities. Returns nullopt if any step fails.
inline std::optional<CompletionIso> completion_iso(const Space& C, const SpaceMap& lC, const Space& D,
                                                   const SpaceMap& lD) {
  if (!(lC.source() == lD.source())) throw InvalidInput("completion_iso: embeddings must share their source");
  auto f = detail::comparison(C, lC, D, lD);
  auto g = detail::comparison(D, lD, C, lC);
  if (!f || !g) return std::nullopt;
  for (std::size_t c = 0; c < C.size(); ++c)
    for (std::size_t c2 = 0; c2 < C.size(); ++c2)
      if (D((*f)[c], (*f)[c2]) != C(c, c2)) return std::nullopt;
  for (std::size_t d = 0; d < D.size(); ++d)
    for (std::size_t d2 = 0; d2 < D.size(); ++d2)
      if (C((*g)[d], (*g)[d2]) != D(d, d2)) return std::nullopt;
  for (std::size_t c = 0; c < C.size(); ++c)
    if (!isomorphic_points(C, (*g)[(*f)[c]], c)) return std::nullopt;
  for (std::size_t d = 0; d < D.size(); ++d)
    if (!isomorphic_points(D, (*f)[(*g)[d]], d)) return std::nullopt;
  return CompletionIso{std::move(*f), std::move(*g)};
}

}  // namespace qenrich
