#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qenrich/error.hpp"
#include "qenrich/quantale.hpp"
#include "qenrich/relation.hpp"
#include "qenrich/space.hpp"

namespace qenrich {

// ---------------------------------------------------------------------------
// Witness search
//
// A diagram is given by the images G(d) ∈ B of the shape points, in shape
// order. The shape's own hom only matters through the weight, which the
// caller has already validated against it.

namespace detail {

inline void check_diagram(const Space& B, const std::vector<std::size_t>& image, const Vec& weight) {
  if (image.size() != weight.size()) throw InvalidInput("weight and diagram have different lengths");
  for (std::size_t p : image)
    if (p >= B.size()) throw InvalidInput("diagram point out of range");
  for (QVal v : weight) B.quantale().require(v);
}

// All b* whose hom row (or column) equals `target` exactly, in point order.
inline std::vector<std::size_t> match_row(const Space& B, const Vec& target, bool row) {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < B.size(); ++s) {
    bool ok = true;
    for (std::size_t b = 0; b < B.size() && ok; ++b) ok = (row ? B(s, b) : B(b, s)) == target[b];
    if (ok) out.push_back(s);
  }
  return out;
}

}  // namespace detail

/// φ ▸ B(G,-): the hom row any colimit must have.
inline Vec colimit_profile(const Space& B, const std::vector<std::size_t>& image, const Presheaf& phi) {
  detail::check_diagram(B, image, phi);
  const auto& q = B.quantale();
  Vec t(B.size(), q.top());
  for (std::size_t b = 0; b < B.size(); ++b)
    for (std::size_t d = 0; d < image.size(); ++d) t[b] = q.meet(t[b], q.rres(phi[d], B(image[d], b)));
  return t;
}

/// B(-,G) ◂ ψ: the hom column any limit must have.
inline Vec limit_profile(const Space& B, const std::vector<std::size_t>& image, const Copresheaf& psi) {
  detail::check_diagram(B, image, psi);
  const auto& q = B.quantale();
  Vec t(B.size(), q.top());
  for (std::size_t b = 0; b < B.size(); ++b)
    for (std::size_t d = 0; d < image.size(); ++d) t[b] = q.meet(t[b], q.lres(B(b, image[d]), psi[d]));
  return t;
}

/// Points b* with B(b*,b) = ⊓_d φ(d) ▷ B(Gd,b) for every b; empty if none.
inline std::vector<std::size_t> colimit(const Space& B, const std::vector<std::size_t>& image, const Presheaf& phi) {
  return detail::match_row(B, colimit_profile(B, image, phi), true);
}

/// Points b* with B(b,b*) = ⊓_d B(b,Gd) ◁ ψ(d) for every b; empty if none.
inline std::vector<std::size_t> limit(const Space& B, const std::vector<std::size_t>& image, const Copresheaf& psi) {
  return detail::match_row(B, limit_profile(B, image, psi), false);
}

inline std::vector<std::size_t> colimit(const SpaceMap& G, const Presheaf& phi) {
  if (!is_presheaf(G.source(), phi)) throw InvalidInput("colimit weight is not a presheaf on the diagram shape");
  return colimit(G.target(), G.assignment(), phi);
}

inline std::vector<std::size_t> limit(const SpaceMap& G, const Copresheaf& psi) {
  if (!is_copresheaf(G.source(), psi)) throw InvalidInput("limit weight is not a copresheaf on the diagram shape");
  return limit(G.target(), G.assignment(), psi);
}

/// g ⋆ r: B(t,b) = r ▷ B(g,b).
inline std::vector<std::size_t> tensor(const Space& B, std::size_t g, QVal r) { return colimit(B, {g}, {r}); }

/// g ↑ r: B(b,p) = B(b,g) ◁ r.
inline std::vector<std::size_t> power(const Space& B, std::size_t g, QVal r) { return limit(B, {g}, {r}); }

/// Conical join of a set of points (constant weight e).
inline std::vector<std::size_t> conical_join(const Space& B, const std::vector<std::size_t>& pts) {
  return colimit(B, pts, Vec(pts.size(), B.quantale().unit()));
}

inline std::vector<std::size_t> conical_meet(const Space& B, const std::vector<std::size_t>& pts) {
  return limit(B, pts, Vec(pts.size(), B.quantale().unit()));
}

// ---------------------------------------------------------------------------
// Pointwise formulas

/// Colimit in Ω with hom a ▷ b: ⊔_d Gd·φd.
inline QVal pointwise_colim_omega(const Quantale& q, const Vec& G, const Presheaf& phi) {
  QVal acc = q.bottom();
  for (std::size_t d = 0; d < G.size(); ++d) acc = q.join(acc, q.mul(G[d], phi[d]));
  return acc;
}

/// Limit in Ω with hom a ▷ b: ⊓_d Gd ◁ ψd.
inline QVal pointwise_lim_omega(const Quantale& q, const Vec& G, const Copresheaf& psi) {
  QVal acc = q.top();
  for (std::size_t d = 0; d < G.size(); ++d) acc = q.meet(acc, q.lres(G[d], psi[d]));
  return acc;
}

/// Colimit in 𝒟X of presheaves G(d): x ↦ ⊔_d G(d)(x)·φ(d).
inline Presheaf pointwise_colim_down(const Quantale& q, const std::vector<Presheaf>& G, const Presheaf& phi,
                                     std::size_t n) {
  Presheaf out(n, q.bottom());
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t d = 0; d < G.size(); ++d) out[x] = q.join(out[x], q.mul(G[d][x], phi[d]));
  return out;
}

/// Limit in 𝒟X: x ↦ ⊓_d G(d)(x) ◁ ψ(d).
inline Presheaf pointwise_lim_down(const Quantale& q, const std::vector<Presheaf>& G, const Copresheaf& psi,
                                   std::size_t n) {
  Presheaf out(n, q.top());
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t d = 0; d < G.size(); ++d) out[x] = q.meet(out[x], q.lres(G[d][x], psi[d]));
  return out;
}

/// Colimit in 𝒰A of copresheaves G(d): a ↦ ⊓_d φ(d) ▷ G(d)(a).
inline Copresheaf pointwise_colim_up(const Quantale& q, const std::vector<Copresheaf>& G, const Presheaf& phi,
                                     std::size_t n) {
  Copresheaf out(n, q.top());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t d = 0; d < G.size(); ++d) out[a] = q.meet(out[a], q.rres(phi[d], G[d][a]));
  return out;
}

/// Limit in 𝒰A: a ↦ ⊔_d ψ(d)·G(d)(a).
inline Copresheaf pointwise_lim_up(const Quantale& q, const std::vector<Copresheaf>& G, const Copresheaf& psi,
                                   std::size_t n) {
  Copresheaf out(n, q.bottom());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t d = 0; d < G.size(); ++d) out[a] = q.join(out[a], q.mul(psi[d], G[d][a]));
  return out;
}

// ---------------------------------------------------------------------------
// Finite (co)limit battery

/// One existing weighted (co)limit of a space, with its first witness.
struct BatteryEntry {
  std::string label;
  std::vector<std::size_t> image;
  Vec weight;
  std::size_t witness = 0;
};

/// Empty and binary conical meets, all powers (limits) and the dual joins
/// and tensors (colimits), restricted to those that exist.
struct Battery {
  std::vector<BatteryEntry> limits;
  std::vector<BatteryEntry> colimits;
};

inline Battery finite_battery(const Space& C) {
  const auto& q = C.quantale();
  const auto& carrier = q.carrier();
  Battery bat;
  auto add = [&](std::vector<BatteryEntry>& into, std::string label, std::vector<std::size_t> image, Vec weight,
                 const std::vector<std::size_t>& ws) {
    if (!ws.empty()) into.push_back(BatteryEntry{std::move(label), std::move(image), std::move(weight), ws.front()});
  };

  add(bat.limits, "empty meet", {}, {}, conical_meet(C, {}));
  add(bat.colimits, "empty join", {}, {}, conical_join(C, {}));
  for (std::size_t x = 0; x < C.size(); ++x)
    for (std::size_t y = x + 1; y < C.size(); ++y) {
      const std::string pair = "(" + C.name(x) + ", " + C.name(y) + ")";
      add(bat.limits, "meet " + pair, {x, y}, {q.unit(), q.unit()}, conical_meet(C, {x, y}));
      add(bat.colimits, "join " + pair, {x, y}, {q.unit(), q.unit()}, conical_join(C, {x, y}));
    }
  for (std::size_t g = 0; g < C.size(); ++g)
    for (QVal r : carrier) {
      const std::string tag = "(" + C.name(g) + ", " + q.format(r) + ")";
      add(bat.limits, "power " + tag, {g}, {r}, power(C, g, r));
      add(bat.colimits, "tensor " + tag, {g}, {r}, tensor(C, g, r));
    }
  return bat;
}

/// First battery limit not preserved by the copresheaf f: f(w) ≠ ⊓_d f(Gd) ◁ ψ(d).
inline std::optional<Violation> limit_preservation_violation(const Quantale& q, const Copresheaf& f,
                                                             const Battery& bat) {
  for (const auto& e : bat.limits) {
    QVal want = q.top();
    for (std::size_t d = 0; d < e.image.size(); ++d) want = q.meet(want, q.lres(f[e.image[d]], e.weight[d]));
    if (f[e.witness] != want) return Violation{"preserves " + e.label, {q.format(f[e.witness]), q.format(want)}};
  }
  return std::nullopt;
}

/// First battery colimit not preserved by the presheaf i: i(w) ≠ ⊓_d φ(d) ▷ i(Gd).
inline std::optional<Violation> colimit_preservation_violation(const Quantale& q, const Presheaf& i,
                                                               const Battery& bat) {
  for (const auto& e : bat.colimits) {
    QVal want = q.top();
    for (std::size_t d = 0; d < e.image.size(); ++d) want = q.meet(want, q.rres(e.weight[d], i[e.image[d]]));
    if (i[e.witness] != want) return Violation{"preserves " + e.label, {q.format(i[e.witness]), q.format(want)}};
  }
  return std::nullopt;
}

inline bool preserves_limits(const Quantale& q, const Copresheaf& f, const Battery& bat) {
  return !limit_preservation_violation(q, f, bat);
}

inline bool preserves_colimits(const Quantale& q, const Presheaf& i, const Battery& bat) {
  return !colimit_preservation_violation(q, i, bat);
}

// ---------------------------------------------------------------------------
// Automata over a language quantale

struct Transition {
  std::string from;
  std::string to;
  std::string symbol;
};

/// The space of states whose hom A(p,q) is the (truncated) language of paths
/// from p to q: the reflexive-transitive closure of the transition matrix.
inline Space automaton_space(const Quantale& q, const std::vector<std::string>& states,
                             const std::vector<Transition>& transitions) {
  if (q.kind() != Kind::Language) throw InvalidInput("automata need a language quantale");
  const std::size_t n = states.size();
  Space names_only = discrete_space(q, states);
  Matrix h(n, n, q.bottom());
  for (std::size_t s = 0; s < n; ++s) h.at(s, s) = q.unit();
  for (const auto& t : transitions) {
    std::size_t a = names_only.index(t.from), b = names_only.index(t.to);
    h.at(a, b) = q.join(h(a, b), q.word_set({t.symbol}));
  }
  for (;;) {
    Matrix next = h;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z) next.at(x, z) = q.join(next(x, z), q.mul(h(x, y), h(y, z)));
    if (next == h) break;
    h = std::move(next);
  }
  return Space(detail::Trusted{}, q, states, std::move(h));
}

namespace detail {
inline Vec epsilon_flags(const Space& A, const std::vector<bool>& flags) {
  if (flags.size() != A.size()) throw InvalidInput("one flag per state expected");
  const auto& q = A.quantale();
  Vec v(flags.size(), q.bottom());
  for (std::size_t k = 0; k < flags.size(); ++k)
    if (flags[k]) v[k] = q.unit();
  return v;
}
}  // namespace detail

/// The language accepted from each state: q' ↦ ⊔_q A(q',q)·final(q).
/// This is the colimit in 𝒟A of the representables A(-,q) weighted by `final`.
inline Presheaf observability(const Space& A, const std::vector<bool>& final_states) {
  const auto& q = A.quantale();
  std::vector<Presheaf> reps;
  for (std::size_t s = 0; s < A.size(); ++s) reps.push_back(yoneda_down(A, s));
  return pointwise_colim_down(q, reps, detail::epsilon_flags(A, final_states), A.size());
}

/// The language leading to each state: q ↦ ⊔_{q0} initial(q0)·A(q0,q).
/// In 𝒰A, whose order is reverse inclusion, this is the pointwise limit of
/// the representables A(q0,-) weighted by `initial`.
inline Copresheaf reachability(const Space& A, const std::vector<bool>& initial_states) {
  const auto& q = A.quantale();
  std::vector<Copresheaf> reps;
  for (std::size_t s = 0; s < A.size(); ++s) reps.push_back(yoneda_up(A, s));
  return pointwise_lim_up(q, reps, detail::epsilon_flags(A, initial_states), A.size());
}

}  // namespace qenrich
