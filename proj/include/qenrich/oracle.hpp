#pragma once

// Brute-force reference implementations. They use only the carrier, the
// order, binary joins/meets and multiplication of a quantale, and never call
// the residuals or any routine from the space, relation, limits or
// completion code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "qenrich/error.hpp"
#include "qenrich/quantale.hpp"

namespace qenrich::oracle {

using Table = std::vector<Vec>;  // row-major square or rectangular matrix

inline constexpr double kConceptBudget = 1e5;

/// ⊔{b : a·b ⊑ c}.
inline QVal rres(const Quantale& q, QVal a, QVal c) {
  QVal acc = q.bottom();
  for (QVal b : q.carrier())
    if (q.leq(q.mul(a, b), c)) acc = q.join(acc, b);
  return acc;
}

/// ⊔{b : b·a ⊑ c}.
inline QVal lres(const Quantale& q, QVal c, QVal a) {
  QVal acc = q.bottom();
  for (QVal b : q.carrier())
    if (q.leq(q.mul(b, a), c)) acc = q.join(acc, b);
  return acc;
}

inline bool is_space(const Quantale& q, const Table& h) {
  const std::size_t n = h.size();
  for (std::size_t x = 0; x < n; ++x) {
    if (h[x].size() != n) return false;
    if (!q.leq(q.unit(), h[x][x])) return false;
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (!q.leq(q.mul(h[x][y], h[y][z]), h[x][z])) return false;
  return true;
}

inline bool is_bimodule(const Quantale& q, const Table& X, const Table& A, const Table& R) {
  for (std::size_t x = 0; x < X.size(); ++x)
    for (std::size_t x2 = 0; x2 < X.size(); ++x2)
      for (std::size_t a = 0; a < A.size(); ++a)
        if (!q.leq(q.mul(X[x2][x], R[x][a]), R[x2][a])) return false;
  for (std::size_t x = 0; x < X.size(); ++x)
    for (std::size_t a = 0; a < A.size(); ++a)
      for (std::size_t a2 = 0; a2 < A.size(); ++a2)
        if (!q.leq(q.mul(R[x][a], A[a][a2]), R[x][a2])) return false;
  return true;
}

struct ConceptPair {
  Vec extent;
  Vec intent;
  friend bool operator==(const ConceptPair&, const ConceptPair&) = default;
};

/// Every intent vector in carrier^|A| is sent to (I ◂ ψ, (I ◂ ψ) ▸ I); the
/// distinct pairs are returned sorted by extent in the carrier order.
inline std::vector<ConceptPair> concepts(const Quantale& q, const Table& I, std::size_t n_attributes,
                                         double budget = kConceptBudget) {
  const auto& C = q.carrier();
  double count = std::pow(static_cast<double>(C.size()), static_cast<double>(n_attributes));
  if (count > budget) throw BudgetExceeded("oracle concept enumeration", count, budget);
  const std::size_t nx = I.size();

  auto extent_of = [&](const Vec& psi) {
    Vec e(nx, q.top());
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t a = 0; a < n_attributes; ++a) e[x] = q.meet(e[x], lres(q, I[x][a], psi[a]));
    return e;
  };
  auto intent_of = [&](const Vec& phi) {
    Vec t(n_attributes, q.top());
    for (std::size_t a = 0; a < n_attributes; ++a)
      for (std::size_t x = 0; x < nx; ++x) t[a] = q.meet(t[a], rres(q, phi[x], I[x][a]));
    return t;
  };

  std::vector<ConceptPair> out;
  std::vector<std::size_t> digits(n_attributes, 0);
  for (;;) {
    Vec psi(n_attributes);
    for (std::size_t a = 0; a < n_attributes; ++a) psi[a] = C[digits[a]];
    Vec e = extent_of(psi);
    if (std::none_of(out.begin(), out.end(), [&](const ConceptPair& p) { return p.extent == e; }))
      out.push_back({e, intent_of(e)});
    std::size_t k = 0;
    while (k < n_attributes && ++digits[k] == C.size()) digits[k++] = 0;
    if (k == n_attributes) break;
  }
  std::sort(out.begin(), out.end(), [&](const ConceptPair& a, const ConceptPair& b) {
    return q.less_enum(a.extent, b.extent);
  });
  return out;
}

/// Candidates s with B(s,b) = ⊓_d φ(d) ▷ B(Gd,b) for all b.
inline std::vector<std::size_t> colimit_witnesses(const Quantale& q, const Table& B, const std::vector<std::size_t>& G,
                                                  const Vec& phi) {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < B.size(); ++s) {
    bool ok = true;
    for (std::size_t b = 0; b < B.size() && ok; ++b) {
      QVal want = q.top();
      for (std::size_t d = 0; d < G.size(); ++d) want = q.meet(want, rres(q, phi[d], B[G[d]][b]));
      ok = B[s][b] == want;
    }
    if (ok) out.push_back(s);
  }
  return out;
}

/// Candidates s with B(b,s) = ⊓_d B(b,Gd) ◁ ψ(d) for all b.
inline std::vector<std::size_t> limit_witnesses(const Quantale& q, const Table& B, const std::vector<std::size_t>& G,
                                                const Vec& psi) {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < B.size(); ++s) {
    bool ok = true;
    for (std::size_t b = 0; b < B.size() && ok; ++b) {
      QVal want = q.top();
      for (std::size_t d = 0; d < G.size(); ++d) want = q.meet(want, lres(q, B[b][G[d]], psi[d]));
      ok = B[b][s] == want;
    }
    if (ok) out.push_back(s);
  }
  return out;
}

/// Textbook formal concept analysis on a boolean incidence table: for every
/// attribute subset B, close to (B', B''). Concepts come back as
/// (object set, attribute set) sorted by the object set.
struct BoolConcept {
  std::vector<bool> objects;
  std::vector<bool> attributes;
  friend bool operator==(const BoolConcept&, const BoolConcept&) = default;
};

inline std::vector<BoolConcept> fca_concepts(const std::vector<std::vector<bool>>& incidence, std::size_t n_attributes) {
  const std::size_t n_objects = incidence.size();
  if (n_attributes > 20) throw BudgetExceeded("fca oracle", std::ldexp(1.0, static_cast<int>(n_attributes)), 1 << 20);
  std::set<std::pair<std::vector<bool>, std::vector<bool>>> found;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n_attributes); ++mask) {
    std::vector<bool> objs(n_objects, true);
    for (std::size_t g = 0; g < n_objects; ++g)
      for (std::size_t m = 0; m < n_attributes; ++m)
        if ((mask >> m & 1) && !incidence[g][m]) objs[g] = false;
    std::vector<bool> attrs(n_attributes, true);
    for (std::size_t m = 0; m < n_attributes; ++m)
      for (std::size_t g = 0; g < n_objects; ++g)
        if (objs[g] && !incidence[g][m]) attrs[m] = false;
    found.emplace(objs, attrs);
  }
  std::vector<BoolConcept> out;
  for (const auto& [o, a] : found) out.push_back({o, a});
  return out;
}

/// Words of length at most `max_len` spelled by some path from state `from`
/// to state `to`, found by breadth-first search over (state, word) pairs.
/// Edges are (source, symbol, target) index triples.
struct Edge {
  std::size_t from;
  std::string symbol;
  std::size_t to;
};

inline std::set<std::string> path_words(std::size_t n_states, const std::vector<Edge>& edges, std::size_t from,
                                        std::size_t to, std::size_t max_len) {
  std::set<std::string> out;
  std::set<std::pair<std::size_t, std::string>> frontier{{from, ""}};
  while (!frontier.empty()) {
    std::set<std::pair<std::size_t, std::string>> next;
    for (const auto& [s, w] : frontier) {
      if (s == to) out.insert(w);
      if (w.size() >= max_len) continue;
      for (const auto& e : edges)
        if (e.from == s && e.to < n_states) next.emplace(e.to, w + e.symbol);
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace qenrich::oracle
