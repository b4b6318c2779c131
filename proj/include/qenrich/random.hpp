#pragma once

#include <random>
#include <vector>

#include "qenrich/matrix.hpp"
#include "qenrich/quantale.hpp"
#include "qenrich/relation.hpp"
#include "qenrich/space.hpp"

namespace qenrich {

using Rng = std::mt19937_64;

/// A carrier element; half of the draws are forced to bottom so that closed
/// random structures do not collapse to the top.
inline QVal random_value(const Quantale& q, Rng& rng, bool sparse = true) {
  const auto& C = q.carrier();
  if (sparse && std::uniform_int_distribution<int>(0, 1)(rng) == 0) return q.bottom();
  return C[std::uniform_int_distribution<std::size_t>(0, C.size() - 1)(rng)];
}

inline Vec random_vec(const Quantale& q, std::size_t n, Rng& rng, bool sparse = true) {
  Vec v(n);
  for (auto& x : v) x = random_value(q, rng, sparse);
  return v;
}

/// A random space: random entries, e joined onto the diagonal, then closed
/// under H ← H ∨ H●H.
inline Space random_space(const Quantale& q, std::size_t n, Rng& rng, const std::string& prefix = "p") {
  Matrix h(n, n, q.bottom());
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) h.at(x, y) = x == y ? q.join(q.unit(), random_value(q, rng)) : random_value(q, rng);
  for (;;) {
    Matrix next = h;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z) next.at(x, z) = q.join(next(x, z), q.mul(h(x, y), h(y, z)));
    if (next == h) break;
    h = std::move(next);
  }
  std::vector<std::string> names;
  for (std::size_t k = 0; k < n; ++k) names.push_back(prefix + std::to_string(k));
  return Space(q, std::move(names), std::move(h));
}

/// X ● M ● Y for a random matrix M, which is always a bimodule.
inline Relation random_relation(const Space& X, const Space& Y, Rng& rng) {
  const auto& q = X.quantale();
  Matrix m(X.size(), Y.size(), q.bottom());
  for (std::size_t x = 0; x < X.size(); ++x)
    for (std::size_t y = 0; y < Y.size(); ++y) m.at(x, y) = random_value(q, rng);
  Relation raw(detail::Trusted{}, discrete_space(q, X.names()), discrete_space(q, Y.names()), m);
  Relation left(detail::Trusted{}, X, discrete_space(q, X.names()), X.hom());
  Relation right(detail::Trusted{}, discrete_space(q, Y.names()), Y, Y.hom());
  Relation r = compose(compose(left, raw), right);
  return Relation(X, Y, r.matrix());
}

/// X ● φ for a random vector φ: a presheaf on X.
inline Presheaf random_presheaf(const Space& X, Rng& rng) {
  const auto& q = X.quantale();
  Vec raw = random_vec(q, X.size(), rng);
  Presheaf out(X.size(), q.bottom());
  for (std::size_t x = 0; x < X.size(); ++x)
    for (std::size_t y = 0; y < X.size(); ++y) out[x] = q.join(out[x], q.mul(X(x, y), raw[y]));
  return out;
}

/// ψ ● A for a random vector ψ: a copresheaf on A.
inline Copresheaf random_copresheaf(const Space& A, Rng& rng) {
  const auto& q = A.quantale();
  Vec raw = random_vec(q, A.size(), rng);
  Copresheaf out(A.size(), q.bottom());
  for (std::size_t a = 0; a < A.size(); ++a)
    for (std::size_t b = 0; b < A.size(); ++b) out[a] = q.join(out[a], q.mul(raw[b], A(b, a)));
  return out;
}

}  // namespace qenrich
