#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qenrich/oracle.hpp"
#include "qenrich/qenrich.hpp"

namespace qtest {

using namespace qenrich;

inline Quantale bool2() { return Quantale(Bool2{}); }
inline Quantale lawvere(unsigned n) { return Quantale(LawvereChain{n}); }
inline Quantale similarity(unsigned n) { return Quantale(SimilarityChain{n}); }
inline Quantale language(std::vector<std::string> alphabet, unsigned max_len) {
  return Quantale(LanguageTrunc{std::move(alphabet), max_len});
}

/// The four instances used throughout the law sweeps.
inline std::vector<Quantale> standard_quantales() {
  return {bool2(), lawvere(10), similarity(5), language({"a", "b"}, 2)};
}

/// Small instances whose carriers keep exhaustive sweeps cheap.
inline std::vector<Quantale> small_quantales() {
  return {bool2(), lawvere(4), similarity(2), language({"a", "b"}, 1), language({"a"}, 2)};
}

inline Matrix mat(const Quantale& q, const std::vector<std::vector<int>>& rows) {
  std::vector<Vec> rs;
  for (const auto& r : rows) {
    Vec v;
    for (int x : r) v.push_back(q.kind() == Kind::Bool2 ? q.boolean(x != 0) : q.number(static_cast<unsigned>(x)));
    rs.push_back(v);
  }
  return Matrix::from_rows(rs);
}

inline Vec bvec(const Quantale& q, const std::vector<int>& xs) {
  Vec v;
  for (int x : xs) v.push_back(q.boolean(x != 0));
  return v;
}

/// A boolean space from a preorder predicate.
inline Space bool_poset(std::vector<std::string> names, const std::function<bool(std::size_t, std::size_t)>& leq) {
  const Quantale q = bool2();
  Matrix h(names.size(), names.size(), q.bottom());
  for (std::size_t x = 0; x < names.size(); ++x)
    for (std::size_t y = 0; y < names.size(); ++y) h.at(x, y) = q.boolean(leq(x, y));
  return Space(q, std::move(names), std::move(h));
}

/// bot < a, b < top.
inline Space diamond() {
  return bool_poset({"bot", "a", "b", "top"}, [](std::size_t x, std::size_t y) {
    return x == y || x == 0 || y == 3;
  });
}

/// c0 < c1 < ... < c(n-1).
inline Space chain(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t k = 0; k < n; ++k) names.push_back("c" + std::to_string(k));
  return bool_poset(names, [](std::size_t x, std::size_t y) { return x <= y; });
}

inline Space antichain(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t k = 0; k < n; ++k) names.push_back("p" + std::to_string(k));
  return discrete_space(bool2(), names);
}

/// The lattice of down-sets of a random poset on `n` points, as a boolean
/// space; always a finite distributive lattice.
inline Space random_lattice(std::size_t n, Rng& rng) {
  std::vector<std::vector<bool>> lt(n, std::vector<bool>(n, false));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) lt[x][y] = std::uniform_int_distribution<int>(0, 2)(rng) == 0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (lt[x][k] && lt[k][y]) lt[x][y] = true;
  std::vector<std::uint32_t> downsets;
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    bool closed = true;
    for (std::size_t y = 0; y < n && closed; ++y)
      if (m >> y & 1)
        for (std::size_t x = 0; x < n; ++x)
          if (lt[x][y] && !(m >> x & 1)) closed = false;
    if (closed) downsets.push_back(m);
  }
  std::vector<std::string> names;
  for (auto m : downsets) names.push_back("d" + std::to_string(m));
  return bool_poset(names, [&](std::size_t i, std::size_t j) { return (downsets[i] & ~downsets[j]) == 0; });
}

inline oracle::Table table(const Matrix& m) {
  oracle::Table t;
  for (std::size_t i = 0; i < m.rows(); ++i) t.push_back(m.row(i));
  return t;
}

}  // namespace qtest
