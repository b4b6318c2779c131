#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qenrich/space.hpp"

namespace qenrich {

/// Covering pairs (lower, upper) of the underlying order, computed on the
/// skeletal quotient: each isomorphism class is represented by its first
/// point, and (a, b) covers when a < b with nothing strictly between.
inline std::vector<std::pair<std::size_t, std::size_t>> covering_edges(const Space& X) {
  const auto ord = underlying_order(X);
  const std::size_t n = X.size();
  std::vector<std::size_t> rep(n);
  for (std::size_t x = 0; x < n; ++x) {
    rep[x] = x;
    for (std::size_t y = 0; y < x; ++y)
      if (ord.leq(x, y) && ord.leq(y, x)) {
        rep[x] = rep[y];
        break;
      }
  }
  auto strictly = [&](std::size_t a, std::size_t b) { return ord.leq(a, b) && !ord.leq(b, a); };
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t a = 0; a < n; ++a) {
    if (rep[a] != a) continue;
    for (std::size_t b = 0; b < n; ++b) {
      if (rep[b] != b || !strictly(a, b)) continue;
      bool covered = true;
      for (std::size_t c = 0; c < n && covered; ++c)
        if (rep[c] == c && strictly(a, c) && strictly(c, b)) covered = false;
      if (covered) edges.emplace_back(a, b);
    }
  }
  return edges;
}

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

/// A Hasse diagram in DOT with one node per point; `labels` overrides the
/// point names when non-empty.
inline std::string to_dot(const Space& X, const std::vector<std::string>& labels = {}) {
  std::string s = "digraph order {\n  rankdir=BT;\n  node [shape=box];\n";
  for (std::size_t x = 0; x < X.size(); ++x)
    s += "  n" + std::to_string(x) + " [label=\"" + dot_escape(labels.empty() ? X.name(x) : labels.at(x)) + "\"];\n";
  for (auto [a, b] : covering_edges(X)) s += "  n" + std::to_string(a) + " -> n" + std::to_string(b) + ";\n";
  return s + "}\n";
}

}  // namespace qenrich
