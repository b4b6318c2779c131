#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qenrich/error.hpp"
#include "qenrich/matrix.hpp"
#include "qenrich/quantale.hpp"

namespace qenrich {

namespace detail {
/// Passkey for constructions whose axioms hold by construction.
struct Trusted {
  explicit Trusted() = default;
};
}  // namespace detail

/// First failing space axiom, if any: reflexivity e ⊑ X(x,x) or transitivity
/// X(x,y)·X(y,z) ⊑ X(x,z).
inline std::optional<Violation> space_violation(const Quantale& q, const std::vector<std::string>& names,
                                                const Matrix& hom) {
  const std::size_t n = names.size();
  for (std::size_t x = 0; x < n; ++x)
    if (!q.leq(q.unit(), hom(x, x))) return Violation{"reflexivity", {names[x]}};
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (!q.leq(q.mul(hom(x, y), hom(y, z)), hom(x, z)))
          return Violation{"transitivity", {names[x], names[y], names[z]}};
  return std::nullopt;
}

/// A finite Ω-space: named points with a hom matrix satisfying reflexivity and
/// transitivity. Immutable; copies share storage.
class Space {
 public:
  /// Validates shape, carrier membership and both axioms; throws on failure.
  Space(Quantale q, std::vector<std::string> names, Matrix hom) {
    check_shape(q, names, hom);
    if (auto v = space_violation(q, names, hom)) throw LawViolation(*v);
    d_ = std::make_shared<Data>(make_data(std::move(q), std::move(names), std::move(hom)));
  }

  Space(detail::Trusted, Quantale q, std::vector<std::string> names, Matrix hom)
      : d_(std::make_shared<Data>(make_data(std::move(q), std::move(names), std::move(hom)))) {}

  const Quantale& quantale() const { return d_->q; }
  std::size_t size() const { return d_->names.size(); }
  const std::vector<std::string>& names() const { return d_->names; }
  const std::string& name(std::size_t i) const { return d_->names.at(i); }
  const Matrix& hom() const { return d_->hom; }
  QVal operator()(std::size_t x, std::size_t y) const { return d_->hom(x, y); }

  std::optional<std::size_t> find(const std::string& name) const {
    auto it = d_->index.find(name);
    if (it == d_->index.end()) return std::nullopt;
    return it->second;
  }
  std::size_t index(const std::string& name) const {
    auto i = find(name);
    if (!i) throw InvalidInput("unknown point '" + name + "'");
    return *i;
  }

  friend bool operator==(const Space& a, const Space& b) {
    return a.d_ == b.d_ || (a.d_->q == b.d_->q && a.d_->names == b.d_->names && a.d_->hom == b.d_->hom);
  }

 private:
  struct Data {
    Quantale q;
    std::vector<std::string> names;
    Matrix hom;
    std::unordered_map<std::string, std::size_t> index;
  };

  static void check_shape(const Quantale& q, const std::vector<std::string>& names, const Matrix& hom) {
    if (hom.rows() != names.size() || hom.cols() != names.size())
      throw InvalidInput("hom matrix must be square with one row per point");
    for (QVal v : hom.data()) q.require(v);
  }

  static Data make_data(Quantale q, std::vector<std::string> names, Matrix hom) {
    Data d{std::move(q), std::move(names), std::move(hom), {}};
    for (std::size_t i = 0; i < d.names.size(); ++i)
      if (!d.index.emplace(d.names[i], i).second) throw InvalidInput("duplicate point name '" + d.names[i] + "'");
    return d;
  }

  std::shared_ptr<const Data> d_;
};

inline Space validate_space(Quantale q, std::vector<std::string> names, Matrix hom) {
  return Space(std::move(q), std::move(names), std::move(hom));
}

/// hom[x][x] = e, ⊥ elsewhere.
inline Space discrete_space(const Quantale& q, std::vector<std::string> names) {
  Matrix hom(names.size(), names.size(), q.bottom());
  for (std::size_t i = 0; i < names.size(); ++i) hom.at(i, i) = q.unit();
  return Space(detail::Trusted{}, q, std::move(names), std::move(hom));
}

/// The discrete one-point space on the point "*".
inline Space one_point_space(const Quantale& q) { return discrete_space(q, {"*"}); }

/// Transposed hom, over the opposite quantale.
inline Space opposite_space(const Space& X) {
  return Space(detail::Trusted{}, X.quantale().opposite(), X.names(), X.hom().transposed());
}

struct UnderlyingOrder {
  std::size_t n = 0;
  std::vector<char> rel;  // row-major, rel[x*n+y] = x <= y
  bool skeletal = true;

  bool leq(std::size_t x, std::size_t y) const { return rel[x * n + y] != 0; }
};

/// x ≤ y iff e ⊑ X(x,y); skeletal iff antisymmetric.
inline UnderlyingOrder underlying_order(const Space& X) {
  const auto& q = X.quantale();
  UnderlyingOrder o;
  o.n = X.size();
  o.rel.assign(o.n * o.n, 0);
  for (std::size_t x = 0; x < o.n; ++x)
    for (std::size_t y = 0; y < o.n; ++y) o.rel[x * o.n + y] = q.leq(q.unit(), X(x, y));
  for (std::size_t x = 0; x < o.n; ++x)
    for (std::size_t y = x + 1; y < o.n; ++y)
      if (o.leq(x, y) && o.leq(y, x)) o.skeletal = false;
  return o;
}

/// Points x ≅ y in the underlying preorder.
inline bool isomorphic_points(const Space& X, std::size_t x, std::size_t y) {
  const auto& q = X.quantale();
  return q.leq(q.unit(), X(x, y)) && q.leq(q.unit(), X(y, x));
}

// ---------------------------------------------------------------------------

inline std::optional<Violation> functor_violation(const Space& source, const Space& target,
                                                  const std::vector<std::size_t>& assignment) {
  if (!(source.quantale() == target.quantale())) return Violation{"quantale mismatch", {}};
  if (assignment.size() != source.size()) return Violation{"shape mismatch", {}};
  for (std::size_t a : assignment)
    if (a >= target.size()) return Violation{"assignment out of range", {std::to_string(a)}};
  const auto& q = source.quantale();
  for (std::size_t x = 0; x < source.size(); ++x)
    for (std::size_t y = 0; y < source.size(); ++y)
      if (!q.leq(source(x, y), target(assignment[x], assignment[y])))
        return Violation{"functoriality", {source.name(x), source.name(y)}};
  return std::nullopt;
}

/// A functor between finite spaces: X(x,x') ⊑ Y(fx,fx').
class SpaceMap {
 public:
  SpaceMap(Space source, Space target, std::vector<std::size_t> assignment)
      : source_(std::move(source)), target_(std::move(target)), assign_(std::move(assignment)) {
    if (auto v = functor_violation(source_, target_, assign_)) {
      if (v->law == "functoriality") throw LawViolation(*v);
      throw InvalidInput(v->describe());
    }
  }

  SpaceMap(detail::Trusted, Space source, Space target, std::vector<std::size_t> assignment)
      : source_(std::move(source)), target_(std::move(target)), assign_(std::move(assignment)) {}

  static SpaceMap identity(const Space& X) {
    std::vector<std::size_t> a(X.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = i;
    return SpaceMap(detail::Trusted{}, X, X, std::move(a));
  }

  const Space& source() const { return source_; }
  const Space& target() const { return target_; }
  const std::vector<std::size_t>& assignment() const { return assign_; }
  std::size_t operator()(std::size_t x) const { return assign_[x]; }

 private:
  Space source_;
  Space target_;
  std::vector<std::size_t> assign_;
};

/// f ≤ g iff f x ≤ g x in the underlying order of the target, for all x.
inline bool order_on_maps(const SpaceMap& f, const SpaceMap& g) {
  if (!(f.source() == g.source()) || !(f.target() == g.target()))
    throw InvalidInput("order_on_maps: maps must share source and target");
  const auto& q = f.target().quantale();
  for (std::size_t x = 0; x < f.source().size(); ++x)
    if (!q.leq(q.unit(), f.target()(f(x), g(x)))) return false;
  return true;
}

// ---------------------------------------------------------------------------

inline constexpr std::size_t kSelfEnrichmentBudget = 4096;

/// Ω as a space over itself, in one of four ways:
///   1: a ▷ b   2: a ◁ b   (over q)
///   3: b ▷ a   4: b ◁ a   (over the opposite of q)
inline Space self_enrichment(const Quantale& q, int which, std::size_t budget = kSelfEnrichmentBudget) {
  if (which < 1 || which > 4) throw InvalidInput("self_enrichment case must be 1..4");
  if (q.carrier_size() > static_cast<double>(budget))
    throw BudgetExceeded("self-enrichment carrier", q.carrier_size(), static_cast<double>(budget));
  const auto& C = q.carrier();
  std::vector<std::string> names;
  for (QVal v : C) names.push_back(q.format(v));
  Matrix hom(C.size(), C.size(), q.bottom());
  for (std::size_t i = 0; i < C.size(); ++i)
    for (std::size_t j = 0; j < C.size(); ++j) {
      QVal a = C[i], b = C[j];
      switch (which) {
        case 1: hom.at(i, j) = q.rres(a, b); break;
        case 2: hom.at(i, j) = q.lres(a, b); break;
        case 3: hom.at(i, j) = q.rres(b, a); break;
        default: hom.at(i, j) = q.lres(b, a); break;
      }
    }
  return Space(detail::Trusted{}, which <= 2 ? q : q.opposite(), std::move(names), std::move(hom));
}

/// Position of a carrier value among the points of a self-enrichment.
inline std::size_t carrier_index(const Quantale& q, QVal v) {
  const auto& C = q.carrier();
  for (std::size_t i = 0; i < C.size(); ++i)
    if (C[i] == v) return i;
  throw InvalidInput("value not in carrier");
}

}  // namespace qenrich
