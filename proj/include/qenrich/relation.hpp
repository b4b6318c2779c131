#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qenrich/error.hpp"
#include "qenrich/matrix.hpp"
#include "qenrich/quantale.hpp"
#include "qenrich/space.hpp"

namespace qenrich {

/// Presheaf on X (a weighted downset X ⇸ 1), indexed by the points of X.
using Presheaf = Vec;
/// Copresheaf on A (a weighted upset 1 ⇸ A), indexed by the points of A.
using Copresheaf = Vec;

inline constexpr double kDefaultVectorBudget = 2e6;

/// First failing bimodule law X(x',x)·R(x,y) ⊑ R(x',y), R(x,y)·Y(y,y') ⊑ R(x,y').
inline std::optional<Violation> bimodule_violation(const Space& X, const Space& Y, const Matrix& m) {
  const auto& q = X.quantale();
  for (std::size_t x = 0; x < X.size(); ++x)
    for (std::size_t xp = 0; xp < X.size(); ++xp)
      for (std::size_t y = 0; y < Y.size(); ++y)
        if (!q.leq(q.mul(X(xp, x), m(x, y)), m(xp, y)))
          return Violation{"left action", {X.name(xp), X.name(x), Y.name(y)}};
  for (std::size_t x = 0; x < X.size(); ++x)
    for (std::size_t y = 0; y < Y.size(); ++y)
      for (std::size_t yp = 0; yp < Y.size(); ++yp)
        if (!q.leq(q.mul(m(x, y), Y(y, yp)), m(x, yp)))
          return Violation{"right action", {X.name(x), Y.name(y), Y.name(yp)}};
  return std::nullopt;
}

/// A weighted relation (distributor) R: X ⇸ Y.
class Relation {
 public:
  Relation(Space source, Space target, Matrix m)
      : d_(std::make_shared<Data>(Data{std::move(source), std::move(target), std::move(m)})) {
    check_shape(d_->source, d_->target, d_->m);
    if (auto v = bimodule_violation(d_->source, d_->target, d_->m)) throw LawViolation(*v);
  }

  Relation(detail::Trusted, Space source, Space target, Matrix m)
      : d_(std::make_shared<Data>(Data{std::move(source), std::move(target), std::move(m)})) {}

  const Space& source() const { return d_->source; }
  const Space& target() const { return d_->target; }
  const Matrix& matrix() const { return d_->m; }
  const Quantale& quantale() const { return d_->source.quantale(); }
  QVal operator()(std::size_t x, std::size_t y) const { return d_->m(x, y); }

  friend bool operator==(const Relation& a, const Relation& b) {
    return a.d_ == b.d_ ||
           (a.d_->source == b.d_->source && a.d_->target == b.d_->target && a.d_->m == b.d_->m);
  }

 private:
  struct Data {
    Space source;
    Space target;
    Matrix m;
  };

  static void check_shape(const Space& X, const Space& Y, const Matrix& m) {
    if (!(X.quantale() == Y.quantale())) throw InvalidInput("relation between spaces over different quantales");
    if (m.rows() != X.size() || m.cols() != Y.size()) throw InvalidInput("relation matrix shape mismatch");
    for (QVal v : m.data()) X.quantale().require(v);
  }

  std::shared_ptr<const Data> d_;
};

/// The hom of X as the identity relation X ⇸ X.
inline Relation hom_relation(const Space& X) { return Relation(detail::Trusted{}, X, X, X.hom()); }

namespace detail {
inline void require_same(const Space& a, const Space& b, const char* what) {
  if (!(a == b)) throw InvalidInput(std::string(what) + ": space mismatch");
}
}  // namespace detail

/// (R ● S)(x,z) = ⊔_y R(x,y)·S(y,z).
inline Relation compose(const Relation& R, const Relation& S) {
  detail::require_same(R.target(), S.source(), "compose");
  const auto& q = R.quantale();
  const std::size_t nx = R.source().size(), ny = R.target().size(), nz = S.target().size();
  Matrix m(nx, nz, q.bottom());
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t z = 0; z < nz; ++z) {
      QVal acc = q.bottom();
      for (std::size_t y = 0; y < ny; ++y) acc = q.join(acc, q.mul(R(x, y), S(y, z)));
      m.at(x, z) = acc;
    }
  return Relation(detail::Trusted{}, R.source(), S.target(), std::move(m));
}

/// (R ▸ T)(y,z) = ⊓_x R(x,y) ▷ T(x,z), for R: X ⇸ Y and T: X ⇸ Z.
inline Relation rres_rel(const Relation& R, const Relation& T) {
  detail::require_same(R.source(), T.source(), "rres_rel");
  const auto& q = R.quantale();
  const std::size_t nx = R.source().size(), ny = R.target().size(), nz = T.target().size();
  Matrix m(ny, nz, q.top());
  for (std::size_t y = 0; y < ny; ++y)
    for (std::size_t z = 0; z < nz; ++z) {
      QVal acc = q.top();
      for (std::size_t x = 0; x < nx; ++x) acc = q.meet(acc, q.rres(R(x, y), T(x, z)));
      m.at(y, z) = acc;
    }
  return Relation(detail::Trusted{}, R.target(), T.target(), std::move(m));
}

/// (T ◂ S)(x,y) = ⊓_z T(x,z) ◁ S(y,z), for T: X ⇸ Z and S: Y ⇸ Z.
inline Relation lres_rel(const Relation& T, const Relation& S) {
  detail::require_same(T.target(), S.target(), "lres_rel");
  const auto& q = T.quantale();
  const std::size_t nx = T.source().size(), ny = S.source().size(), nz = T.target().size();
  Matrix m(nx, ny, q.top());
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) {
      QVal acc = q.top();
      for (std::size_t z = 0; z < nz; ++z) acc = q.meet(acc, q.lres(T(x, z), S(y, z)));
      m.at(x, y) = acc;
    }
  return Relation(detail::Trusted{}, T.source(), S.source(), std::move(m));
}

/// Pointwise order R ⊑ S.
inline bool rel_order(const Relation& R, const Relation& S) {
  detail::require_same(R.source(), S.source(), "rel_order");
  detail::require_same(R.target(), S.target(), "rel_order");
  const auto& q = R.quantale();
  for (std::size_t k = 0; k < R.matrix().data().size(); ++k)
    if (!q.leq(R.matrix().data()[k], S.matrix().data()[k])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Weighted downsets and upsets

inline bool is_presheaf(const Space& X, const Presheaf& phi) {
  if (phi.size() != X.size()) return false;
  const auto& q = X.quantale();
  for (QVal v : phi)
    if (!q.contains(v)) return false;
  for (std::size_t x = 0; x < X.size(); ++x)
    for (std::size_t xp = 0; xp < X.size(); ++xp)
      if (!q.leq(q.mul(X(xp, x), phi[x]), phi[xp])) return false;
  return true;
}

inline bool is_copresheaf(const Space& A, const Copresheaf& psi) {
  if (psi.size() != A.size()) return false;
  const auto& q = A.quantale();
  for (QVal v : psi)
    if (!q.contains(v)) return false;
  for (std::size_t a = 0; a < A.size(); ++a)
    for (std::size_t ap = 0; ap < A.size(); ++ap)
      if (!q.leq(q.mul(psi[a], A(a, ap)), psi[ap])) return false;
  return true;
}

/// 𝒟X(φ,φ') = φ ▸ φ' = ⊓_x φx ▷ φ'x.
inline QVal down_hom(const Quantale& q, const Presheaf& phi, const Presheaf& phi2) {
  QVal acc = q.top();
  for (std::size_t x = 0; x < phi.size(); ++x) acc = q.meet(acc, q.rres(phi[x], phi2[x]));
  return acc;
}

/// 𝒰A(ψ,ψ') = ψ ◂ ψ' = ⊓_a ψa ◁ ψ'a.
inline QVal up_hom(const Quantale& q, const Copresheaf& psi, const Copresheaf& psi2) {
  QVal acc = q.top();
  for (std::size_t a = 0; a < psi.size(); ++a) acc = q.meet(acc, q.lres(psi[a], psi2[a]));
  return acc;
}

/// ψ • φ = ⊔_x ψx·φx, a copresheaf composed with a presheaf.
inline QVal pair_compose(const Quantale& q, const Copresheaf& psi, const Presheaf& phi) {
  QVal acc = q.bottom();
  for (std::size_t x = 0; x < psi.size(); ++x) acc = q.join(acc, q.mul(psi[x], phi[x]));
  return acc;
}

/// X(-,x).
inline Presheaf yoneda_down(const Space& X, std::size_t x) {
  if (x >= X.size()) throw InvalidInput("yoneda_down: unknown point");
  return X.hom().col(x);
}

/// A(a,-).
inline Copresheaf yoneda_up(const Space& A, std::size_t a) {
  if (a >= A.size()) throw InvalidInput("yoneda_up: unknown point");
  return A.hom().row(a);
}

inline Relation presheaf_relation(const Space& X, const Presheaf& phi) {
  if (!is_presheaf(X, phi)) throw InvalidInput("vector is not a presheaf");
  return Relation(detail::Trusted{}, X, one_point_space(X.quantale()), Matrix::column(phi));
}

inline Relation copresheaf_relation(const Space& A, const Copresheaf& psi) {
  if (!is_copresheaf(A, psi)) throw InvalidInput("vector is not a copresheaf");
  return Relation(detail::Trusted{}, one_point_space(A.quantale()), A, Matrix::row_of(psi));
}

inline std::string format_vec(const Quantale& q, const Vec& v) {
  std::string s = "(";
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += ",";
    s += q.format(v[k]);
  }
  return s + ")";
}

namespace detail {

inline void require_vector_budget(const Quantale& q, std::size_t n, double budget, const char* what) {
  double count = std::pow(q.carrier_size(), static_cast<double>(n));
  if (count > budget) throw BudgetExceeded(what, count, budget);
}

// Backtracking over positions 0..n-1; `compatible(v, k)` checks position k against 0..k.
// Output is lexicographic in the carrier order.
inline std::vector<Vec> enumerate_vectors(const Quantale& q, std::size_t n,
                                          const std::function<bool(const Vec&, std::size_t)>& compatible) {
  const auto& C = q.carrier();
  std::vector<Vec> out;
  Vec cur(n, q.bottom());
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == n) {
      out.push_back(cur);
      return;
    }
    for (QVal v : C) {
      cur[k] = v;
      if (compatible(cur, k)) rec(k + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace detail

/// Every presheaf on X, lexicographic in the carrier order.
inline std::vector<Presheaf> enumerate_presheaves(const Space& X, double budget = kDefaultVectorBudget) {
  const auto& q = X.quantale();
  detail::require_vector_budget(q, X.size(), budget, "presheaf enumeration");
  return detail::enumerate_vectors(q, X.size(), [&](const Vec& v, std::size_t k) {
    for (std::size_t j = 0; j <= k; ++j) {
      if (!q.leq(q.mul(X(j, k), v[k]), v[j])) return false;
      if (!q.leq(q.mul(X(k, j), v[j]), v[k])) return false;
    }
    return true;
  });
}

/// Every copresheaf on A, lexicographic in the carrier order.
inline std::vector<Copresheaf> enumerate_copresheaves(const Space& A, double budget = kDefaultVectorBudget) {
  const auto& q = A.quantale();
  detail::require_vector_budget(q, A.size(), budget, "copresheaf enumeration");
  return detail::enumerate_vectors(q, A.size(), [&](const Vec& v, std::size_t k) {
    for (std::size_t j = 0; j <= k; ++j) {
      if (!q.leq(q.mul(v[j], A(j, k)), v[k])) return false;
      if (!q.leq(q.mul(v[k], A(k, j)), v[j])) return false;
    }
    return true;
  });
}

/// A space whose points are vectors (presheaves, copresheaves or concepts).
struct VectorSpace {
  Space space;
  std::vector<Vec> elements;

  std::optional<std::size_t> find(const Vec& v) const {
    for (std::size_t i = 0; i < elements.size(); ++i)
      if (elements[i] == v) return i;
    return std::nullopt;
  }
};

/// 𝒟X with hom φ ▸ φ'.
inline VectorSpace presheaf_space(const Space& X, double budget = kDefaultVectorBudget) {
  const auto& q = X.quantale();
  auto els = enumerate_presheaves(X, budget);
  std::vector<std::string> names;
  Matrix hom(els.size(), els.size(), q.bottom());
  for (std::size_t i = 0; i < els.size(); ++i) {
    names.push_back(format_vec(q, els[i]));
    for (std::size_t j = 0; j < els.size(); ++j) hom.at(i, j) = down_hom(q, els[i], els[j]);
  }
  return VectorSpace{Space(detail::Trusted{}, q, std::move(names), std::move(hom)), std::move(els)};
}

/// 𝒰A with hom ψ ◂ ψ'.
inline VectorSpace copresheaf_space(const Space& A, double budget = kDefaultVectorBudget) {
  const auto& q = A.quantale();
  auto els = enumerate_copresheaves(A, budget);
  std::vector<std::string> names;
  Matrix hom(els.size(), els.size(), q.bottom());
  for (std::size_t i = 0; i < els.size(); ++i) {
    names.push_back(format_vec(q, els[i]));
    for (std::size_t j = 0; j < els.size(); ++j) hom.at(i, j) = up_hom(q, els[i], els[j]);
  }
  return VectorSpace{Space(detail::Trusted{}, q, std::move(names), std::move(hom)), std::move(els)};
}

}  // namespace qenrich
