#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qenrich/canext.hpp"
#include "qenrich/error.hpp"
#include "qenrich/macneille.hpp"
#include "qenrich/relation.hpp"
#include "qenrich/space.hpp"

namespace qenrich {

/// v ∘ G for a (co)presheaf v on the target of G; this is both G_l and G_r.
inline Vec precompose(const SpaceMap& G, const Vec& v) {
  if (v.size() != G.target().size()) throw InvalidInput("precompose: vector length differs from target size");
  Vec out;
  out.reserve(G.source().size());
  for (std::size_t c = 0; c < G.source().size(); ++c) out.push_back(v[G(c)]);
  return out;
}

/// G_π(i)(d) = ⊔_c D(d, Gc)·i(c), the colimit in 𝒟D of D(-,G) weighted by i.
inline Presheaf gpi(const SpaceMap& G, const Presheaf& i) {
  const Space& D = G.target();
  const auto& q = D.quantale();
  Presheaf out(D.size(), q.bottom());
  for (std::size_t d = 0; d < D.size(); ++d)
    for (std::size_t c = 0; c < i.size(); ++c) out[d] = q.join(out[d], q.mul(D(d, G(c)), i[c]));
  return out;
}

/// G_σ(f)(d) = ⊔_c f(c)·D(Gc, d), the limit in 𝒰D of D(G,-) weighted by f.
inline Copresheaf gsigma(const SpaceMap& G, const Copresheaf& f) {
  const Space& D = G.target();
  const auto& q = D.quantale();
  Copresheaf out(D.size(), q.bottom());
  for (std::size_t d = 0; d < D.size(); ++d)
    for (std::size_t c = 0; c < f.size(); ++c) out[d] = q.join(out[d], q.mul(f[c], D(G(c), d)));
  return out;
}

/// G_l(f)•i = f•G_π(i) for f on D and i on C.
inline bool exchange_pi(const SpaceMap& G, const Copresheaf& fD, const Presheaf& iC) {
  const auto& q = G.source().quantale();
  return pair_compose(q, precompose(G, fD), iC) == pair_compose(q, fD, gpi(G, iC));
}

/// f•G_r(i) = G_σ(f)•i for f on C and i on D.
inline bool exchange_sigma(const SpaceMap& G, const Copresheaf& fC, const Presheaf& iD) {
  const auto& q = G.source().quantale();
  return pair_compose(q, fC, precompose(G, iD)) == pair_compose(q, gsigma(G, fC), iD);
}

/// Both exchange equalities over every relevant pair of class members.
inline LawReport check_exchange(const SpaceMap& G, const CanExt& EC, const CanExt& ED) {
  LawResult pi{"G_l(f).i = f.G_pi(i)", true, {}};
  for (std::size_t f = 0; f < ED.filters().size() && pi.passed; ++f)
    for (std::size_t i = 0; i < EC.ideals().size(); ++i)
      if (!exchange_pi(G, ED.filters()[f], EC.ideals()[i])) {
        pi = {pi.law, false, {"D:f" + std::to_string(f), "C:i" + std::to_string(i)}};
        break;
      }
  LawResult sigma{"f.G_r(i) = G_sigma(f).i", true, {}};
  for (std::size_t f = 0; f < EC.filters().size() && sigma.passed; ++f)
    for (std::size_t i = 0; i < ED.ideals().size(); ++i)
      if (!exchange_sigma(G, EC.filters()[f], ED.ideals()[i])) {
        sigma = {sigma.law, false, {"C:f" + std::to_string(f), "D:i" + std::to_string(i)}};
        break;
      }
  return LawReport{{pi, sigma}};
}

/// A functor G: C → D together with canonical extensions of both ends.
class FunctorExtension {
 public:
  FunctorExtension(SpaceMap G, CanExt EC, CanExt ED) : G_(std::move(G)), EC_(std::move(EC)), ED_(std::move(ED)) {
    if (!(G_.source() == EC_.base()) || !(G_.target() == ED_.base()))
      throw InvalidInput("functor ends do not match the canonical extensions");
  }

  const SpaceMap& functor() const { return G_; }
  const CanExt& source() const { return EC_; }
  const CanExt& target() const { return ED_; }

  /// First filter of D whose pullback leaves F_C.
  std::optional<std::size_t> l_violator() const {
    for (std::size_t f = 0; f < ED_.filters().size(); ++f)
      if (!EC_.filter_index(precompose(G_, ED_.filters()[f]))) return f;
    return std::nullopt;
  }
  /// First ideal of D whose pullback leaves I_C.
  std::optional<std::size_t> r_violator() const {
    for (std::size_t i = 0; i < ED_.ideals().size(); ++i)
      if (!EC_.ideal_index(precompose(G_, ED_.ideals()[i]))) return i;
    return std::nullopt;
  }
  /// First ideal of C whose pushforward G_π leaves I_D.
  std::optional<std::size_t> pi_violator() const {
    for (std::size_t i = 0; i < EC_.ideals().size(); ++i)
      if (!ED_.ideal_index(gpi(G_, EC_.ideals()[i]))) return i;
    return std::nullopt;
  }
  /// First filter of C whose pushforward G_σ leaves F_D.
  std::optional<std::size_t> sigma_violator() const {
    for (std::size_t f = 0; f < EC_.filters().size(); ++f)
      if (!ED_.filter_index(gsigma(G_, EC_.filters()[f]))) return f;
    return std::nullopt;
  }

  std::string describe_filter_d(std::size_t f) const {
    return "filter " + format_vec(ED_.quantale(), ED_.filters()[f]) + " of the target";
  }
  std::string describe_ideal_d(std::size_t i) const {
    return "ideal " + format_vec(ED_.quantale(), ED_.ideals()[i]) + " of the target";
  }

 private:
  SpaceMap G_;
  CanExt EC_;
  CanExt ED_;
};

/// G^l(κ) for κ in D^δ: the colimit in C^δ of f ↦ closed(G_l f) weighted by ⟦κ⟧,
/// with intent i ↦ ⊓_f ⟦κ⟧(f) ▷ I_C(G_l f, i). Requires G_l(F_D) ⊆ F_C.
inline Concept glift_l(const FunctorExtension& X, const Concept& k) {
  if (auto v = X.l_violator()) throw PreconditionFailed("G_l does not map filters into filters", X.describe_filter_d(*v));
  const CanExt& EC = X.source();
  const CanExt& ED = X.target();
  const auto& q = EC.quantale();
  Copresheaf intent(EC.ideals().size(), q.top());
  for (std::size_t f = 0; f < ED.filters().size(); ++f) {
    Copresheaf pulled = precompose(X.functor(), ED.filters()[f]);
    for (std::size_t i = 0; i < intent.size(); ++i)
      intent[i] = q.meet(intent[i], q.rres(k.extent[f], EC.pairing(pulled, EC.ideals()[i])));
  }
  return concept_from_intent(EC.context(), intent);
}

/// G^r(κ) for κ in D^δ: the limit in C^δ of i ↦ open(G_r i) weighted by ⦃κ⦄,
/// with extent f ↦ ⊓_i I_C(f, G_r i) ◁ ⦃κ⦄(i). Requires G_r(I_D) ⊆ I_C.
inline Concept glift_r(const FunctorExtension& X, const Concept& k) {
  if (auto v = X.r_violator()) throw PreconditionFailed("G_r does not map ideals into ideals", X.describe_ideal_d(*v));
  const CanExt& EC = X.source();
  const CanExt& ED = X.target();
  const auto& q = EC.quantale();
  Presheaf extent(EC.filters().size(), q.top());
  for (std::size_t i = 0; i < ED.ideals().size(); ++i) {
    Presheaf pulled = precompose(X.functor(), ED.ideals()[i]);
    for (std::size_t f = 0; f < extent.size(); ++f)
      extent[f] = q.meet(extent[f], q.lres(EC.pairing(EC.filters()[f], pulled), k.intent[i]));
  }
  return concept_from_extent(EC.context(), extent);
}

/// G^π(κ) for κ in C^δ: the limit in D^δ of i ↦ open(G_π i) weighted by ⦃κ⦄.
/// Defined even when G_π leaves the ideal class.
inline Concept gext_pi(const FunctorExtension& X, const Concept& k) {
  const CanExt& EC = X.source();
  const CanExt& ED = X.target();
  const auto& q = ED.quantale();
  Presheaf extent(ED.filters().size(), q.top());
  for (std::size_t i = 0; i < EC.ideals().size(); ++i) {
    const Concept o = open_of_weight(ED, gpi(X.functor(), EC.ideals()[i]));
    for (std::size_t f = 0; f < extent.size(); ++f) extent[f] = q.meet(extent[f], q.lres(o.extent[f], k.intent[i]));
  }
  return concept_from_extent(ED.context(), extent);
}

/// G^σ(κ) for κ in C^δ: the colimit in D^δ of f ↦ closed(G_σ f) weighted by ⟦κ⟧.
inline Concept gext_sigma(const FunctorExtension& X, const Concept& k) {
  const CanExt& EC = X.source();
  const CanExt& ED = X.target();
  const auto& q = ED.quantale();
  Copresheaf intent(ED.ideals().size(), q.top());
  for (std::size_t f = 0; f < EC.filters().size(); ++f) {
    const Concept c = closed_of_weight(ED, gsigma(X.functor(), EC.filters()[f]));
    for (std::size_t i = 0; i < intent.size(); ++i) intent[i] = q.meet(intent[i], q.rres(k.extent[f], c.intent[i]));
  }
  return concept_from_intent(ED.context(), intent);
}

/// Tables of the four extensions on concept indices.
struct ExtensionTables {
  std::vector<std::size_t> l, r;      // D^δ → C^δ
  std::vector<std::size_t> pi, sigma;  // C^δ → D^δ
};

/// Materializes G^π and G^σ always, and G^l / G^r when their preconditions hold.
inline ExtensionTables extension_tables(const FunctorExtension& X) {
  const Completion& MC = X.source().delta();
  const Completion& MD = X.target().delta();
  ExtensionTables t;
  for (const auto& k : MC.concepts()) {
    t.pi.push_back(MD.index_of(gext_pi(X, k)));
    t.sigma.push_back(MD.index_of(gext_sigma(X, k)));
  }
  if (!X.l_violator())
    for (const auto& k : MD.concepts()) t.l.push_back(MC.index_of(glift_l(X, k)));
  if (!X.r_violator())
    for (const auto& k : MD.concepts()) t.r.push_back(MC.index_of(glift_r(X, k)));
  return t;
}

/// Result of the adjunction and functoriality checks of one functor.
struct AdjunctionReport {
  bool l_closed = false;      // G_l(F_D) ⊆ F_C
  bool r_closed = false;      // G_r(I_D) ⊆ I_C
  bool pi_closed = false;     // G_π(I_C) ⊆ I_D
  bool sigma_closed = false;  // G_σ(F_C) ⊆ F_D
  LawReport laws;
};

/// Checks, on every concept pair:
///   C^δ(G^l κ, κ') = D^δ(κ, G^π κ')     when G_l and G_π stay in their classes,
///   D^δ(G^σ κ, κ') = C^δ(κ, G^r κ')     when G_r and G_σ stay in their classes,
/// functoriality of G^l and G^r, and the inequalities e ⊑ C^δ(G^l[Gc], [c])
/// and e ⊑ C^δ([c], G^r[Gc]).
inline AdjunctionReport check_adjunctions(const FunctorExtension& X) {
  const Space& SC = X.source().delta().space();
  const Space& SD = X.target().delta().space();
  const auto& q = SC.quantale();
  const SpaceMap& G = X.functor();
  const ExtensionTables t = extension_tables(X);

  AdjunctionReport rep;
  rep.l_closed = !X.l_violator();
  rep.r_closed = !X.r_violator();
  rep.pi_closed = !X.pi_violator();
  rep.sigma_closed = !X.sigma_violator();

  auto sweep = [&](const std::string& law, std::size_t n1, std::size_t n2, auto holds) {
    LawResult r{law, true, {}};
    for (std::size_t a = 0; a < n1 && r.passed; ++a)
      for (std::size_t b = 0; b < n2; ++b)
        if (!holds(a, b)) {
          r = {law, false, {"k" + std::to_string(a), "k" + std::to_string(b)}};
          break;
        }
    rep.laws.results.push_back(std::move(r));
  };

  if (rep.l_closed && rep.pi_closed)
    sweep("G^l -| G^pi", SD.size(), SC.size(), [&](std::size_t k, std::size_t k2) {
      return SC(t.l[k], k2) == SD(k, t.pi[k2]);
    });
  if (rep.l_closed) {
    sweep("G^l functorial", SD.size(), SD.size(), [&](std::size_t k, std::size_t k2) {
      return q.leq(SD(k, k2), SC(t.l[k], t.l[k2]));
    });
    sweep("e <= C(G^l[Gc], [c])", G.source().size(), 1, [&](std::size_t c, std::size_t) {
      return q.leq(q.unit(), SC(t.l[X.target().embedding(G(c))], X.source().embedding(c)));
    });
  }
  if (rep.r_closed && rep.sigma_closed)
    sweep("G^sigma -| G^r", SC.size(), SD.size(), [&](std::size_t k, std::size_t k2) {
      return SD(t.sigma[k], k2) == SC(k, t.r[k2]);
    });
  if (rep.r_closed) {
    sweep("G^r functorial", SD.size(), SD.size(), [&](std::size_t k, std::size_t k2) {
      return q.leq(SD(k, k2), SC(t.r[k], t.r[k2]));
    });
    sweep("e <= C([c], G^r[Gc])", G.source().size(), 1, [&](std::size_t c, std::size_t) {
      return q.leq(q.unit(), SC(X.source().embedding(c), t.r[X.target().embedding(G(c))]));
    });
  }
  return rep;
}

}  // namespace qenrich
