#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "qenrich/error.hpp"

namespace qenrich {

enum class Kind : std::uint8_t { Bool2, Lawvere, Similarity, Language };

inline const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Bool2: return "bool2";
    case Kind::Lawvere: return "lawvere";
    case Kind::Similarity: return "similarity";
    case Kind::Language: return "language";
  }
  return "?";
}

/// One element of a quantale carrier.
///
/// The payload is exact: a boolean, a chain position (for the similarity
/// chain the position n+1 encodes infinity), or a bitmask over the word list
/// of a truncated language quantale. Values carry their kind so that mixing
/// values of different quantales is detected.
class QVal {
 public:
  constexpr QVal() = default;
  constexpr QVal(Kind kind, std::uint64_t bits) : kind_(kind), bits_(bits) {}

  constexpr Kind kind() const { return kind_; }
  constexpr std::uint64_t bits() const { return bits_; }

  friend constexpr bool operator==(QVal, QVal) = default;
  friend constexpr auto operator<=>(QVal, QVal) = default;

 private:
  Kind kind_ = Kind::Bool2;
  std::uint64_t bits_ = 0;
};

using Vec = std::vector<QVal>;

struct QValHash {
  std::size_t operator()(QVal v) const noexcept {
    return std::hash<std::uint64_t>{}(v.bits() * 0x9E3779B97F4A7C15ull ^ static_cast<std::uint64_t>(v.kind()));
  }
};

struct VecHash {
  std::size_t operator()(const Vec& v) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (QVal x : v) {
      h ^= x.bits() + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
      h *= 0x100000001b3ull;
    }
    return static_cast<std::size_t>(h);
  }
};

// ---------------------------------------------------------------------------
// Descriptions

struct Bool2 {
  friend bool operator==(const Bool2&, const Bool2&) = default;
};

/// {0..n} ordered by >=, addition capped at n; n stands in for infinity.
struct LawvereChain {
  unsigned n = 1;
  friend bool operator==(const LawvereChain&, const LawvereChain&) = default;
};

/// {0..n} plus infinity in the natural order, min as multiplication.
struct SimilarityChain {
  unsigned n = 1;
  friend bool operator==(const SimilarityChain&, const SimilarityChain&) = default;
};

/// Sets of words of length <= max_len over single-character symbols;
/// concatenation drops words longer than max_len.
struct LanguageTrunc {
  std::vector<std::string> alphabet;
  unsigned max_len = 0;
  friend bool operator==(const LanguageTrunc&, const LanguageTrunc&) = default;
};

using QuantaleDesc = std::variant<Bool2, LawvereChain, SimilarityChain, LanguageTrunc>;

inline constexpr std::size_t kMaxWords = 64;
inline constexpr std::size_t kMaxEnumeratedWords = 16;

// ---------------------------------------------------------------------------

/// An immutable handle on one finite quantale (or its opposite).
///
/// Copies share the cached word tables and carrier enumeration.
class Quantale {
 public:
  explicit Quantale(QuantaleDesc desc) : d_(std::make_shared<Data>(build(std::move(desc)))) {}

  const QuantaleDesc& desc() const { return d_->desc; }
  Kind kind() const { return d_->kind; }
  bool is_opposite() const { return opposite_; }

  /// Same carrier and order, multiplication reversed.
  Quantale opposite() const {
    Quantale q = *this;
    q.opposite_ = !opposite_;
    return q;
  }

  bool commutative() const {
    if (d_->kind != Kind::Language) return true;
    const auto& lang = std::get<LanguageTrunc>(d_->desc);
    return lang.alphabet.size() <= 1 || lang.max_len <= 1;
  }

  QVal unit() const { return d_->unit; }
  QVal top() const { return d_->top; }
  QVal bottom() const { return d_->bottom; }

  bool contains(QVal v) const {
    if (v.kind() != d_->kind) return false;
    if (d_->kind == Kind::Language) return (v.bits() & ~d_->max_bits) == 0;
    return v.bits() <= d_->max_bits;
  }

  void require(QVal v) const {
    if (v.kind() != d_->kind)
      throw InvalidInput(std::string("value of kind ") + kind_name(v.kind()) + " used with quantale " +
                         kind_name(d_->kind));
    if (!contains(v)) throw InvalidInput("value " + std::to_string(v.bits()) + " outside carrier of " + name());
  }

  bool leq(QVal a, QVal b) const {
    require(a);
    require(b);
    return leq_raw(a.bits(), b.bits());
  }

  QVal join(QVal a, QVal b) const {
    require(a);
    require(b);
    return make(join_raw(a.bits(), b.bits()));
  }

  QVal meet(QVal a, QVal b) const {
    require(a);
    require(b);
    return make(meet_raw(a.bits(), b.bits()));
  }

  QVal join(std::span<const QVal> s) const {
    QVal r = bottom();
    for (QVal v : s) r = join(r, v);
    return r;
  }

  QVal meet(std::span<const QVal> s) const {
    QVal r = top();
    for (QVal v : s) r = meet(r, v);
    return r;
  }

  QVal mul(QVal a, QVal b) const {
    require(a);
    require(b);
    return make(opposite_ ? mul_raw(b.bits(), a.bits()) : mul_raw(a.bits(), b.bits()));
  }

  /// a ▷ c, the largest b with a·b ⊑ c.
  QVal rres(QVal a, QVal c) const {
    require(a);
    require(c);
    return make(opposite_ ? lres_raw(c.bits(), a.bits()) : rres_raw(a.bits(), c.bits()));
  }

  /// c ◁ a, the largest b with b·a ⊑ c.
  QVal lres(QVal c, QVal a) const {
    require(a);
    require(c);
    return make(opposite_ ? rres_raw(a.bits(), c.bits()) : lres_raw(c.bits(), a.bits()));
  }

  /// Size of the carrier as a floating count (language carriers can exceed 2^53).
  double carrier_size() const {
    switch (d_->kind) {
      case Kind::Bool2: return 2;
      case Kind::Lawvere: return static_cast<double>(d_->max_bits) + 1;
      case Kind::Similarity: return static_cast<double>(d_->max_bits) + 1;
      case Kind::Language: return std::ldexp(1.0, static_cast<int>(d_->words.size()));
    }
    return 0;
  }

  /// All elements in the fixed enumeration order.
  const std::vector<QVal>& carrier() const {
    if (!d_->enumerable)
      throw BudgetExceeded("carrier enumeration of " + name(), carrier_size(),
                           std::ldexp(1.0, static_cast<int>(kMaxEnumeratedWords)));
    return d_->carrier;
  }

  /// Three-way comparison in the carrier enumeration order.
  int compare_enum(QVal a, QVal b) const {
    if (a == b) return 0;
    if (d_->kind != Kind::Language) return a.bits() < b.bits() ? -1 : 1;
    int pa = std::popcount(a.bits()), pb = std::popcount(b.bits());
    if (pa != pb) return pa < pb ? -1 : 1;
    std::uint64_t low = (a.bits() ^ b.bits()) & (~(a.bits() ^ b.bits()) + 1);
    return (a.bits() & low) ? -1 : 1;
  }

  bool less_enum(const Vec& a, const Vec& b) const {
    for (std::size_t k = 0; k < a.size() && k < b.size(); ++k) {
      int c = compare_enum(a[k], b[k]);
      if (c != 0) return c < 0;
    }
    return a.size() < b.size();
  }

  // -- constructors for values ---------------------------------------------

  QVal boolean(bool b) const {
    expect_kind(Kind::Bool2);
    return make(b ? 1 : 0);
  }

  /// Chain element n. For the Lawvere chain n may equal the cap N; for the
  /// similarity chain infinity is only reachable through infinity().
  QVal number(std::uint64_t n) const {
    if (d_->kind == Kind::Lawvere) {
      if (n > d_->max_bits) throw InvalidInput("lawvere value " + std::to_string(n) + " exceeds cap");
      return make(n);
    }
    expect_kind(Kind::Similarity);
    if (n >= d_->max_bits) throw InvalidInput("similarity value " + std::to_string(n) + " exceeds chain length");
    return make(n);
  }

  /// The infinite element of a chain (the cap for the Lawvere chain).
  QVal infinity() const {
    if (d_->kind != Kind::Lawvere) expect_kind(Kind::Similarity);
    return make(d_->max_bits);
  }

  QVal word_set(const std::vector<std::string>& ws) const {
    expect_kind(Kind::Language);
    std::uint64_t bits = 0;
    for (const auto& w : ws) {
      auto idx = word_index(w);
      if (!idx) throw InvalidInput("word '" + w + "' is not over the alphabet within length " + name());
      bits |= std::uint64_t{1} << *idx;
    }
    return make(bits);
  }

  const std::vector<std::string>& words() const { return d_->words; }

  std::optional<std::size_t> word_index(std::string_view w) const {
    auto it = d_->word_pos.find(std::string(w));
    if (it == d_->word_pos.end()) return std::nullopt;
    return it->second;
  }

  /// Words of a language value in length-then-lexicographic order.
  std::vector<std::string> words_of(QVal v) const {
    require(v);
    expect_kind(Kind::Language);
    std::vector<std::string> out;
    for (std::size_t k = 0; k < d_->words.size(); ++k)
      if (v.bits() >> k & 1) out.push_back(d_->words[k]);
    return out;
  }

  std::string format(QVal v) const {
    require(v);
    switch (d_->kind) {
      case Kind::Bool2: return v.bits() ? "1" : "0";
      case Kind::Lawvere: return std::to_string(v.bits());
      case Kind::Similarity: return v.bits() == d_->max_bits ? "inf" : std::to_string(v.bits());
      case Kind::Language: {
        std::string s = "{";
        bool first = true;
        for (const auto& w : words_of(v)) {
          if (!first) s += ",";
          first = false;
          s += w.empty() ? "eps" : w;
        }
        return s + "}";
      }
    }
    return "?";
  }

  std::string name() const {
    std::string s;
    std::visit(
        [&](const auto& d) {
          using T = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<T, Bool2>) s = "Bool2";
          else if constexpr (std::is_same_v<T, LawvereChain>) s = "LawvereChain(" + std::to_string(d.n) + ")";
          else if constexpr (std::is_same_v<T, SimilarityChain>) s = "SimilarityChain(" + std::to_string(d.n) + ")";
          else {
            s = "LanguageTrunc({";
            for (std::size_t k = 0; k < d.alphabet.size(); ++k) s += (k ? "," : "") + d.alphabet[k];
            s += "}," + std::to_string(d.max_len) + ")";
          }
        },
        d_->desc);
    return opposite_ ? s + "^o" : s;
  }

  friend bool operator==(const Quantale& a, const Quantale& b) {
    return a.opposite_ == b.opposite_ && (a.d_ == b.d_ || a.d_->desc == b.d_->desc);
  }

 private:
  struct Data {
    QuantaleDesc desc;
    Kind kind = Kind::Bool2;
    std::uint64_t max_bits = 1;  // largest chain position, or the full word mask
    QVal unit, top, bottom;
    std::vector<std::string> words;
    std::unordered_map<std::string, std::size_t> word_pos;
    std::vector<std::int16_t> concat;  // words x words -> index or -1
    bool enumerable = true;
    std::vector<QVal> carrier;
  };

  static Data build(QuantaleDesc desc) {
    Data d;
    d.desc = std::move(desc);
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Bool2>) {
            d.kind = Kind::Bool2;
            d.max_bits = 1;
            d.unit = d.top = QVal(Kind::Bool2, 1);
            d.bottom = QVal(Kind::Bool2, 0);
          } else if constexpr (std::is_same_v<T, LawvereChain>) {
            if (x.n < 1) throw InvalidInput("LawvereChain requires N >= 1");
            d.kind = Kind::Lawvere;
            d.max_bits = x.n;
            d.unit = d.top = QVal(Kind::Lawvere, 0);
            d.bottom = QVal(Kind::Lawvere, x.n);
          } else if constexpr (std::is_same_v<T, SimilarityChain>) {
            if (x.n < 1) throw InvalidInput("SimilarityChain requires N >= 1");
            d.kind = Kind::Similarity;
            d.max_bits = std::uint64_t{x.n} + 1;
            d.unit = d.top = QVal(Kind::Similarity, d.max_bits);
            d.bottom = QVal(Kind::Similarity, 0);
          } else {
            build_language(d, x);
          }
        },
        d.desc);
    if (d.kind == Kind::Language) {
      d.enumerable = d.words.size() <= kMaxEnumeratedWords;
      if (d.enumerable) {
        std::uint64_t n = std::uint64_t{1} << d.words.size();
        d.carrier.reserve(n);
        for (std::uint64_t b = 0; b < n; ++b) d.carrier.emplace_back(Kind::Language, b);
        std::sort(d.carrier.begin(), d.carrier.end(), [](QVal a, QVal b) {
          int pa = std::popcount(a.bits()), pb = std::popcount(b.bits());
          if (pa != pb) return pa < pb;
          std::uint64_t x = a.bits() ^ b.bits();
          return x != 0 && (a.bits() & (x & (~x + 1))) != 0;
        });
      }
    } else {
      for (std::uint64_t b = 0; b <= d.max_bits; ++b) d.carrier.emplace_back(d.kind, b);
    }
    return d;
  }

  static void build_language(Data& d, const LanguageTrunc& x) {
    if (x.alphabet.empty()) throw InvalidInput("LanguageTrunc requires a nonempty alphabet");
    for (std::size_t i = 0; i < x.alphabet.size(); ++i) {
      if (x.alphabet[i].size() != 1) throw InvalidInput("alphabet symbols must be single characters");
      for (std::size_t j = 0; j < i; ++j)
        if (x.alphabet[i] == x.alphabet[j]) throw InvalidInput("duplicate alphabet symbol " + x.alphabet[i]);
    }
    d.kind = Kind::Language;
    // length-then-lexicographic in the given symbol order
    std::vector<std::string> layer{""};
    d.words.push_back("");
    for (unsigned len = 1; len <= x.max_len; ++len) {
      std::vector<std::string> next;
      for (const auto& w : layer)
        for (const auto& s : x.alphabet) next.push_back(w + s);
      if (d.words.size() + next.size() > kMaxWords)
        throw InvalidInput("LanguageTrunc has more than 64 words; reduce alphabet or maxLen");
      d.words.insert(d.words.end(), next.begin(), next.end());
      layer = std::move(next);
    }
    for (std::size_t k = 0; k < d.words.size(); ++k) d.word_pos.emplace(d.words[k], k);
    std::size_t n = d.words.size();
    d.concat.assign(n * n, -1);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        auto it = d.word_pos.find(d.words[i] + d.words[j]);
        if (it != d.word_pos.end()) d.concat[i * n + j] = static_cast<std::int16_t>(it->second);
      }
    d.max_bits = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    d.unit = QVal(Kind::Language, 1);  // {ε}
    d.top = QVal(Kind::Language, d.max_bits);
    d.bottom = QVal(Kind::Language, 0);
  }

  QVal make(std::uint64_t bits) const { return QVal(d_->kind, bits); }

  void expect_kind(Kind k) const {
    if (d_->kind != k)
      throw InvalidInput(std::string("expected a ") + kind_name(k) + " quantale, got " + kind_name(d_->kind));
  }

  bool leq_raw(std::uint64_t a, std::uint64_t b) const {
    switch (d_->kind) {
      case Kind::Lawvere: return a >= b;
      case Kind::Language: return (a & ~b) == 0;
      default: return a <= b;
    }
  }

  std::uint64_t join_raw(std::uint64_t a, std::uint64_t b) const {
    switch (d_->kind) {
      case Kind::Lawvere: return std::min(a, b);
      case Kind::Language: return a | b;
      default: return std::max(a, b);
    }
  }

  std::uint64_t meet_raw(std::uint64_t a, std::uint64_t b) const {
    switch (d_->kind) {
      case Kind::Lawvere: return std::max(a, b);
      case Kind::Language: return a & b;
      default: return std::min(a, b);
    }
  }

  std::uint64_t mul_raw(std::uint64_t a, std::uint64_t b) const {
    switch (d_->kind) {
      case Kind::Bool2: return a & b;
      case Kind::Lawvere: return std::min(a + b, d_->max_bits);
      case Kind::Similarity: return std::min(a, b);
      case Kind::Language: {
        std::size_t n = d_->words.size();
        std::uint64_t r = 0;
        for (std::uint64_t x = a; x; x &= x - 1) {
          std::size_t v = static_cast<std::size_t>(std::countr_zero(x));
          for (std::uint64_t y = b; y; y &= y - 1) {
            auto c = d_->concat[v * n + static_cast<std::size_t>(std::countr_zero(y))];
            if (c >= 0) r |= std::uint64_t{1} << c;
          }
        }
        return r;
      }
    }
    return 0;
  }

  // a ▷ c in the unreversed quantale
  std::uint64_t rres_raw(std::uint64_t a, std::uint64_t c) const {
    switch (d_->kind) {
      case Kind::Bool2: return (!a || c) ? 1 : 0;
      case Kind::Lawvere: return c > a ? c - a : 0;
      case Kind::Similarity: return a <= c ? d_->max_bits : c;
      case Kind::Language: {
        // w such that every defined v·w lands in c
        std::size_t n = d_->words.size();
        std::uint64_t r = 0;
        for (std::size_t w = 0; w < n; ++w) {
          bool ok = true;
          for (std::uint64_t x = a; x && ok; x &= x - 1) {
            auto k = d_->concat[static_cast<std::size_t>(std::countr_zero(x)) * n + w];
            if (k >= 0 && !(c >> k & 1)) ok = false;
          }
          if (ok) r |= std::uint64_t{1} << w;
        }
        return r;
      }
    }
    return 0;
  }

  // c ◁ a in the unreversed quantale
  std::uint64_t lres_raw(std::uint64_t c, std::uint64_t a) const {
    switch (d_->kind) {
      case Kind::Language: {
        std::size_t n = d_->words.size();
        std::uint64_t r = 0;
        for (std::size_t w = 0; w < n; ++w) {
          bool ok = true;
          for (std::uint64_t x = a; x && ok; x &= x - 1) {
            auto k = d_->concat[w * n + static_cast<std::size_t>(std::countr_zero(x))];
            if (k >= 0 && !(c >> k & 1)) ok = false;
          }
          if (ok) r |= std::uint64_t{1} << w;
        }
        return r;
      }
      default: return rres_raw(a, c);
    }
  }

  std::shared_ptr<const Data> d_;
  bool opposite_ = false;
};

// ---------------------------------------------------------------------------
// Law checking

struct QuantaleLawReport {
  LawReport laws;
  bool commutative = true;        // a·b = b·a everywhere
  bool residuals_coincide = true;  // a ▷ c = c ◁ a everywhere
  std::size_t carrier_size = 0;

  bool ok() const { return laws.ok(); }
};

inline constexpr double kDefaultTripleBudget = 1e7;

/// Exhaustively checks the quantale axioms and the residual laws over the carrier.
inline QuantaleLawReport check_quantale_laws(const Quantale& q, double triple_budget = kDefaultTripleBudget) {
  double n = q.carrier_size();
  if (n * n * n > triple_budget) throw BudgetExceeded("quantale law check on " + q.name(), n * n * n, triple_budget);
  const auto& C = q.carrier();
  const QVal e = q.unit(), bot = q.bottom(), top = q.top();

  QuantaleLawReport rep;
  rep.carrier_size = C.size();
  std::vector<LawResult> laws;
  std::unordered_map<std::string, std::size_t> slot;
  auto law = [&](const std::string& name) -> LawResult& {
    auto it = slot.find(name);
    if (it != slot.end()) return laws[it->second];
    slot.emplace(name, laws.size());
    laws.push_back(LawResult{name, true, {}});
    return laws.back();
  };
  auto fail = [&](const std::string& name, std::initializer_list<QVal> vs) {
    LawResult& r = law(name);
    if (!r.passed) return;
    r.passed = false;
    for (QVal v : vs) r.counterexample.push_back(q.format(v));
  };
  auto check = [&](const std::string& name, bool holds, std::initializer_list<QVal> vs) {
    law(name);
    if (!holds) fail(name, vs);
  };

  // register in a stable order
  for (const char* name :
       {"bounds", "join is least upper bound", "meet is greatest lower bound", "left unit", "right unit",
        "bottom annihilates", "associativity", "left distributivity over joins", "right distributivity over joins",
        "right residual adjunction", "left residual adjunction", "right counit r(r>s) <= s",
        "left counit (s<r)r <= s", "mixed associativity r>(s<t) = (r>s)<t", "right composition (r>s)(s>t) <= r>t",
        "left composition (t<s)(s<r) <= t<r", "e <= r>r", "e <= r<r"})
    law(name);

  for (QVal a : C) {
    check("bounds", q.leq(bot, a) && q.leq(a, top), {a});
    check("left unit", q.mul(e, a) == a, {a});
    check("right unit", q.mul(a, e) == a, {a});
    check("bottom annihilates", q.mul(a, bot) == bot && q.mul(bot, a) == bot, {a});
    check("e <= r>r", q.leq(e, q.rres(a, a)), {a});
    check("e <= r<r", q.leq(e, q.lres(a, a)), {a});
    for (QVal b : C) {
      QVal j = q.join(a, b), m = q.meet(a, b);
      check("join is least upper bound", q.leq(a, j) && q.leq(b, j), {a, b});
      check("meet is greatest lower bound", q.leq(m, a) && q.leq(m, b), {a, b});
      check("right counit r(r>s) <= s", q.leq(q.mul(a, q.rres(a, b)), b), {a, b});
      check("left counit (s<r)r <= s", q.leq(q.mul(q.lres(b, a), a), b), {a, b});
      if (q.mul(a, b) != q.mul(b, a)) rep.commutative = false;
      if (q.rres(a, b) != q.lres(b, a)) rep.residuals_coincide = false;
      for (QVal c : C) {
        if (q.leq(a, c) && q.leq(b, c) && !q.leq(j, c)) fail("join is least upper bound", {a, b, c});
        if (q.leq(c, a) && q.leq(c, b) && !q.leq(c, m)) fail("meet is greatest lower bound", {a, b, c});
        check("associativity", q.mul(q.mul(a, b), c) == q.mul(a, q.mul(b, c)), {a, b, c});
        check("left distributivity over joins", q.mul(a, q.join(b, c)) == q.join(q.mul(a, b), q.mul(a, c)),
              {a, b, c});
        check("right distributivity over joins", q.mul(q.join(a, b), c) == q.join(q.mul(a, c), q.mul(b, c)),
              {a, b, c});
        bool prod = q.leq(q.mul(a, b), c);
        check("right residual adjunction", prod == q.leq(b, q.rres(a, c)), {a, b, c});
        check("left residual adjunction", prod == q.leq(a, q.lres(c, b)), {a, b, c});
        check("mixed associativity r>(s<t) = (r>s)<t", q.rres(a, q.lres(b, c)) == q.lres(q.rres(a, b), c),
              {a, b, c});
        check("right composition (r>s)(s>t) <= r>t", q.leq(q.mul(q.rres(a, b), q.rres(b, c)), q.rres(a, c)),
              {a, b, c});
        check("left composition (t<s)(s<r) <= t<r", q.leq(q.mul(q.lres(c, b), q.lres(b, a)), q.lres(c, a)),
              {a, b, c});
      }
    }
  }
  rep.laws.results = std::move(laws);
  return rep;
}

}  // namespace qenrich
