#pragma once

// JSON reading and writing for quantales, values, spaces, relations,
// contexts and concepts. Objects are read strictly: unknown keys are errors.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qenrich/error.hpp"
#include "qenrich/macneille.hpp"
#include "qenrich/matrix.hpp"
#include "qenrich/quantale.hpp"
#include "qenrich/relation.hpp"
#include "qenrich/space.hpp"

namespace qenrich::io {

using json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

/// Malformed or schema-violating input.
class SchemaError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("malformed JSON in '" + path + "': " + e.what());
  }
}

inline void require_object(const json& j, const std::string& what, std::initializer_list<const char*> required,
                           std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) throw SchemaError(what + " must be an object");
  std::set<std::string> known;
  for (const char* k : required) {
    known.insert(k);
    if (!j.contains(k)) throw SchemaError(what + " is missing '" + k + "'");
  }
  for (const char* k : optional) known.insert(k);
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw SchemaError(what + " has unknown field '" + k + "'");
}

/// Checks "formatVersion": 1 on a top-level document.
inline void require_version(const json& j) {
  if (!j.is_object() || !j.contains("formatVersion")) throw SchemaError("missing formatVersion");
  if (j["formatVersion"] != kFormatVersion) throw SchemaError("unsupported formatVersion");
}

inline std::string get_string(const json& j, const std::string& what) {
  if (!j.is_string()) throw SchemaError(what + " must be a string");
  return j.get<std::string>();
}

inline unsigned get_natural(const json& j, const std::string& what) {
  if (!j.is_number_unsigned()) throw SchemaError(what + " must be a natural number");
  return j.get<unsigned>();
}

inline std::vector<std::string> get_names(const json& j, const std::string& what) {
  if (!j.is_array()) throw SchemaError(what + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) out.push_back(get_string(e, what));
  return out;
}

// ---------------------------------------------------------------------------
// Quantales and values

inline Quantale quantale_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw SchemaError("quantale needs a 'kind'");
  const std::string kind = get_string(j["kind"], "quantale kind");
  if (kind == "bool2") {
    require_object(j, "bool2 quantale", {"kind"});
    return Quantale(Bool2{});
  }
  if (kind == "lawvere") {
    require_object(j, "lawvere quantale", {"kind", "N"});
    return Quantale(LawvereChain{get_natural(j["N"], "N")});
  }
  if (kind == "similarity") {
    require_object(j, "similarity quantale", {"kind", "N"});
    return Quantale(SimilarityChain{get_natural(j["N"], "N")});
  }
  if (kind == "language") {
    require_object(j, "language quantale", {"kind", "alphabet", "maxLen"});
    return Quantale(LanguageTrunc{get_names(j["alphabet"], "alphabet"), get_natural(j["maxLen"], "maxLen")});
  }
  throw SchemaError("unknown quantale kind '" + kind + "'");
}

inline json quantale_to_json(const Quantale& q) {
  json j;
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Bool2>) {
          j["kind"] = "bool2";
        } else if constexpr (std::is_same_v<T, LawvereChain>) {
          j["kind"] = "lawvere";
          j["N"] = d.n;
        } else if constexpr (std::is_same_v<T, SimilarityChain>) {
          j["kind"] = "similarity";
          j["N"] = d.n;
        } else {
          j["kind"] = "language";
          j["alphabet"] = d.alphabet;
          j["maxLen"] = d.max_len;
        }
      },
      q.desc());
  return j;
}

/// Shorthand used on the command line: bool2, lawvere:N, similarity:N,
/// language:SYMBOLS:MAXLEN (for example language:ab:2).
inline Quantale quantale_from_shorthand(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  auto number = [&](const std::string& p) -> unsigned {
    if (p.empty() || !std::all_of(p.begin(), p.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw SchemaError("bad number '" + p + "' in quantale shorthand");
    return static_cast<unsigned>(std::stoul(p));
  };
  if (parts.size() == 1 && parts[0] == "bool2") return Quantale(Bool2{});
  if (parts.size() == 2 && parts[0] == "lawvere") return Quantale(LawvereChain{number(parts[1])});
  if (parts.size() == 2 && parts[0] == "similarity") return Quantale(SimilarityChain{number(parts[1])});
  if (parts.size() == 3 && parts[0] == "language") {
    std::vector<std::string> alphabet;
    for (char c : parts[1]) alphabet.emplace_back(1, c);
    return Quantale(LanguageTrunc{alphabet, number(parts[2])});
  }
  throw SchemaError("unrecognised quantale shorthand '" + s + "'");
}

inline QVal value_from_json(const Quantale& q, const json& j) {
  switch (q.kind()) {
    case Kind::Bool2:
      if (!j.is_boolean()) throw SchemaError("bool2 values are true or false");
      return q.boolean(j.get<bool>());
    case Kind::Lawvere:
    case Kind::Similarity:
      if (j.is_string() && j.get<std::string>() == "inf") return q.infinity();
      if (!j.is_number_unsigned()) throw SchemaError("chain values are naturals or \"inf\"");
      return q.number(j.get<std::uint64_t>());
    case Kind::Language: {
      if (!j.is_array()) throw SchemaError("language values are arrays of words");
      return q.word_set(get_names(j, "word set"));
    }
  }
  throw SchemaError("unsupported value");
}

inline json value_to_json(const Quantale& q, QVal v) {
  q.require(v);
  switch (q.kind()) {
    case Kind::Bool2: return v.bits() != 0;
    case Kind::Lawvere: return v.bits();
    case Kind::Similarity:
      if (v == q.infinity()) return "inf";
      return v.bits();
    case Kind::Language: return q.words_of(v);
  }
  return nullptr;
}

inline Vec vec_from_json(const Quantale& q, const json& j, std::size_t expected, const std::string& what) {
  if (!j.is_array() || j.size() != expected)
    throw SchemaError(what + " must be an array of " + std::to_string(expected) + " values");
  Vec v;
  for (const auto& e : j) v.push_back(value_from_json(q, e));
  return v;
}

inline json vec_to_json(const Quantale& q, const Vec& v) {
  json a = json::array();
  for (QVal x : v) a.push_back(value_to_json(q, x));
  return a;
}

inline Matrix matrix_from_json(const Quantale& q, const json& j, std::size_t rows, std::size_t cols,
                               const std::string& what) {
  if (!j.is_array() || j.size() != rows)
    throw SchemaError(what + " must have " + std::to_string(rows) + " rows");
  std::vector<Vec> rs;
  for (const auto& r : j) rs.push_back(vec_from_json(q, r, cols, what + " row"));
  return Matrix::from_rows(rs, cols);
}

inline json matrix_to_json(const Quantale& q, const Matrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(vec_to_json(q, m.row(i)));
  return a;
}

// ---------------------------------------------------------------------------
// Spaces, relations, contexts

/// A space object. Nested spaces may omit "quantale" when `outer` is given;
/// if both are present they must agree.
inline Space space_from_json(const json& j, const Quantale* outer = nullptr) {
  require_object(j, "space", {"points", "hom"}, {"quantale", "formatVersion"});
  if (!j.contains("quantale") && !outer) throw SchemaError("space is missing 'quantale'");
  Quantale q = j.contains("quantale") ? quantale_from_json(j["quantale"]) : *outer;
  if (outer && !(q == *outer)) throw SchemaError("nested space uses a different quantale");
  auto names = get_names(j["points"], "points");
  Matrix hom = matrix_from_json(q, j["hom"], names.size(), names.size(), "hom");
  return Space(q, std::move(names), std::move(hom));
}

inline json space_to_json(const Space& X) {
  json j;
  j["quantale"] = quantale_to_json(X.quantale());
  j["points"] = X.names();
  j["hom"] = matrix_to_json(X.quantale(), X.hom());
  return j;
}

inline Relation relation_from_json(const json& j) {
  require_object(j, "relation", {"source", "target", "matrix"}, {"formatVersion"});
  Space X = space_from_json(j["source"]);
  Space Y = space_from_json(j["target"], &X.quantale());
  Matrix m = matrix_from_json(X.quantale(), j["matrix"], X.size(), Y.size(), "matrix");
  return Relation(std::move(X), std::move(Y), std::move(m));
}

namespace detail {
inline Space side_from_json(const json& j, const Quantale& q, const std::string& what) {
  if (j.is_object() && j.contains("discretePoints")) {
    require_object(j, what, {"discretePoints"});
    return discrete_space(q, get_names(j["discretePoints"], what + " points"));
  }
  return space_from_json(j, &q);
}
}  // namespace detail

inline Context context_from_json(const json& j) {
  require_object(j, "context", {"quantale", "X", "A", "I"}, {"formatVersion"});
  Quantale q = quantale_from_json(j["quantale"]);
  Space X = detail::side_from_json(j["X"], q, "X");
  Space A = detail::side_from_json(j["A"], q, "A");
  Matrix I = matrix_from_json(q, j["I"], X.size(), A.size(), "I");
  return Context(std::move(X), std::move(A), std::move(I));
}

inline json concept_to_json(const Quantale& q, const Concept& k) {
  json j;
  j["extent"] = vec_to_json(q, k.extent);
  j["intent"] = vec_to_json(q, k.intent);
  return j;
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SchemaError("cannot write '" + path + "'");
  out << text;
}

}  // namespace qenrich::io
