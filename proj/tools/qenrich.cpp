// Command-line front end: checks, concept lattices, canonical extensions,
// functor extensions and the automaton demo, all driven by JSON files.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qenrich/json_io.hpp"
#include "qenrich/oracle.hpp"
#include "qenrich/qenrich.hpp"

namespace {

using namespace qenrich;
using io::json;

enum ExitCode : int { kPass = 0, kLawFailed = 1, kBadInput = 2, kOverBudget = 3, kPrecondition = 4 };

struct Options {
  std::string command;
  std::string input;
  std::string quantale;
  std::optional<double> budget;
  bool oracle = false;
  std::string dot_path;
  std::string json_path;
  std::uint64_t seed = 0;
  std::string classes;
  std::string functor_path;
  std::string source_path;
  std::string target_path;
  std::string check = "all";

  double budget_or(double fallback) const { return budget.value_or(fallback); }
};

struct Outcome {
  json report;
  std::ostringstream text;
  int code = kPass;
};

// ---------------------------------------------------------------------------
// Shared helpers

json read_document(const std::string& path) {
  json doc = io::read_file(path);
  io::require_version(doc);
  return doc;
}

json laws_to_json(const LawReport& r) {
  json a = json::array();
  for (const auto& l : r.results) {
    json e;
    e["law"] = l.law;
    e["passed"] = l.passed;
    e["counterexample"] = l.counterexample;
    a.push_back(std::move(e));
  }
  return a;
}

void laws_to_text(std::ostream& out, const LawReport& r) {
  for (const auto& l : r.results) {
    out << "  " << (l.passed ? "ok   " : "FAIL ") << l.law;
    if (!l.passed && !l.counterexample.empty()) {
      out << " at";
      for (const auto& w : l.counterexample) out << " " << w;
    }
    out << "\n";
  }
}

oracle::Table to_table(const Matrix& m) {
  oracle::Table t;
  for (std::size_t i = 0; i < m.rows(); ++i) t.push_back(m.row(i));
  return t;
}

std::string count(std::size_t n, const std::string& noun) {
  return std::to_string(n) + " " + noun + (n == 1 ? "" : "s");
}

std::string concept_name(std::size_t k) { return "k" + std::to_string(k); }

json concepts_to_json(const Completion& M) {
  const auto& q = M.context().quantale();
  json a = json::array();
  for (std::size_t k = 0; k < M.size(); ++k) {
    json e;
    e["name"] = concept_name(k);
    e["extent"] = io::vec_to_json(q, M.concept_at(k).extent);
    e["intent"] = io::vec_to_json(q, M.concept_at(k).intent);
    a.push_back(std::move(e));
  }
  return a;
}

json edges_to_json(const Space& S) {
  json a = json::array();
  for (auto [lo, hi] : covering_edges(S)) a.push_back(json::array({S.name(lo), S.name(hi)}));
  return a;
}

std::vector<std::string> concept_labels(const Completion& M) {
  const auto& q = M.context().quantale();
  std::vector<std::string> labels;
  for (const auto& k : M.concepts()) labels.push_back(format_vec(q, k.extent) + " / " + format_vec(q, k.intent));
  return labels;
}

// Compares the fast enumeration against the brute-force one.
json oracle_concepts(const Completion& M, double budget, bool& agrees) {
  const auto& ctx = M.context();
  auto ref = oracle::concepts(ctx.quantale(), to_table(ctx.I()), ctx.A().size(), budget);
  agrees = ref.size() == M.size();
  for (std::size_t k = 0; agrees && k < ref.size(); ++k)
    agrees = ref[k].extent == M.concept_at(k).extent && ref[k].intent == M.concept_at(k).intent;
  json j;
  j["count"] = ref.size();
  j["agrees"] = agrees;
  return j;
}

// ---------------------------------------------------------------------------
// check

void check_quantale(const Quantale& q, const Options& o, Outcome& out) {
  auto rep = check_quantale_laws(q, o.budget_or(kDefaultTripleBudget));
  out.report["kind"] = "quantale";
  out.report["quantale"] = io::quantale_to_json(q);
  out.report["carrierSize"] = rep.carrier_size;
  out.report["commutative"] = rep.commutative;
  out.report["residualsCoincide"] = rep.residuals_coincide;
  out.report["laws"] = laws_to_json(rep.laws);
  bool passed = rep.ok();
  out.text << "quantale " << q.name() << ", " << count(rep.carrier_size, "element")
           << (rep.commutative ? ", commutative" : ", not commutative") << "\n";
  laws_to_text(out.text, rep.laws);

  if (o.oracle) {
    bool agrees = true;
    for (QVal a : q.carrier())
      for (QVal c : q.carrier())
        if (q.rres(a, c) != oracle::rres(q, a, c) || q.lres(c, a) != oracle::lres(q, c, a)) agrees = false;
    out.report["oracle"] = {{"residualsAgree", agrees}};
    out.text << "  oracle residuals " << (agrees ? "agree" : "DISAGREE") << "\n";
    passed = passed && agrees;
  }
  out.report["passed"] = passed;
  out.code = passed ? kPass : kLawFailed;
}

void check_space(const json& doc, const Options& o, Outcome& out) {
  Space X = io::space_from_json(doc);
  const auto& q = X.quantale();
  auto order = underlying_order(X);
  bool symmetric = true;
  for (std::size_t x = 0; x < X.size(); ++x)
    for (std::size_t y = 0; y < X.size(); ++y) symmetric = symmetric && X(x, y) == X(y, x);

  // Seeded sweep: random (co)presheaves satisfy the Yoneda lemma.
  constexpr int kSamples = 32;
  Rng rng(o.seed);
  LawReport sweep{{{"presheaf Yoneda X(-,x) > phi = phi(x)", true, {}},
                   {"copresheaf Yoneda psi < X(a,-) = psi(a)", true, {}}}};
  for (int s = 0; s < kSamples; ++s) {
    Presheaf phi = random_presheaf(X, rng);
    Copresheaf psi = random_copresheaf(X, rng);
    for (std::size_t x = 0; x < X.size(); ++x) {
      if (sweep.results[0].passed && down_hom(q, yoneda_down(X, x), phi) != phi[x])
        sweep.results[0] = {sweep.results[0].law, false, {format_vec(q, phi), X.name(x)}};
      if (sweep.results[1].passed && up_hom(q, psi, yoneda_up(X, x)) != psi[x])
        sweep.results[1] = {sweep.results[1].law, false, {format_vec(q, psi), X.name(x)}};
    }
  }

  out.report["kind"] = "space";
  out.report["quantale"] = io::quantale_to_json(q);
  out.report["points"] = X.names();
  out.report["skeletal"] = order.skeletal;
  out.report["symmetric"] = symmetric;
  out.report["sweep"] = {{"seed", o.seed}, {"samples", kSamples}, {"laws", laws_to_json(sweep)}};
  out.report["passed"] = sweep.ok();
  out.text << "space over " << q.name() << " with " << count(X.size(), "point") << ": valid"
           << (order.skeletal ? ", skeletal" : ", not skeletal") << (symmetric ? ", symmetric" : "") << "\n";
  laws_to_text(out.text, sweep);
  out.code = sweep.ok() ? kPass : kLawFailed;
}

void check_relation(const json& doc, const Options& o, Outcome& out) {
  Relation R = io::relation_from_json(doc);
  const Space& X = R.source();
  const Space& Y = R.target();

  constexpr int kSamples = 32;
  Rng rng(o.seed);
  LawReport sweep{{{"counit R.(R>T) <= T", true, {}}, {"unit S <= R>(R.S)", true, {}}}};
  for (int s = 0; s < kSamples; ++s) {
    Relation T = random_relation(X, Y, rng);
    Relation S = random_relation(Y, Y, rng);
    if (!rel_order(compose(R, rres_rel(R, T)), T)) sweep.results[0].passed = false;
    if (!rel_order(S, rres_rel(R, compose(R, S)))) sweep.results[1].passed = false;
  }

  out.report["kind"] = "relation";
  out.report["quantale"] = io::quantale_to_json(X.quantale());
  out.report["source"] = X.names();
  out.report["target"] = Y.names();
  out.report["sweep"] = {{"seed", o.seed}, {"samples", kSamples}, {"laws", laws_to_json(sweep)}};
  out.report["passed"] = sweep.ok();
  out.text << "relation " << X.size() << " -> " << Y.size() << " over " << X.quantale().name() << ": valid\n";
  laws_to_text(out.text, sweep);
  out.code = sweep.ok() ? kPass : kLawFailed;
}

void check_context(const json& doc, Outcome& out) {
  Context ctx = io::context_from_json(doc);
  out.report["kind"] = "context";
  out.report["quantale"] = io::quantale_to_json(ctx.quantale());
  out.report["objects"] = ctx.X().names();
  out.report["attributes"] = ctx.A().names();
  out.report["passed"] = true;
  out.text << "context " << ctx.X().size() << " x " << ctx.A().size() << " over " << ctx.quantale().name()
           << ": valid\n";
}

void cmd_check(const Options& o, Outcome& out) {
  if (o.input.empty() == o.quantale.empty()) throw io::SchemaError("check needs exactly one of FILE or --quantale");
  if (!o.quantale.empty()) return check_quantale(io::quantale_from_shorthand(o.quantale), o, out);
  json doc = read_document(o.input);
  if (doc.contains("kind")) {
    doc.erase("formatVersion");
    return check_quantale(io::quantale_from_json(doc), o, out);
  }
  if (doc.contains("points")) return check_space(doc, o, out);
  if (doc.contains("matrix")) return check_relation(doc, o, out);
  if (doc.contains("I")) return check_context(doc, out);
  throw io::SchemaError("cannot tell what '" + o.input + "' describes");
}

// ---------------------------------------------------------------------------
// concepts

void cmd_concepts(const Options& o, Outcome& out) {
  Context ctx = io::context_from_json(read_document(o.input));
  Completion M = enumerate_concepts(ctx, o.budget_or(kDefaultConceptBudget));
  const auto& q = ctx.quantale();

  out.report["quantale"] = io::quantale_to_json(q);
  out.report["objects"] = ctx.X().names();
  out.report["attributes"] = ctx.A().names();
  out.report["count"] = M.size();
  out.report["concepts"] = concepts_to_json(M);
  out.report["coveringEdges"] = edges_to_json(M.space());

  out.text << count(M.size(), "concept") << " over " << q.name() << "\n";
  for (std::size_t k = 0; k < M.size(); ++k)
    out.text << "  " << concept_name(k) << "  extent " << format_vec(q, M.concept_at(k).extent) << "  intent "
             << format_vec(q, M.concept_at(k).intent) << "\n";
  for (auto [lo, hi] : covering_edges(M.space()))
    out.text << "  " << concept_name(lo) << " < " << concept_name(hi) << "\n";

  if (o.oracle) {
    bool agrees = false;
    out.report["oracle"] = oracle_concepts(M, o.budget_or(oracle::kConceptBudget), agrees);
    out.text << "oracle " << (agrees ? "agrees" : "DISAGREES") << "\n";
    if (!agrees) out.code = kLawFailed;
  }
  if (!o.dot_path.empty()) io::write_text(o.dot_path, to_dot(M.space(), concept_labels(M)));
}

// ---------------------------------------------------------------------------
// canext

struct CanExtConfig {
  Space space;
  ClassSpec filters;
  ClassSpec ideals;
};

CanExtConfig read_canext_config(const std::string& path, const std::string& classes_override) {
  json doc = read_document(path);
  io::require_object(doc, "canonical extension config", {"formatVersion", "space", "filters", "ideals"});
  Space C = io::space_from_json(doc["space"]);
  auto spec = [&](const json& j, const char* what) {
    return parse_class_spec(classes_override.empty() ? io::get_string(j, what) : classes_override);
  };
  return {std::move(C), spec(doc["filters"], "filters"), spec(doc["ideals"], "ideals")};
}

CanExt build(const CanExtConfig& c, const Options& o) {
  return canonical_extension(c.space, c.filters, c.ideals, o.budget_or(kDefaultClassBudget),
                             o.budget_or(kDefaultConceptBudget));
}

void cmd_canext(const Options& o, Outcome& out) {
  const CanExtConfig cfg = read_canext_config(o.input, o.classes);
  const CanExt E = build(cfg, o);
  const Space& C = E.base();
  const auto& q = C.quantale();
  const Completion& M = E.delta();

  LawReport laws;
  for (const auto& r : {check_compactness(E), check_density(E), check_yoneda_routes(E)})
    laws.results.insert(laws.results.end(), r.results.begin(), r.results.end());
  auto preservation = check_embedding_preservation(E, finite_battery(C));
  SpaceMap emb(detail::Trusted{}, C, M.space(), E.embedding());
  const bool iso = completion_iso(C, SpaceMap::identity(C), M.space(), emb).has_value();

  json filters = json::array(), ideals = json::array();
  for (const auto& f : E.filters()) filters.push_back(io::vec_to_json(q, f));
  for (const auto& i : E.ideals()) ideals.push_back(io::vec_to_json(q, i));
  json embedding = json::array();
  for (std::size_t c = 0; c < C.size(); ++c)
    embedding.push_back({{"point", C.name(c)}, {"concept", concept_name(E.embedding(c))}});
  json closed = json::array(), open = json::array();
  for (const auto& f : E.filters()) closed.push_back(concept_name(M.index_of(closed_element(E, f))));
  for (const auto& i : E.ideals()) open.push_back(concept_name(M.index_of(open_element(E, i))));

  out.report["quantale"] = io::quantale_to_json(q);
  out.report["points"] = C.names();
  out.report["filterClass"] = class_spec_name(E.filter_spec());
  out.report["idealClass"] = class_spec_name(E.ideal_spec());
  out.report["filters"] = std::move(filters);
  out.report["ideals"] = std::move(ideals);
  out.report["count"] = M.size();
  out.report["concepts"] = concepts_to_json(M);
  out.report["coveringEdges"] = edges_to_json(M.space());
  out.report["embedding"] = std::move(embedding);
  out.report["closedElements"] = std::move(closed);
  out.report["openElements"] = std::move(open);
  out.report["laws"] = laws_to_json(laws);
  out.report["preservation"] = {{"checked", preservation.checked}, {"failures", preservation.failures}};
  out.report["isomorphicToBase"] = iso;

  out.text << "canonical extension of " << count(C.size(), "point") << " over " << q.name() << " ("
           << class_spec_name(E.filter_spec()) << " filters, " << class_spec_name(E.ideal_spec()) << " ideals)\n"
           << "  " << count(E.filters().size(), "filter") << ", " << count(E.ideals().size(), "ideal") << ", "
           << count(M.size(), "concept") << "\n";
  laws_to_text(out.text, laws);
  out.text << "  embedding preserves " << (preservation.checked - preservation.failures.size()) << " of "
           << preservation.checked << " battery (co)limits\n"
           << "  isomorphic to the base: " << (iso ? "yes" : "no") << "\n";

  bool passed = laws.ok();
  if (o.oracle) {
    bool agrees = false;
    out.report["oracle"] = oracle_concepts(M, o.budget_or(oracle::kConceptBudget), agrees);
    out.text << "oracle " << (agrees ? "agrees" : "DISAGREES") << "\n";
    passed = passed && agrees;
  }
  out.report["passed"] = passed;
  out.code = passed ? kPass : kLawFailed;
  if (!o.dot_path.empty()) io::write_text(o.dot_path, to_dot(M.space(), concept_labels(M)));
}

// ---------------------------------------------------------------------------
// extend

SpaceMap read_functor(const std::string& path, const Space& C, const Space& D) {
  json doc = read_document(path);
  io::require_object(doc, "functor", {"formatVersion", "map"});
  const json& m = doc["map"];
  if (!m.is_object()) throw io::SchemaError("functor map must be an object from source to target points");
  std::vector<std::size_t> assignment;
  for (std::size_t c = 0; c < C.size(); ++c) {
    if (!m.contains(C.name(c))) throw io::SchemaError("functor map is missing point '" + C.name(c) + "'");
    const std::string target = io::get_string(m[C.name(c)], "functor image");
    auto it = std::find(D.names().begin(), D.names().end(), target);
    if (it == D.names().end()) throw io::SchemaError("functor image '" + target + "' is not a target point");
    assignment.push_back(static_cast<std::size_t>(it - D.names().begin()));
  }
  for (const auto& [k, v] : m.items())
    if (std::find(C.names().begin(), C.names().end(), k) == C.names().end())
      throw io::SchemaError("functor map has unknown source point '" + k + "'");
  return SpaceMap(C, D, std::move(assignment));
}

json precondition(bool holds, const std::optional<std::string>& violator) {
  json j;
  j["holds"] = holds;
  j["violator"] = violator ? json(*violator) : json(nullptr);
  return j;
}

void cmd_extend(const Options& o, Outcome& out) {
  if (o.check != "all" && o.check != "exchange" && o.check != "adjunction")
    throw io::SchemaError("--check must be all, exchange or adjunction");
  const CanExtConfig src = read_canext_config(o.source_path, o.classes);
  const CanExtConfig tgt = read_canext_config(o.target_path, o.classes);
  SpaceMap G = read_functor(o.functor_path, src.space, tgt.space);
  const FunctorExtension X(G, build(src, o), build(tgt, o));
  const CanExt& EC = X.source();
  const CanExt& ED = X.target();
  const auto& q = EC.quantale();

  auto describe_filter_c = [&](std::size_t f) { return "filter " + format_vec(q, EC.filters()[f]) + " of the source"; };
  auto describe_ideal_c = [&](std::size_t i) { return "ideal " + format_vec(q, EC.ideals()[i]) + " of the source"; };
  const auto lv = X.l_violator(), rv = X.r_violator(), pv = X.pi_violator(), sv = X.sigma_violator();
  auto opt = [](auto v, auto describe) -> std::optional<std::string> {
    if (!v) return std::nullopt;
    return describe(*v);
  };
  out.report["functor"] = G.assignment();
  out.report["sourceConcepts"] = EC.delta().size();
  out.report["targetConcepts"] = ED.delta().size();
  out.report["preconditions"] = {
      {"G_l maps filters into filters", precondition(!lv, opt(lv, [&](std::size_t f) { return X.describe_filter_d(f); }))},
      {"G_r maps ideals into ideals", precondition(!rv, opt(rv, [&](std::size_t i) { return X.describe_ideal_d(i); }))},
      {"G_pi maps ideals into ideals", precondition(!pv, opt(pv, describe_ideal_c))},
      {"G_sigma maps filters into filters", precondition(!sv, opt(sv, describe_filter_c))}};
  out.text << "functor extension: " << count(EC.delta().size(), "source concept") << ", "
           << count(ED.delta().size(), "target concept") << "\n";

  bool passed = true;
  if (o.check != "adjunction") {
    auto exchange = check_exchange(G, EC, ED);
    out.report["exchange"] = laws_to_json(exchange);
    laws_to_text(out.text, exchange);
    passed = exchange.ok();
  }
  if (o.check != "exchange") {
    if (lv || rv) {
      const PreconditionFailed e = lv ? PreconditionFailed("G_l does not map filters into filters", X.describe_filter_d(*lv))
                                      : PreconditionFailed("G_r does not map ideals into ideals", X.describe_ideal_d(*rv));
      out.report["error"] = {{"type", "PreconditionFailed"}, {"message", e.what()}, {"violator", e.violator()}};
      out.report["passed"] = false;
      out.text << "precondition failed: " << e.what() << "\n";
      out.code = kPrecondition;
      return;
    }
    auto rep = check_adjunctions(X);
    auto t = extension_tables(X);
    auto names = [](const std::vector<std::size_t>& v) {
      json a = json::array();
      for (std::size_t k : v) a.push_back(concept_name(k));
      return a;
    };
    out.report["adjunction"] = laws_to_json(rep.laws);
    out.report["tables"] = {{"G^l", names(t.l)}, {"G^r", names(t.r)}, {"G^pi", names(t.pi)}, {"G^sigma", names(t.sigma)}};
    laws_to_text(out.text, rep.laws);
    passed = passed && rep.laws.ok();
  }
  out.report["passed"] = passed;
  out.code = passed ? kPass : kLawFailed;
}

// ---------------------------------------------------------------------------
// automata

void cmd_automata(const Options& o, Outcome& out) {
  json doc = read_document(o.input);
  io::require_object(doc, "automaton", {"formatVersion", "quantale", "states", "transitions", "initial", "final"});
  Quantale q = io::quantale_from_json(doc["quantale"]);
  auto states = io::get_names(doc["states"], "states");
  if (!doc["transitions"].is_array()) throw io::SchemaError("transitions must be an array");
  std::vector<Transition> transitions;
  for (const auto& t : doc["transitions"]) {
    io::require_object(t, "transition", {"from", "symbol", "to"});
    transitions.push_back({io::get_string(t["from"], "from"), io::get_string(t["to"], "to"),
                           io::get_string(t["symbol"], "symbol")});
  }
  const Space A = automaton_space(q, states, transitions);
  auto flags = [&](const json& j, const char* what) {
    std::vector<bool> f(states.size(), false);
    for (const auto& s : io::get_names(j, what)) f.at(A.index(s)) = true;
    return f;
  };
  const auto initial = flags(doc["initial"], "initial");
  const auto final_states = flags(doc["final"], "final");
  const Presheaf obs = observability(A, final_states);
  const Copresheaf reach = reachability(A, initial);

  json obs_j = json::object(), reach_j = json::object();
  for (std::size_t s = 0; s < A.size(); ++s) {
    obs_j[A.name(s)] = io::value_to_json(q, obs[s]);
    reach_j[A.name(s)] = io::value_to_json(q, reach[s]);
  }
  out.report["quantale"] = io::quantale_to_json(q);
  out.report["states"] = states;
  out.report["hom"] = io::matrix_to_json(q, A.hom());
  out.report["observability"] = std::move(obs_j);
  out.report["reachability"] = std::move(reach_j);

  out.text << "automaton with " << count(A.size(), "state") << " over " << q.name() << "\n";
  for (std::size_t s = 0; s < A.size(); ++s)
    out.text << "  " << A.name(s) << "  accepts " << q.format(obs[s]) << "  reached by " << q.format(reach[s]) << "\n";

  if (o.oracle) {
    std::vector<oracle::Edge> edges;
    for (const auto& t : transitions) edges.push_back({A.index(t.from), t.symbol, A.index(t.to)});
    const std::size_t max_len = std::get<LanguageTrunc>(q.desc()).max_len;
    bool agrees = true;
    for (std::size_t s = 0; s < A.size(); ++s)
      for (std::size_t t = 0; t < A.size(); ++t) {
        auto words = oracle::path_words(A.size(), edges, s, t, max_len);
        agrees = agrees && A(s, t) == q.word_set({words.begin(), words.end()});
      }
    out.report["oracle"] = {{"agrees", agrees}};
    out.text << "oracle " << (agrees ? "agrees" : "DISAGREES") << "\n";
    if (!agrees) out.code = kLawFailed;
  }
}

// ---------------------------------------------------------------------------

void run(const Options& o, Outcome& out) {
  out.report["formatVersion"] = io::kFormatVersion;
  out.report["command"] = o.command;
  if (o.command == "check") return cmd_check(o, out);
  if (o.command == "concepts") return cmd_concepts(o, out);
  if (o.command == "canext") return cmd_canext(o, out);
  if (o.command == "extend") return cmd_extend(o, out);
  return cmd_automata(o, out);
}

void fail(Outcome& out, const char* type, const std::string& message, int code) {
  out.report["passed"] = false;
  out.report["error"] = {{"type", type}, {"message", message}};
  out.text.str("");
  out.text << "error: " << message << "\n";
  out.code = code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact quantale-enriched spaces, MacNeille completions and canonical extensions."};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--budget", o.budget, "Bound on every enumeration for this run")->check(CLI::PositiveNumber);
    sub->add_flag("--oracle", o.oracle, "Cross-check against the brute-force reference implementation");
    sub->add_option("--json", o.json_path, "Write the JSON report to this file ('-' for standard output)");
    sub->add_option("--seed", o.seed, "Seed for randomized law sweeps");
  };

  auto* check = app.add_subcommand("check", "Validate a quantale, space, relation or context");
  check->add_option("file", o.input, "JSON document")->check(CLI::ExistingFile);
  check->add_option("--quantale", o.quantale, "Quantale shorthand: bool2, lawvere:N, similarity:N, language:ab:2");
  common(check);

  auto* concepts = app.add_subcommand("concepts", "Enumerate the concepts of a context");
  concepts->add_option("file", o.input, "Context JSON")->required()->check(CLI::ExistingFile);
  concepts->add_option("--dot", o.dot_path, "Write the concept lattice as DOT");
  common(concepts);

  auto* canext = app.add_subcommand("canext", "Build and check a canonical extension");
  canext->add_option("file", o.input, "Canonical extension config JSON")->required()->check(CLI::ExistingFile);
  canext->add_option("--classes", o.classes, "Override both classes: all, representables or finlim");
  canext->add_option("--dot", o.dot_path, "Write the extension as DOT");
  common(canext);

  auto* extend = app.add_subcommand("extend", "Extend a functor to canonical extensions and check the adjunctions");
  extend->add_option("--functor", o.functor_path, "Functor JSON")->required()->check(CLI::ExistingFile);
  extend->add_option("--source", o.source_path, "Source config JSON")->required()->check(CLI::ExistingFile);
  extend->add_option("--target", o.target_path, "Target config JSON")->required()->check(CLI::ExistingFile);
  extend->add_option("--classes", o.classes, "Override all classes: all, representables or finlim");
  extend->add_option("--check", o.check, "all, exchange or adjunction");
  common(extend);

  auto* automata = app.add_subcommand("automata", "Observability and reachability of an automaton");
  automata->add_option("file", o.input, "Automaton JSON")->required()->check(CLI::ExistingFile);
  common(automata);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kPass : kBadInput;
  }
  o.command = app.get_subcommands().front()->get_name();

  Outcome out;
  try {
    run(o, out);
  } catch (const LawViolation& e) {
    fail(out, "LawViolation", e.what(), kLawFailed);
    out.report["error"]["law"] = e.violation().law;
    out.report["error"]["witnesses"] = e.violation().witnesses;
  } catch (const PreconditionFailed& e) {
    fail(out, "PreconditionFailed", e.what(), kPrecondition);
    out.report["error"]["violator"] = e.violator();
  } catch (const BudgetExceeded& e) {
    fail(out, "BudgetExceeded", e.what(), kOverBudget);
  } catch (const InvalidInput& e) {
    fail(out, "InvalidInput", e.what(), kBadInput);
  } catch (const json::exception& e) {
    fail(out, "InvalidInput", e.what(), kBadInput);
  }

  const std::string report = out.report.dump(2) + "\n";
  if (o.json_path == "-") {
    std::cout << report;
  } else {
    if (!o.json_path.empty()) {
      try {
        io::write_text(o.json_path, report);
      } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
      }
    }
    (out.code == kPass ? std::cout : std::cerr) << out.text.str();
  }
  return out.code;
}
