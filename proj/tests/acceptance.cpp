// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "flyaut/automaton.hpp"
#include "flyaut/mso.hpp"
#include "flyaut/oracle.hpp"
#include "flyaut/solve.hpp"
#include "flyaut/term.hpp"
#include "support/checks.hpp"
#include "support/corpus.hpp"

using namespace flyaut;
using flyaut::testing::Rng;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Collects named expectations and reports the first failures.
class Ledger {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (!ok && failed_.size() < 5) failed_.push_back(what);
    if (!ok) ++bad_;
  }
  Outcome outcome(const std::string& summary) const {
    std::ostringstream out;
    out << summary << " (" << total_ - bad_ << "/" << total_ << " checks)";
    for (const auto& f : failed_) out << "; failed: " << f;
    return {bad_ == 0 && total_ > 0, out.str()};
  }

 private:
  std::size_t total_ = 0, bad_ = 0;
  std::vector<std::string> failed_;
};

StateValue lc(std::uint32_t a, std::uint64_t colour) {
  return StateValue::pair(StateValue::label(PortLabel(a)), StateValue::nat(colour));
}

StateValue alpha(std::initializer_list<std::pair<std::uint32_t, std::uint64_t>> pairs) {
  std::vector<StateValue> items;
  for (const auto& [a, c] : pairs) items.push_back(lc(a, c));
  return StateValue::set(items);
}

Term family(const char* name, std::vector<int> params) { return gen_term(name, params).term; }

// 1. The worked example term evaluates to 3a-5b-11c-9a.
Outcome criterion1() {
  const char* text =
      "add(2,3,oplus(add(1,2,oplus(port(1),port(2))),relab(2,3,add(1,2,oplus(port(1),port(2))))))";
  const Term t = parse_term(text);
  eval_term(t);
  const auto start = Clock::now();
  const PGraph g = eval_term(t);
  const double elapsed = seconds_since(start);

  const auto numbers = infix_numbers(t);
  std::map<std::size_t, std::uint32_t> ports;
  for (const auto& [v, port] : g.ports()) ports.emplace(numbers.at(v), port.value());
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& [u, v] : g.edges()) edges.emplace(std::minmax(numbers.at(u), numbers.at(v)));

  Ledger ledger;
  ledger.expect(ports == std::map<std::size_t, std::uint32_t>{{3, 1}, {5, 2}, {9, 1}, {11, 3}}, "vertices 3a 5b 9a 11c");
  ledger.expect(edges == std::set<std::pair<std::size_t, std::size_t>>{{3, 5}, {5, 11}, {9, 11}}, "edges");
  ledger.expect(elapsed < 1e-3, "evaluation under 1 ms");
  return ledger.outcome("example term evaluated in " + std::to_string(elapsed * 1e6) + " us");
}

// 2. Every transition rule of the two hand-built examples.
Outcome criterion2() {
  Ledger ledger;
  const StateValue error = StateValue::atom("Error");
  const PortLabel a(1), b(2), c(3);
  const auto w = [](const char* bits) { return Annotation::parse(bits); };

  const Dfa col = handbuilt_col3();
  ledger.expect(col.leaf(a, w("00")) == alpha({{1, 3}}), "(a,00) -> {(a,3)}");
  ledger.expect(col.leaf(a, w("10")) == alpha({{1, 1}}), "(a,10) -> {(a,1)}");
  ledger.expect(col.leaf(a, w("01")) == alpha({{1, 2}}), "(a,01) -> {(a,2)}");
  ledger.expect(col.leaf(a, w("11")) == error, "(a,11) -> Error");
  ledger.expect(col.oplus(alpha({{1, 1}}), alpha({{2, 2}, {1, 1}})) == alpha({{1, 1}, {2, 2}}), "oplus is union");
  ledger.expect(col.oplus(error, alpha({{1, 1}})) == error && col.oplus(alpha({{1, 1}}), error) == error,
                "oplus with Error");
  for (std::uint64_t i = 1; i <= 3; ++i)
    ledger.expect(col.add(a, b, alpha({{1, i}, {2, i}})) == error, "add_{a,b} with (a,i),(b,i) -> Error");
  ledger.expect(col.add(a, b, alpha({{1, 1}, {2, 2}, {3, 1}})) == alpha({{1, 1}, {2, 2}, {3, 1}}),
                "add_{a,b} without conflict keeps alpha");
  ledger.expect(col.add(a, b, error) == error, "add on Error");
  ledger.expect(col.relab(a, c, alpha({{1, 1}, {2, 3}})) == alpha({{3, 1}, {2, 3}}), "relab replaces a by b");
  ledger.expect(col.relab(a, b, error) == error, "relab on Error");
  ledger.expect(col.accepting(alpha({{1, 1}})) && !col.accepting(error), "accepting states");

  const Nfa proj = handbuilt_col3_proj();
  ledger.expect(proj.rules().leaf(a, Annotation()) == StateSet{alpha({{1, 1}}), alpha({{1, 2}}), alpha({{1, 3}})},
                "projected leaf a -> three states");
  ledger.expect(proj.rules().add(a, b, alpha({{1, 3}, {2, 3}})).empty(), "projected add drops conflicts");

  const auto pm = [](const StateValue& s, std::uint64_t m) { return StateValue::pair(s, StateValue::nat(m)); };
  const Dfa card = handbuilt_col3_card();
  ledger.expect(card.leaf(a, w("00")) == pm(alpha({{1, 3}}), 0), "(a,00) -> ({(a,3)},0)");
  ledger.expect(card.leaf(a, w("10")) == pm(alpha({{1, 1}}), 1), "(a,10) -> ({(a,1)},1)");
  ledger.expect(card.leaf(a, w("01")) == pm(alpha({{1, 2}}), 0), "(a,01) -> ({(a,2)},0)");
  ledger.expect(card.leaf(a, w("11")) == error, "(a,11) -> Error with cardinality");
  ledger.expect(card.oplus(pm(alpha({{1, 1}}), 1), pm(alpha({{2, 3}}), 4)) == pm(alpha({{1, 1}, {2, 3}}), 5),
                "oplus (alpha,m),(beta,p) -> (alpha u beta, m+p)");

  const auto cmin = handbuilt_col3_min();
  const auto sigma = [](std::vector<std::pair<StateValue, std::uint64_t>> entries) {
    std::vector<std::pair<StateValue, StateValue>> out;
    for (auto& [s, m] : entries) out.emplace_back(s, StateValue::nat(m));
    return StateValue::map(out);
  };
  const StateValue leaf = cmin.dfa.leaf(a, Annotation());
  ledger.expect(leaf == sigma({{alpha({{1, 3}}), 0}, {alpha({{1, 1}}), 1}, {alpha({{1, 2}}), 0}}),
                "minimizing leaf {({(a,3)},0),({(a,1)},1),({(a,2)},0)}");
  const StateValue pair = cmin.dfa.oplus(leaf, cmin.dfa.leaf(b, Annotation()));
  ledger.expect(pair.count() == 9 && *pair.find(alpha({{1, 1}, {2, 1}})) == StateValue::nat(2),
                "minimizing oplus adds cardinalities");
  const StateValue joined = cmin.dfa.add(a, b, pair);
  ledger.expect(joined.count() == 6 && joined.find(alpha({{1, 2}, {2, 2}})) == nullptr, "minimizing add filters");
  const StateValue renamed = cmin.dfa.relab(b, a, joined);
  ledger.expect(*renamed.find(alpha({{1, 1}, {1, 3}})) == StateValue::nat(1), "minimizing relab keeps the least m");
  ledger.expect(cmin.output(renamed) == Tropical(0), "output is the least m");
  ledger.expect(cmin.output(sigma({})).is_infinite(), "output of the empty map is infinity");
  ledger.expect(cmin.run(family("clique", {4})).is_infinite(), "clique 4 -> infinity");
  return ledger.outcome("hand-built transition rules reproduced");
}

// 3. Exhaustive oracle agreement on all graphs with at most 4 vertices.
Outcome criterion3() {
  const auto start = Clock::now();
  const auto graphs = flyaut::testing::all_graphs_upto(4);
  Ledger ledger;
  std::size_t formulas = 0;
  auto run_one = [&](const std::string& text, CompileOptions options, const std::string& name) {
    const Formula phi = parse_formula(text);
    const CompiledAutomaton compiled = compile(phi, options);
    std::size_t bad = 0;
    for (const PGraph& g : graphs) bad += flyaut::testing::oracle_disagreements(g, phi, compiled);
    ledger.expect(bad == 0, name + " (" + std::to_string(bad) + " mismatches)");
    ++formulas;
  };
  for (const auto& text : flyaut::testing::formula_battery()) run_one(text, {}, text);
  run_one("(col X Y)", CompileOptions{true}, "(col X Y) expanded");
  return ledger.outcome(std::to_string(formulas) + " formulas on " + std::to_string(graphs.size()) +
                        " graphs, all assignments, " + std::to_string(seconds_since(start)) + " s");
}

// 4. Colouring counts against the enumeration oracle.
Outcome criterion4() {
  const CompiledAutomaton col = compile(parse_formula("(col X Y)"));
  const Formula phi = parse_formula("(col X Y)");
  struct Case {
    const char* name;
    PGraph graph;
    Term term;
    int expected;
  };
  const std::vector<int> k3{3}, c5{5}, p4{4}, g23{2, 3};
  std::vector<Case> cases = {
      {"clique 3", builtin_graph("clique", k3), family("clique", k3), 6},
      {"cycle 5", builtin_graph("cycle", c5), family("cycle", c5), 30},
      {"path 4", builtin_graph("path", p4), family("path", p4), 24},
      {"grid 2x3", builtin_graph("grid", g23), family("grid", g23), -1},
      {"petersen", builtin_graph("petersen", {}), term_from_graph(builtin_graph("petersen", {})).term, 120},
  };
  Ledger ledger;
  std::ostringstream summary;
  for (const auto& c : cases) {
    const BigNat count = count_assignments(col, c.term);
    const BigNat colourings = oracle_count_colorings(c.graph, 3);
    const BigNat pairs = multiset_size(oracle_multispectrum(c.graph, phi));
    ledger.expect(count == colourings && count == pairs, std::string(c.name) + " count " + render(count));
    if (c.expected >= 0) ledger.expect(count == c.expected, std::string(c.name) + " expected value");
    summary << c.name << "=" << render(count) << " ";
  }
  return ledger.outcome(summary.str() + "(oracle agrees)");
}

// 5. Label locality and term independence of compiled states.
Outcome criterion5() {
  Rng rng(5);
  std::vector<CompiledAutomaton> automata;
  for (const auto& text : flyaut::testing::formula_battery()) automata.push_back(compile(parse_formula(text)));
  automata.push_back({handbuilt_col3(), {"X", "Y"}});
  automata.push_back(compile(parse_formula("(col X Y)"), CompileOptions{true}));
  Ledger ledger;
  std::size_t graphs = 0, locality = 0, independence = 0;
  for (; graphs < 60; ++graphs) {
    const std::size_t n = 1 + graphs % 6;
    const PGraph g = flyaut::testing::random_graph(rng, n, 2);
    for (const auto& a : automata) {
      const std::size_t s = a.vars.size();
      independence += flyaut::testing::term_independence_violations(a.dfa, s, g, rng, 3);
      Term t = term_from_graph(g).term;
      if (s > 0) {
        const auto leaves = leaf_positions(t);
        t = annotate(t, flyaut::testing::decode_assignment(leaves, s, rng() & ((1ULL << (s * leaves.size())) - 1)));
      }
      locality += flyaut::testing::label_locality_violations(a.dfa, t);
    }
  }
  for (const auto& a : automata)
    for (int k = 0; k < 20; ++k)
      locality += flyaut::testing::label_locality_violations(
          a.dfa, flyaut::testing::random_term_upto(rng, 7, 3, a.vars.size()));
  ledger.expect(independence == 0, "term independence (" + std::to_string(independence) + " violations)");
  ledger.expect(locality == 0, "label locality (" + std::to_string(locality) + " violations)");
  return ledger.outcome(std::to_string(graphs) + " graphs, " + std::to_string(automata.size()) + " automata");
}

// 6. Determinization against set propagation.
Outcome criterion6() {
  struct Named {
    std::string name;
    Nfa nfa;
  };
  const std::vector<Named> automata = {
      {"projected Col", handbuilt_col3_proj()},
      {"Col minus Y", project_last(handbuilt_col3(), 1)},
      {"edg minus Y", project_last(compile(parse_formula("(edg X Y)")).dfa, 1)},
      {"dominated pair minus both",
       project_last(compile(parse_formula(flyaut::testing::formula_battery()[10])).dfa, 2)},
  };
  Rng rng(6);
  Ledger ledger;
  for (const auto& [name, a] : automata) {
    const Dfa d = determinize(a);
    std::size_t bad = 0, accepted = 0;
    for (int k = 0; k < 500; ++k) {
      const Term t = flyaut::testing::random_term_upto(rng, 8, 3, a.vars());
      const bool expected = a.accepts(t);
      accepted += expected;
      bad += d.accepts(t) != expected;
    }
    ledger.expect(bad == 0, name + " (" + std::to_string(bad) + " mismatches, " + std::to_string(accepted) + " accepted)");
  }
  return ledger.outcome(std::to_string(automata.size()) + " automata on 500 random terms each");
}

// 7. Consistency of the solver views.
Outcome criterion7() {
  std::vector<Term> corpus;
  Rng rng(7);
  for (int k = 0; k < 100; ++k) corpus.push_back(flyaut::testing::random_term_upto(rng, 8, 3));
  for (const char* f : {"path", "cycle", "clique"})
    for (int n = std::string(f) == "cycle" ? 3 : 1; n <= 5; ++n) corpus.push_back(family(f, {n}));
  corpus.push_back(family("grid", {2, 3}));
  corpus.push_back(family("grid", {3, 3}));
  for (const PGraph& g : flyaut::testing::all_graphs_upto(3)) corpus.push_back(term_from_graph(g).term);
  Ledger ledger;
  std::size_t formulas = 0;
  for (const auto& text : flyaut::testing::formula_battery()) {
    const CompiledAutomaton base = compile(parse_formula(text));
    std::size_t bad = 0;
    for (const Term& t : corpus) bad += flyaut::testing::tower_violations(base, t);
    ledger.expect(bad == 0, text);
    ++formulas;
  }
  return ledger.outcome(std::to_string(formulas) + " formulas on " + std::to_string(corpus.size()) + " terms");
}

// 8. 3-colourability of the 6x6 and 8x8 grids with one transition per position.
Outcome criterion8() {
  const Dfa three = compile(parse_formula("(3colorable)")).dfa;
  Ledger ledger;
  std::ostringstream summary;
  for (const auto& [n, limit] : {std::pair{6, 300.0}, std::pair{8, 1800.0}}) {
    const Term t = family("grid", {n, n});
    RunStats stats;
    const auto start = Clock::now();
    const bool result = three.accepts(t, &stats);
    const double elapsed = seconds_since(start);
    const std::string name = std::to_string(n) + "x" + std::to_string(n);
    ledger.expect(result, name + " is 3-colourable");
    ledger.expect(elapsed < limit, name + " within " + std::to_string(limit) + " s");
    ledger.expect(stats.transitions == t.size(), name + " transitions equal positions");
    summary << name << ": " << t.size() << " positions, " << stats.transitions << " transitions, " << elapsed
            << " s; ";
  }
  return ledger.outcome(summary.str());
}

// 9. A term where assignments outnumber accepting runs of the projection.
Outcome criterion9() {
  const CompiledAutomaton same = compile(parse_formula("(sub X X)"));
  const Nfa projected = project_last(same.dfa, 1);
  Ledger ledger;
  std::string witness;
  for (int n = 1; n <= 6; ++n) {
    const Term t = family("path", {n});
    const BigNat count = count_assignments(same, t);
    const BigNat runs = count_runs(projected, t);
    if (witness.empty() && count > runs)
      witness = "path " + std::to_string(n) + ": " + render(count) + " assignments, " + render(runs) + " runs";
  }
  ledger.expect(!witness.empty(), "witness found");
  // Where each assignment has its own run the two numbers coincide.
  const BigNat colourings = count_assignments(compile(parse_formula("(col X Y)")), family("cycle", {5}));
  ledger.expect(count_runs(handbuilt_col3_proj(), family("cycle", {5})) == colourings, "col runs equal colourings");
  return ledger.outcome(witness.empty() ? "no witness" : witness);
}

// 10. Semiring laws.
Outcome criterion10() {
  using namespace flyaut::testing;
  Ledger ledger;
  ledger.expect(law_violations<BigNat>(counting_semiring(), sample_count, 1000) == 0, "counting");
  ledger.expect(law_violations<TupleSpectrum>(spectrum_semiring(2), sample_spectrum, 1000) == 0, "spectrum");
  ledger.expect(law_violations<TupleMultiset>(multiset_semiring(2), sample_multiset, 1000) == 0, "multiset");
  ledger.expect(law_violations<Tropical>(tropical_semiring(), sample_tropical, 1000) == 0, "tropical");
  ledger.expect(law_violations<bool>(boolean_semiring(), [](Rng& rng) { return (rng() & 1U) != 0; }, 1000) == 0,
                "boolean");
  return ledger.outcome("1000 random triples per semiring, 8 laws each");
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                          criterion5, criterion6, criterion7, criterion8,
                                                          criterion9, criterion10};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    const auto start = Clock::now();
    try {
      outcome = criteria[i]();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failures += !outcome.pass;
    std::cout << (outcome.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << outcome.detail << " [" << seconds_since(start)
              << " s]" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
