#include "flyaut/solve.hpp"

#include <map>
#include <set>

namespace flyaut {

// ------------------------------------------------------------------ semirings

Semiring<BigNat> counting_semiring() {
  return {BigNat(0), BigNat(1), [](const BigNat& x, const BigNat& y) { return BigNat(x + y); },
          [](const BigNat& x, const BigNat& y) { return BigNat(x * y); }, [](const Annotation&) { return BigNat(1); }};
}

Semiring<bool> boolean_semiring() {
  return {false, true, [](bool x, bool y) { return x || y; }, [](bool x, bool y) { return x && y; },
          [](const Annotation&) { return true; }};
}

namespace {

CardTuple tuple_of(const Annotation& w) {
  CardTuple out(w.width());
  for (std::size_t i = 0; i < w.width(); ++i) out[i] = w.test(i);
  return out;
}

CardTuple plus(const CardTuple& x, const CardTuple& y) {
  CardTuple out(x);
  for (std::size_t i = 0; i < out.size() && i < y.size(); ++i) out[i] += y[i];
  return out;
}

}  // namespace

Semiring<TupleSpectrum> spectrum_semiring(std::size_t s) {
  return {TupleSpectrum{}, TupleSpectrum{CardTuple(s, 0)},
          [](const TupleSpectrum& x, const TupleSpectrum& y) {
            TupleSpectrum out = x;
            out.insert(y.begin(), y.end());
            return out;
          },
          [](const TupleSpectrum& x, const TupleSpectrum& y) {
            TupleSpectrum out;
            for (const auto& a : x)
              for (const auto& b : y) out.insert(plus(a, b));
            return out;
          },
          [](const Annotation& w) { return TupleSpectrum{tuple_of(w)}; }};
}

Semiring<TupleMultiset> multiset_semiring(std::size_t s) {
  return {TupleMultiset{}, TupleMultiset{{CardTuple(s, 0), BigNat(1)}},
          [](const TupleMultiset& x, const TupleMultiset& y) {
            TupleMultiset out = x;
            for (const auto& [t, m] : y) out[t] += m;
            return out;
          },
          [](const TupleMultiset& x, const TupleMultiset& y) {
            TupleMultiset out;
            for (const auto& [a, m] : x)
              for (const auto& [b, n] : y) out[plus(a, b)] += m * n;
            return out;
          },
          [](const Annotation& w) { return TupleMultiset{{tuple_of(w), BigNat(1)}}; }};
}

Semiring<Tropical> tropical_semiring() {
  return {Tropical::infinity(), Tropical(0), [](Tropical x, Tropical y) { return min(x, y); },
          [](Tropical x, Tropical y) { return x + y; },
          [](const Annotation& w) { return Tropical(w.width() > 0 && w.test(0) ? 1 : 0); }};
}

// ---------------------------------------------------------------- aggregates

BigNat count_assignments(const CompiledAutomaton& base, const Term& t) {
  return weighted_run(base, counting_semiring(), t);
}

TupleSpectrum spectrum(const CompiledAutomaton& base, const Term& t) {
  return weighted_run(base, spectrum_semiring(base.dfa.vars()), t);
}

TupleMultiset multispectrum(const CompiledAutomaton& base, const Term& t) {
  return weighted_run(base, multiset_semiring(base.dfa.vars()), t);
}

Tropical min_card(const CompiledAutomaton& base, const Term& t) { return weighted_run(base, tropical_semiring(), t); }

bool check_sat(const CompiledAutomaton& base, const Term& t) { return weighted_run(base, boolean_semiring(), t); }

// ---------------------------------------------------------------- run counts

namespace {

using RunCounts = std::map<StateValue, BigNat>;

RunCounts run_counts(const NfaRules& rules, const Term& t) {
  RunCounts out;
  switch (t.kind()) {
    case TermKind::Leaf:
    case TermKind::AnnotatedLeaf:
      for (const auto& q : rules.leaf(t.label(), t.kind() == TermKind::Leaf ? Annotation() : t.annotation()))
        out[q] += 1;
      break;
    case TermKind::Oplus: {
      const auto left = run_counts(rules, t.child(0));
      const auto right = run_counts(rules, t.child(1));
      for (const auto& [p, np] : left)
        for (const auto& [q, nq] : right)
          for (const auto& r : rules.oplus(p, q)) out[r] += np * nq;
      break;
    }
    case TermKind::Add:
    case TermKind::Relab: {
      const bool is_add = t.kind() == TermKind::Add;
      for (const auto& [p, np] : run_counts(rules, t.child(0)))
        for (const auto& r :
             is_add ? rules.add(t.label(), t.second_label(), p) : rules.relab(t.label(), t.second_label(), p))
          out[r] += np;
      break;
    }
  }
  return out;
}

}  // namespace

BigNat count_runs(const Nfa& a, const Term& t) {
  check_signature(t, a.vars());
  BigNat total = 0;
  for (const auto& [q, n] : run_counts(a.rules(), t))
    if (a.accepting(q)) total += n;
  return total;
}

// ---------------------------------------------------------------- regularity

namespace {

/// Per label: vertex count and degree -> number of vertices.
struct LabelDegrees {
  std::uint64_t vertices = 0;
  std::map<std::uint64_t, std::uint64_t> degrees;
};
using DegreeTable = std::map<PortLabel, LabelDegrees>;

StateValue encode(const DegreeTable& table) {
  std::vector<std::pair<StateValue, StateValue>> entries;
  for (const auto& [a, info] : table) {
    std::vector<std::pair<StateValue, StateValue>> degrees;
    for (const auto& [d, n] : info.degrees) degrees.emplace_back(StateValue::nat(d), StateValue::nat(n));
    entries.emplace_back(StateValue::label(a),
                         StateValue::pair(StateValue::nat(info.vertices), StateValue::map(std::move(degrees))));
  }
  return StateValue::map(std::move(entries));
}

DegreeTable decode(const StateValue& q) {
  DegreeTable table;
  for (std::size_t i = 0; i < q.count(); ++i) {
    LabelDegrees info;
    info.vertices = q.value(i).first().as_nat();
    const StateValue& degrees = q.value(i).second();
    for (std::size_t k = 0; k < degrees.count(); ++k)
      info.degrees[degrees.key(k).as_nat()] = degrees.value(k).as_nat();
    table[q.key(i).as_label()] = std::move(info);
  }
  return table;
}

void absorb(LabelDegrees& into, const LabelDegrees& from) {
  into.vertices += from.vertices;
  for (const auto& [d, n] : from.degrees) into.degrees[d] += n;
}

void raise(LabelDegrees& info, std::uint64_t by) {
  std::map<std::uint64_t, std::uint64_t> shifted;
  for (const auto& [d, n] : info.degrees) shifted[d + by] = n;
  info.degrees = std::move(shifted);
}

}  // namespace

Dfa regularity_automaton() {
  DfaRules rules;
  rules.vars = 0;
  rules.leaf = [](PortLabel a, const Annotation&) {
    DegreeTable table;
    table[a] = LabelDegrees{1, {{0, 1}}};
    return encode(table);
  };
  rules.oplus = [](const StateValue& p, const StateValue& q) {
    DegreeTable table = decode(p);
    for (const auto& [a, info] : decode(q)) absorb(table[a], info);
    return encode(table);
  };
  rules.add = [](PortLabel a, PortLabel b, const StateValue& q) {
    DegreeTable table = decode(q);
    auto ia = table.find(a), ib = table.find(b);
    if (ia == table.end() || ib == table.end()) return q;
    const auto na = ia->second.vertices, nb = ib->second.vertices;
    raise(ia->second, nb);
    raise(ib->second, na);
    return encode(table);
  };
  rules.relab = [](PortLabel a, PortLabel b, const StateValue& q) {
    DegreeTable table = decode(q);
    auto ia = table.find(a);
    if (ia == table.end()) return q;
    const LabelDegrees moved = ia->second;
    table.erase(ia);
    absorb(table[b], moved);
    return encode(table);
  };
  rules.accepting = [](const StateValue& q) {
    std::set<std::uint64_t> degrees;
    for (const auto& [a, info] : decode(q))
      for (const auto& [d, n] : info.degrees) degrees.insert(d);
    return degrees.size() <= 1;
  };
  return Dfa(std::move(rules), true);
}

bool regular_check(const Term& t) {
  const auto report = check_irredundant(t);
  if (!report.irredundant)
    throw InvalidArgument("regular_check needs an irredundant term; redundant add at position " +
                          report.offending->str());
  return regularity_automaton().accepts(strip(t));
}

}  // namespace flyaut
