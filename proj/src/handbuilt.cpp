#include <algorithm>
#include <map>

#include "flyaut/error.hpp"
#include "flyaut/mso.hpp"

namespace flyaut {

namespace {

StateValue coloured(PortLabel a, std::uint64_t colour) {
  return StateValue::set({StateValue::pair(StateValue::label(a), StateValue::nat(colour))});
}

/// Colour of a leaf: 1 for X_i, 2 for X_j, 3 otherwise, 0 when the leaf is
/// in both sets.
std::uint64_t leaf_colour(const Annotation& w, std::size_t i = 1, std::size_t j = 2) {
  const bool x = w.test(i - 1), y = w.test(j - 1);
  if (x && y) return 0;
  return x ? 1 : y ? 2 : 3;
}

StateValue merge(const StateValue& alpha, const StateValue& beta) {
  std::vector<StateValue> items(alpha.elements().begin(), alpha.elements().end());
  items.insert(items.end(), beta.elements().begin(), beta.elements().end());
  return StateValue::set(std::move(items));
}

/// True when an a-port and a b-port share a colour.
bool conflict(PortLabel a, PortLabel b, const StateValue& alpha) {
  for (std::uint64_t i = 1; i <= 3; ++i) {
    const StateValue colour = StateValue::nat(i);
    if (alpha.contains(StateValue::pair(StateValue::label(a), colour)) &&
        alpha.contains(StateValue::pair(StateValue::label(b), colour)))
      return true;
  }
  return false;
}

StateValue rename(PortLabel a, PortLabel b, const StateValue& alpha) {
  std::vector<StateValue> items;
  for (const auto& p : alpha.elements())
    items.push_back(p.first().as_label() == a ? StateValue::pair(StateValue::label(b), p.second()) : p);
  return StateValue::set(std::move(items));
}

}  // namespace

Dfa atomic_col(std::size_t i, std::size_t j, std::size_t m) {
  if (i < 1 || i > m || j < 1 || j > m)
    throw InvalidArgument("variable index outside 1.." + std::to_string(m));
  const StateValue error = StateValue::atom("Error");
  DfaRules rules;
  rules.vars = m;
  rules.leaf = [=](PortLabel a, const Annotation& w) {
    const auto colour = leaf_colour(w, i, j);
    return colour == 0 ? error : coloured(a, colour);
  };
  rules.oplus = [=](const StateValue& alpha, const StateValue& beta) {
    if (alpha == error || beta == error) return error;
    return merge(alpha, beta);
  };
  rules.add = [=](PortLabel a, PortLabel b, const StateValue& alpha) {
    if (alpha == error || conflict(a, b, alpha)) return error;
    return alpha;
  };
  rules.relab = [=](PortLabel a, PortLabel b, const StateValue& alpha) {
    return alpha == error ? error : rename(a, b, alpha);
  };
  rules.accepting = [=](const StateValue& q) { return q != error; };
  return Dfa(std::move(rules));
}

Dfa handbuilt_col3() { return atomic_col(1, 2, 2); }

Nfa handbuilt_col3_proj() {
  NfaRules rules;
  rules.vars = 0;
  rules.leaf = [](PortLabel a, const Annotation&) {
    StateSet out{coloured(a, 3), coloured(a, 1), coloured(a, 2)};
    normalize(out);
    return out;
  };
  rules.oplus = [](const StateValue& alpha, const StateValue& beta) { return StateSet{merge(alpha, beta)}; };
  rules.add = [](PortLabel a, PortLabel b, const StateValue& alpha) {
    return conflict(a, b, alpha) ? StateSet{} : StateSet{alpha};
  };
  rules.relab = [](PortLabel a, PortLabel b, const StateValue& alpha) { return StateSet{rename(a, b, alpha)}; };
  rules.accepting = [](const StateValue&) { return true; };
  return Nfa(std::move(rules));
}

Dfa handbuilt_col3_card() {
  const StateValue error = StateValue::atom("Error");
  DfaRules rules;
  rules.vars = 2;
  rules.leaf = [=](PortLabel a, const Annotation& w) {
    const auto colour = leaf_colour(w);
    if (colour == 0) return error;
    return StateValue::pair(coloured(a, colour), StateValue::nat(colour == 1 ? 1 : 0));
  };
  rules.oplus = [=](const StateValue& p, const StateValue& q) {
    if (p == error || q == error) return error;
    return StateValue::pair(merge(p.first(), q.first()), StateValue::nat(p.second().as_nat() + q.second().as_nat()));
  };
  rules.add = [=](PortLabel a, PortLabel b, const StateValue& q) {
    if (q == error || conflict(a, b, q.first())) return error;
    return q;
  };
  rules.relab = [=](PortLabel a, PortLabel b, const StateValue& q) {
    return q == error ? error : StateValue::pair(rename(a, b, q.first()), q.second());
  };
  rules.accepting = [=](const StateValue& q) { return q != error; };
  return Dfa(std::move(rules));
}

namespace {

/// Keeps the least m for each type.
StateValue least_map(const std::vector<std::pair<StateValue, std::uint64_t>>& entries) {
  std::map<StateValue, std::uint64_t> best;
  for (const auto& [alpha, m] : entries) {
    auto [it, inserted] = best.emplace(alpha, m);
    if (!inserted) it->second = std::min(it->second, m);
  }
  std::vector<std::pair<StateValue, StateValue>> out;
  for (const auto& [alpha, m] : best) out.emplace_back(alpha, StateValue::nat(m));
  return StateValue::map(std::move(out));
}

}  // namespace

OutputDfa<Tropical> handbuilt_col3_min() {
  DfaRules rules;
  rules.vars = 0;
  rules.leaf = [](PortLabel a, const Annotation&) {
    return least_map({{coloured(a, 3), 0}, {coloured(a, 1), 1}, {coloured(a, 2), 0}});
  };
  rules.oplus = [](const StateValue& sigma, const StateValue& tau) {
    std::vector<std::pair<StateValue, std::uint64_t>> entries;
    for (std::size_t i = 0; i < sigma.count(); ++i)
      for (std::size_t j = 0; j < tau.count(); ++j)
        entries.emplace_back(merge(sigma.key(i), tau.key(j)), sigma.value(i).as_nat() + tau.value(j).as_nat());
    return least_map(entries);
  };
  rules.add = [](PortLabel a, PortLabel b, const StateValue& sigma) {
    std::vector<std::pair<StateValue, std::uint64_t>> entries;
    for (std::size_t i = 0; i < sigma.count(); ++i)
      if (!conflict(a, b, sigma.key(i))) entries.emplace_back(sigma.key(i), sigma.value(i).as_nat());
    return least_map(entries);
  };
  rules.relab = [](PortLabel a, PortLabel b, const StateValue& sigma) {
    std::vector<std::pair<StateValue, std::uint64_t>> entries;
    for (std::size_t i = 0; i < sigma.count(); ++i)
      entries.emplace_back(rename(a, b, sigma.key(i)), sigma.value(i).as_nat());
    return least_map(entries);
  };
  rules.accepting = [](const StateValue& sigma) { return sigma.count() > 0; };
  auto output = [](const StateValue& sigma) {
    Tropical best;
    for (std::size_t i = 0; i < sigma.count(); ++i) best = min(best, Tropical(sigma.value(i).as_nat()));
    return best;
  };
  return OutputDfa<Tropical>{Dfa(std::move(rules), true), output};
}

}  // namespace flyaut
