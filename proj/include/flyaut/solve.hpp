#ifndef FLYAUT_SOLVE_HPP
#define FLYAUT_SOLVE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "flyaut/automaton.hpp"
#include "flyaut/error.hpp"
#include "flyaut/mso.hpp"
#include "flyaut/values.hpp"

namespace flyaut {

/// A commutative semiring with a weight for each leaf annotation.
template <class T>
struct Semiring {
  T zero;
  T one;
  std::function<T(const T&, const T&)> add;
  std::function<T(const T&, const T&)> mul;
  std::function<T(const Annotation&)> leaf_weight;
};

Semiring<BigNat> counting_semiring();
Semiring<bool> boolean_semiring();
/// Sets of s-tuples: union, pointwise sums; a leaf w weighs {w}.
Semiring<TupleSpectrum> spectrum_semiring(std::size_t s);
/// Multisets of s-tuples with convolution; a leaf w weighs {w:1}.
Semiring<TupleMultiset> multiset_semiring(std::size_t s);
/// (min, +) over naturals and infinity; a leaf w weighs w_1 (0 when s = 0).
Semiring<Tropical> tropical_semiring();

/// Base states weighted by semiring values; zero weights are never stored.
template <class T>
using WeightedState = std::unordered_map<StateValue, T, StateHash>;

namespace detail {

template <class T>
void accumulate(WeightedState<T>& into, const StateValue& q, const T& value, const Semiring<T>& sr) {
  if (value == sr.zero) return;
  auto [it, inserted] = into.emplace(q, value);
  if (!inserted) {
    it->second = sr.add(it->second, value);
    if (it->second == sr.zero) into.erase(it);
  }
}

template <class T>
WeightedState<T> weighted_states(const Dfa& dfa, const Semiring<T>& sr, const Term& t,
                                 const std::vector<Annotation>& annotations, const std::vector<T>& weights) {
  WeightedState<T> out;
  switch (t.kind()) {
    case TermKind::Leaf:
    case TermKind::AnnotatedLeaf:
      for (std::size_t k = 0; k < annotations.size(); ++k)
        accumulate(out, dfa.leaf(t.label(), annotations[k]), weights[k], sr);
      break;
    case TermKind::Oplus: {
      const auto left = weighted_states(dfa, sr, t.child(0), annotations, weights);
      if (left.empty()) break;
      const auto right = weighted_states(dfa, sr, t.child(1), annotations, weights);
      for (const auto& [p, x] : left)
        for (const auto& [q, y] : right) accumulate(out, dfa.oplus(p, q), sr.mul(x, y), sr);
      break;
    }
    case TermKind::Add:
    case TermKind::Relab: {
      const bool is_add = t.kind() == TermKind::Add;
      for (const auto& [p, x] : weighted_states(dfa, sr, t.child(0), annotations, weights))
        accumulate(out, is_add ? dfa.add(t.label(), t.second_label(), p) : dfa.relab(t.label(), t.second_label(), p),
                   x, sr);
      break;
    }
  }
  return out;
}

}  // namespace detail

/// Semiring sum, over all assignments nu of the base variables such that
/// base accepts (t, nu), of the product of the leaf weights. t must be a
/// term over F.
template <class T>
T weighted_run(const CompiledAutomaton& base, const Semiring<T>& sr, const Term& t) {
  check_signature(t, 0);
  const std::size_t s = base.dfa.vars();
  if (s >= 20) throw InvalidArgument("weighted runs support at most 19 free variables");
  std::vector<Annotation> annotations;
  std::vector<T> weights;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << s); ++bits) {
    annotations.emplace_back(s, bits);
    weights.push_back(sr.leaf_weight(annotations.back()));
  }
  T total = sr.zero;
  for (const auto& [q, x] : detail::weighted_states(base.dfa, sr, t, annotations, weights))
    if (base.dfa.accepting(q)) total = sr.add(total, x);
  return total;
}

/// Number of satisfying assignments, exact.
BigNat count_assignments(const CompiledAutomaton& base, const Term& t);
/// {(|X1|, ..., |Xs|)} over satisfying assignments.
TupleSpectrum spectrum(const CompiledAutomaton& base, const Term& t);
/// The same tuples with multiplicities.
TupleMultiset multispectrum(const CompiledAutomaton& base, const Term& t);
/// Least |X1| over satisfying assignments; infinity if none.
Tropical min_card(const CompiledAutomaton& base, const Term& t);
/// Whether some assignment satisfies the base formula.
bool check_sat(const CompiledAutomaton& base, const Term& t);

/// Number of accepting runs of a nondeterministic automaton on t, by the
/// subset construction whose states map each reachable state to its run
/// count. Two leaf transitions reaching the same state count once.
BigNat count_runs(const Nfa& a, const Term& t);

/// Whether val(t) is regular (all degrees equal). The automaton keeps, per
/// port label, the vertex count and the number of vertices of each degree,
/// which is only sound on irredundant terms: any other term is rejected with
/// InvalidArgument naming the first redundant Add.
bool regular_check(const Term& t);
/// The automaton used by regular_check.
Dfa regularity_automaton();

}  // namespace flyaut

#endif  // FLYAUT_SOLVE_HPP
