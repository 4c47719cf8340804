#ifndef FLYAUT_AUTOMATON_HPP
#define FLYAUT_AUTOMATON_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <utility>

#include "flyaut/state.hpp"
#include "flyaut/term.hpp"

namespace flyaut {

/// Transition functions of a deterministic fly-automaton over F^(m).
/// Nothing is tabulated: every transition is computed when a run needs it.
/// The signature is structural, so one automaton reads terms over any
/// number of port labels.
struct DfaRules {
  std::size_t vars = 0;
  std::function<StateValue(PortLabel, const Annotation&)> leaf;
  std::function<StateValue(const StateValue&, const StateValue&)> oplus;
  std::function<StateValue(PortLabel, PortLabel, const StateValue&)> add;
  std::function<StateValue(PortLabel, PortLabel, const StateValue&)> relab;
  std::function<bool(const StateValue&)> accepting;
};

/// Transition functions of a nondeterministic fly-automaton. Each function
/// returns a finite, sorted, duplicate-free set of states.
struct NfaRules {
  std::size_t vars = 0;
  std::function<StateSet(PortLabel, const Annotation&)> leaf;
  std::function<StateSet(const StateValue&, const StateValue&)> oplus;
  std::function<StateSet(PortLabel, PortLabel, const StateValue&)> add;
  std::function<StateSet(PortLabel, PortLabel, const StateValue&)> relab;
  std::function<bool(const StateValue&)> accepting;
};

/// Counters filled in by a run.
struct RunStats {
  /// Transition evaluations requested by the run (one per position).
  std::uint64_t transitions = 0;
};

class TransitionCache;

/// Deterministic and complete fly-automaton. Immutable; copies share the
/// rules and the transition cache.
class Dfa {
 public:
  /// With `memoize`, results of binary and unary transitions are cached,
  /// keyed by the interned argument states.
  explicit Dfa(DfaRules rules, bool memoize = false);

  std::size_t vars() const noexcept { return rules_->vars; }

  StateValue leaf(PortLabel a, const Annotation& w) const;
  StateValue oplus(const StateValue& left, const StateValue& right) const;
  StateValue add(PortLabel a, PortLabel b, const StateValue& q) const;
  StateValue relab(PortLabel a, PortLabel b, const StateValue& q) const;
  bool accepting(const StateValue& q) const { return rules_->accepting(q); }

  /// State reached at the root by the unique run.
  StateValue run(const Term& t, RunStats* stats = nullptr) const;
  bool accepts(const Term& t, RunStats* stats = nullptr) const;
  /// Calls `visit` bottom-up with the state of every position.
  void trace(const Term& t, const std::function<void(const Position&, const Term&, const StateValue&)>& visit) const;

 private:
  std::shared_ptr<const DfaRules> rules_;
  std::shared_ptr<TransitionCache> cache_;
};

/// Nondeterministic fly-automaton.
class Nfa {
 public:
  explicit Nfa(NfaRules rules);

  std::size_t vars() const noexcept { return rules_->vars; }
  const NfaRules& rules() const noexcept { return *rules_; }
  bool accepting(const StateValue& q) const { return rules_->accepting(q); }

  /// Every state reachable at the root by some run (bottom-up set
  /// propagation).
  StateSet run(const Term& t) const;
  /// True iff some run reaches an accepting state at the root.
  bool accepts(const Term& t) const;

 private:
  std::shared_ptr<const NfaRules> rules_;
};

/// Deterministic automaton with an output function into `Out`.
template <class Out>
struct OutputDfa {
  Dfa dfa;
  std::function<Out(const StateValue&)> output;

  Out run(const Term& t, RunStats* stats = nullptr) const { return output(dfa.run(t, stats)); }
};

/// Lazy subset construction: states are finite sets of states of `a`.
/// Transitions are memoized.
Dfa determinize(const Nfa& a);

/// States are pairs; accepting iff both components accept.
Dfa product(const Dfa& a, const Dfa& b);

/// Same transitions, negated acceptance.
Dfa complement(const Dfa& a);

/// The deterministic automaton seen as nondeterministic (singleton sets).
Nfa as_nfa(const Dfa& a);

/// Forgets the last `count` annotation bits: a leaf (c,w) gets every state
/// (c,wu) for u in {0,1}^count. Other transitions are unchanged.
Nfa project_last(const Dfa& a, std::size_t count = 1);

/// The same automaton read over F^(m), m > a.vars(); extra bits are ignored.
Dfa adjust_arity(const Dfa& a, std::size_t m);

/// One state, accepting every term (or none).
Dfa constant_dfa(std::size_t vars, bool accept);

/// Throws SignatureError unless t is a term over F^(vars).
void check_signature(const Term& t, std::size_t vars);

}  // namespace flyaut

#endif  // FLYAUT_AUTOMATON_HPP
