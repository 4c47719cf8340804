#include "flyaut/automaton.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>

#include "flyaut/error.hpp"

namespace flyaut {

namespace {

struct TransitionKey {
  TermKind kind;
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  StateValue x;
  StateValue y;

  friend bool operator==(const TransitionKey&, const TransitionKey&) = default;
};

struct TransitionKeyHash {
  std::size_t operator()(const TransitionKey& k) const noexcept {
    std::size_t h = static_cast<std::size_t>(k.kind);
    h = h * 1000003 ^ k.a;
    h = h * 1000003 ^ k.b;
    h = h * 1000003 ^ k.x.hash();
    h = h * 1000003 ^ k.y.hash();
    return h;
  }
};

}  // namespace

class TransitionCache {
 public:
  static constexpr std::size_t kCapacity = std::size_t{1} << 20;

  template <class Compute>
  StateValue get(const TransitionKey& key, Compute&& compute) {
    {
      std::lock_guard lock(mutex_);
      if (auto it = table_.find(key); it != table_.end()) return it->second;
    }
    StateValue value = compute();
    std::lock_guard lock(mutex_);
    if (table_.size() >= kCapacity) table_.clear();
    table_.emplace(key, value);
    return value;
  }

 private:
  std::mutex mutex_;
  std::unordered_map<TransitionKey, StateValue, TransitionKeyHash> table_;
};

void check_signature(const Term& t, std::size_t vars) {
  if (t.vars() != vars)
    throw SignatureError("term annotated with " + std::to_string(t.vars()) + " bits, automaton expects " +
                         std::to_string(vars));
}

// ----------------------------------------------------------------------- Dfa

Dfa::Dfa(DfaRules rules, bool memoize)
    : rules_(std::make_shared<const DfaRules>(std::move(rules))),
      cache_(memoize ? std::make_shared<TransitionCache>() : nullptr) {}

StateValue Dfa::leaf(PortLabel a, const Annotation& w) const { return rules_->leaf(a, w); }

StateValue Dfa::oplus(const StateValue& left, const StateValue& right) const {
  if (!cache_) return rules_->oplus(left, right);
  return cache_->get(TransitionKey{TermKind::Oplus, 0, 0, left, right},
                     [&] { return rules_->oplus(left, right); });
}

StateValue Dfa::add(PortLabel a, PortLabel b, const StateValue& q) const {
  if (!cache_) return rules_->add(a, b, q);
  return cache_->get(TransitionKey{TermKind::Add, a.value(), b.value(), q, q}, [&] { return rules_->add(a, b, q); });
}

StateValue Dfa::relab(PortLabel a, PortLabel b, const StateValue& q) const {
  if (!cache_) return rules_->relab(a, b, q);
  return cache_->get(TransitionKey{TermKind::Relab, a.value(), b.value(), q, q},
                     [&] { return rules_->relab(a, b, q); });
}

namespace {

template <class Visit>
StateValue run_dfa(const Dfa& a, const Term& t, std::vector<std::uint32_t>& path, RunStats* stats,
                   const Visit& visit) {
  StateValue q;
  switch (t.kind()) {
    case TermKind::Leaf:
      q = a.leaf(t.label(), Annotation());
      break;
    case TermKind::AnnotatedLeaf:
      q = a.leaf(t.label(), t.annotation());
      break;
    case TermKind::Oplus: {
      path.push_back(0);
      const StateValue left = run_dfa(a, t.child(0), path, stats, visit);
      path.back() = 1;
      const StateValue right = run_dfa(a, t.child(1), path, stats, visit);
      path.pop_back();
      q = a.oplus(left, right);
      break;
    }
    case TermKind::Add:
    case TermKind::Relab: {
      path.push_back(0);
      const StateValue child = run_dfa(a, t.child(0), path, stats, visit);
      path.pop_back();
      q = t.kind() == TermKind::Add ? a.add(t.label(), t.second_label(), child)
                                    : a.relab(t.label(), t.second_label(), child);
      break;
    }
  }
  if (stats) ++stats->transitions;
  visit(path, t, q);
  return q;
}

}  // namespace

StateValue Dfa::run(const Term& t, RunStats* stats) const {
  check_signature(t, vars());
  std::vector<std::uint32_t> path;
  return run_dfa(*this, t, path, stats, [](const auto&, const auto&, const auto&) {});
}

bool Dfa::accepts(const Term& t, RunStats* stats) const { return accepting(run(t, stats)); }

void Dfa::trace(const Term& t,
                const std::function<void(const Position&, const Term&, const StateValue&)>& visit) const {
  check_signature(t, vars());
  std::vector<std::uint32_t> path;
  run_dfa(*this, t, path, nullptr, [&](const std::vector<std::uint32_t>& at, const Term& u, const StateValue& q) {
    visit(Position(at), u, q);
  });
}

// ----------------------------------------------------------------------- Nfa

Nfa::Nfa(NfaRules rules) : rules_(std::make_shared<const NfaRules>(std::move(rules))) {}

namespace {

StateSet run_nfa(const NfaRules& rules, const Term& t) {
  StateSet out;
  switch (t.kind()) {
    case TermKind::Leaf:
      return rules.leaf(t.label(), Annotation());
    case TermKind::AnnotatedLeaf:
      return rules.leaf(t.label(), t.annotation());
    case TermKind::Oplus: {
      const StateSet left = run_nfa(rules, t.child(0));
      if (left.empty()) return {};
      const StateSet right = run_nfa(rules, t.child(1));
      for (const auto& p : left)
        for (const auto& q : right) {
          auto next = rules.oplus(p, q);
          out.insert(out.end(), next.begin(), next.end());
        }
      break;
    }
    case TermKind::Add:
    case TermKind::Relab: {
      const bool is_add = t.kind() == TermKind::Add;
      for (const auto& p : run_nfa(rules, t.child(0))) {
        auto next = is_add ? rules.add(t.label(), t.second_label(), p) : rules.relab(t.label(), t.second_label(), p);
        out.insert(out.end(), next.begin(), next.end());
      }
      break;
    }
  }
  normalize(out);
  return out;
}

}  // namespace

StateSet Nfa::run(const Term& t) const {
  check_signature(t, vars());
  return run_nfa(*rules_, t);
}

bool Nfa::accepts(const Term& t) const {
  const auto states = run(t);
  return std::any_of(states.begin(), states.end(), [&](const StateValue& q) { return accepting(q); });
}

// ---------------------------------------------------------------- operations

Dfa determinize(const Nfa& a) {
  DfaRules rules;
  rules.vars = a.vars();
  rules.leaf = [a](PortLabel c, const Annotation& w) { return StateValue::set(a.rules().leaf(c, w)); };
  rules.oplus = [a](const StateValue& s1, const StateValue& s2) {
    StateSet out;
    for (const auto& p : s1.elements())
      for (const auto& q : s2.elements()) {
        auto next = a.rules().oplus(p, q);
        out.insert(out.end(), next.begin(), next.end());
      }
    return StateValue::set(std::move(out));
  };
  auto unary = [](const Nfa& nfa, bool is_add) {
    return [nfa, is_add](PortLabel c, PortLabel d, const StateValue& s) {
      StateSet out;
      for (const auto& p : s.elements()) {
        auto next = is_add ? nfa.rules().add(c, d, p) : nfa.rules().relab(c, d, p);
        out.insert(out.end(), next.begin(), next.end());
      }
      return StateValue::set(std::move(out));
    };
  };
  rules.add = unary(a, true);
  rules.relab = unary(a, false);
  rules.accepting = [a](const StateValue& s) {
    const auto elems = s.elements();
    return std::any_of(elems.begin(), elems.end(), [&](const StateValue& q) { return a.accepting(q); });
  };
  return Dfa(std::move(rules), true);
}

Dfa product(const Dfa& a, const Dfa& b) {
  if (a.vars() != b.vars())
    throw SignatureError("product of automata over F^(" + std::to_string(a.vars()) + ") and F^(" +
                         std::to_string(b.vars()) + ")");
  DfaRules rules;
  rules.vars = a.vars();
  rules.leaf = [a, b](PortLabel c, const Annotation& w) { return StateValue::pair(a.leaf(c, w), b.leaf(c, w)); };
  rules.oplus = [a, b](const StateValue& p, const StateValue& q) {
    return StateValue::pair(a.oplus(p.first(), q.first()), b.oplus(p.second(), q.second()));
  };
  rules.add = [a, b](PortLabel c, PortLabel d, const StateValue& q) {
    return StateValue::pair(a.add(c, d, q.first()), b.add(c, d, q.second()));
  };
  rules.relab = [a, b](PortLabel c, PortLabel d, const StateValue& q) {
    return StateValue::pair(a.relab(c, d, q.first()), b.relab(c, d, q.second()));
  };
  rules.accepting = [a, b](const StateValue& q) { return a.accepting(q.first()) && b.accepting(q.second()); };
  return Dfa(std::move(rules));
}

Dfa complement(const Dfa& a) {
  DfaRules rules;
  rules.vars = a.vars();
  rules.leaf = [a](PortLabel c, const Annotation& w) { return a.leaf(c, w); };
  rules.oplus = [a](const StateValue& p, const StateValue& q) { return a.oplus(p, q); };
  rules.add = [a](PortLabel c, PortLabel d, const StateValue& q) { return a.add(c, d, q); };
  rules.relab = [a](PortLabel c, PortLabel d, const StateValue& q) { return a.relab(c, d, q); };
  rules.accepting = [a](const StateValue& q) { return !a.accepting(q); };
  return Dfa(std::move(rules));
}

Nfa as_nfa(const Dfa& a) {
  NfaRules rules;
  rules.vars = a.vars();
  rules.leaf = [a](PortLabel c, const Annotation& w) { return StateSet{a.leaf(c, w)}; };
  rules.oplus = [a](const StateValue& p, const StateValue& q) { return StateSet{a.oplus(p, q)}; };
  rules.add = [a](PortLabel c, PortLabel d, const StateValue& q) { return StateSet{a.add(c, d, q)}; };
  rules.relab = [a](PortLabel c, PortLabel d, const StateValue& q) { return StateSet{a.relab(c, d, q)}; };
  rules.accepting = [a](const StateValue& q) { return a.accepting(q); };
  return Nfa(std::move(rules));
}

Nfa project_last(const Dfa& a, std::size_t count) {
  if (count == 0 || count > a.vars())
    throw InvalidArgument("cannot project " + std::to_string(count) + " variable(s) of an automaton over F^(" +
                          std::to_string(a.vars()) + ")");
  if (count >= 32) throw InvalidArgument("projection of more than 31 variables at once");
  NfaRules rules;
  rules.vars = a.vars() - count;
  rules.leaf = [a, count](PortLabel c, const Annotation& w) {
    StateSet out;
    for (std::uint64_t extra = 0; extra < (std::uint64_t{1} << count); ++extra) {
      Annotation full = w;
      for (std::size_t i = 0; i < count; ++i) full = full.with_appended((extra >> i) & 1U);
      out.push_back(a.leaf(c, full));
    }
    normalize(out);
    return out;
  };
  rules.oplus = [a](const StateValue& p, const StateValue& q) { return StateSet{a.oplus(p, q)}; };
  rules.add = [a](PortLabel c, PortLabel d, const StateValue& q) { return StateSet{a.add(c, d, q)}; };
  rules.relab = [a](PortLabel c, PortLabel d, const StateValue& q) { return StateSet{a.relab(c, d, q)}; };
  rules.accepting = [a](const StateValue& q) { return a.accepting(q); };
  return Nfa(std::move(rules));
}

Dfa adjust_arity(const Dfa& a, std::size_t m) {
  if (m <= a.vars())
    throw InvalidArgument("arity adjustment from " + std::to_string(a.vars()) + " to " + std::to_string(m) +
                          " variables must increase the arity");
  if (m > Annotation::kMaxWidth) throw InvalidArgument("annotations are limited to 64 variables");
  const std::size_t n = a.vars();
  DfaRules rules;
  rules.vars = m;
  rules.leaf = [a, n](PortLabel c, const Annotation& w) { return a.leaf(c, w.prefix(n)); };
  rules.oplus = [a](const StateValue& p, const StateValue& q) { return a.oplus(p, q); };
  rules.add = [a](PortLabel c, PortLabel d, const StateValue& q) { return a.add(c, d, q); };
  rules.relab = [a](PortLabel c, PortLabel d, const StateValue& q) { return a.relab(c, d, q); };
  rules.accepting = [a](const StateValue& q) { return a.accepting(q); };
  return Dfa(std::move(rules));
}

Dfa constant_dfa(std::size_t vars, bool accept) {
  const StateValue only = StateValue::atom(accept ? "All" : "None");
  DfaRules rules;
  rules.vars = vars;
  rules.leaf = [only](PortLabel, const Annotation&) { return only; };
  rules.oplus = [only](const StateValue&, const StateValue&) { return only; };
  rules.add = [only](PortLabel, PortLabel, const StateValue&) { return only; };
  rules.relab = [only](PortLabel, PortLabel, const StateValue&) { return only; };
  rules.accepting = [accept](const StateValue&) { return accept; };
  return Dfa(std::move(rules));
}

}  // namespace flyaut
