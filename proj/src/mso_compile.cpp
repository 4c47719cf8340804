#include <algorithm>
#include <set>

#include "flyaut/error.hpp"
#include "flyaut/mso.hpp"

namespace flyaut {

namespace {

void check_index(std::size_t i, std::size_t m) {
  if (i < 1 || i > m)
    throw InvalidArgument("variable index " + std::to_string(i) + " outside 1.." + std::to_string(m));
}

/// Automaton whose states only change at leaves and Oplus.
Dfa counting_dfa(std::size_t m, std::function<StateValue(const Annotation&)> leaf,
                 std::function<StateValue(const StateValue&, const StateValue&)> oplus,
                 std::function<bool(const StateValue&)> accepting) {
  DfaRules rules;
  rules.vars = m;
  rules.leaf = [leaf = std::move(leaf)](PortLabel, const Annotation& w) { return leaf(w); };
  rules.oplus = std::move(oplus);
  rules.add = [](PortLabel, PortLabel, const StateValue& q) { return q; };
  rules.relab = [](PortLabel, PortLabel, const StateValue& q) { return q; };
  rules.accepting = std::move(accepting);
  return Dfa(std::move(rules));
}

/// Partition with repetitions: a vertex must be counted exactly once over
/// all listed occurrences.
Dfa partition_dfa(const std::vector<std::size_t>& indices, std::size_t m) {
  for (auto i : indices) check_index(i, m);
  const StateValue ok = StateValue::atom("Ok"), error = StateValue::atom("Error");
  return counting_dfa(
      m,
      [=](const Annotation& w) {
        std::size_t hits = 0;
        for (auto i : indices) hits += w.test(i - 1);
        return hits == 1 ? ok : error;
      },
      [=](const StateValue& p, const StateValue& q) { return p == ok && q == ok ? ok : error; },
      [=](const StateValue& q) { return q == ok; });
}

}  // namespace

Dfa atomic_sub(std::size_t i, std::size_t j, std::size_t m) {
  check_index(i, m);
  check_index(j, m);
  const StateValue ok = StateValue::atom("Ok"), error = StateValue::atom("Error");
  return counting_dfa(
      m, [=](const Annotation& w) { return w.test(i - 1) && !w.test(j - 1) ? error : ok; },
      [=](const StateValue& p, const StateValue& q) { return p == ok && q == ok ? ok : error; },
      [=](const StateValue& q) { return q == ok; });
}

Dfa atomic_sgl(std::size_t i, std::size_t m) {
  check_index(i, m);
  const StateValue zero = StateValue::atom("Zero"), one = StateValue::atom("One"), many = StateValue::atom("Many");
  return counting_dfa(
      m, [=](const Annotation& w) { return w.test(i - 1) ? one : zero; },
      [=](const StateValue& p, const StateValue& q) {
        if (p == zero) return q;
        if (q == zero) return p;
        return many;
      },
      [=](const StateValue& q) { return q == one; });
}

Dfa atomic_cardp(std::uint64_t p, std::size_t i, std::size_t m) {
  check_index(i, m);
  if (p == std::numeric_limits<std::uint64_t>::max()) throw InvalidArgument("cardp bound too large");
  return counting_dfa(
      m, [=](const Annotation& w) { return StateValue::nat(w.test(i - 1) ? 1 : 0); },
      [=](const StateValue& x, const StateValue& y) {
        return StateValue::nat(std::min(x.as_nat() + y.as_nat(), p + 1));
      },
      [=](const StateValue& q) { return q.as_nat() == p; });
}

Dfa atomic_cardmod(std::uint64_t p, std::uint64_t q, std::size_t i, std::size_t m) {
  check_index(i, m);
  if (q < 2 || p >= q) throw InvalidArgument("cardmod needs q >= 2 and 0 <= p < q");
  return counting_dfa(
      m, [=](const Annotation& w) { return StateValue::nat(w.test(i - 1) ? 1 % q : 0); },
      [=](const StateValue& x, const StateValue& y) { return StateValue::nat((x.as_nat() + y.as_nat()) % q); },
      [=](const StateValue& s) { return s.as_nat() == p; });
}

Dfa atomic_partition(std::span<const std::size_t> indices, std::size_t m) {
  if (indices.empty()) throw InvalidArgument("partition needs at least one set");
  std::set<std::size_t> seen(indices.begin(), indices.end());
  if (seen.size() != indices.size()) throw InvalidArgument("partition indices must be distinct");
  return partition_dfa(std::vector<std::size_t>(indices.begin(), indices.end()), m);
}

Dfa atomic_edg(std::size_t i, std::size_t j, std::size_t m) {
  check_index(i, m);
  check_index(j, m);
  if (i == j) throw InvalidArgument("edg needs two distinct variables");
  const StateValue empty = StateValue::atom("Empty"), error = StateValue::atom("Error"), ok = StateValue::atom("Ok");
  const StateValue tag1 = StateValue::atom("_1"), tag2 = StateValue::atom("_2");
  // (a,_1): one X_i-vertex, an a-port. (a,_2): one X_j-vertex. (a,b): both,
  // not yet adjacent.
  auto is_first = [=](const StateValue& q) { return q.kind() == StateKind::Pair && q.second() == tag1; };
  auto is_second = [=](const StateValue& q) { return q.kind() == StateKind::Pair && q.second() == tag2; };

  DfaRules rules;
  rules.vars = m;
  rules.leaf = [=](PortLabel c, const Annotation& w) {
    const bool x = w.test(i - 1), y = w.test(j - 1);
    if (x && y) return error;
    if (x) return StateValue::pair(StateValue::label(c), tag1);
    if (y) return StateValue::pair(StateValue::label(c), tag2);
    return empty;
  };
  rules.oplus = [=](const StateValue& p, const StateValue& q) {
    if (p == error || q == error) return error;
    if (p == empty) return q;
    if (q == empty) return p;
    if (is_first(p) && is_second(q)) return StateValue::pair(p.first(), q.first());
    if (is_second(p) && is_first(q)) return StateValue::pair(q.first(), p.first());
    return error;
  };
  rules.add = [=](PortLabel c, PortLabel d, const StateValue& q) {
    if (q.kind() == StateKind::Pair && q.second().kind() == StateKind::Label) {
      const PortLabel a = q.first().as_label(), b = q.second().as_label();
      if ((a == c && b == d) || (a == d && b == c)) return ok;
    }
    return q;
  };
  rules.relab = [=](PortLabel c, PortLabel d, const StateValue& q) {
    if (q.kind() != StateKind::Pair) return q;
    auto rename = [&](const StateValue& x) {
      return x.kind() == StateKind::Label && x.as_label() == c ? StateValue::label(d) : x;
    };
    return StateValue::pair(rename(q.first()), rename(q.second()));
  };
  rules.accepting = [=](const StateValue& q) { return q == ok; };
  return Dfa(std::move(rules));
}

namespace {

class Compiler {
 public:
  static constexpr std::size_t kMaxBlock = 16;

  explicit Compiler(CompileOptions options) : options_(options) {}

  Dfa compile(const Formula& f, std::vector<std::string>& ctx) const {
    const std::size_t m = ctx.size();
    switch (f.kind()) {
      case FormulaKind::Sub:
        return atomic_sub(index(ctx, f.vars()[0]), index(ctx, f.vars()[1]), m);
      case FormulaKind::Sgl:
        return atomic_sgl(index(ctx, f.vars()[0]), m);
      case FormulaKind::Edg: {
        const auto i = index(ctx, f.vars()[0]), j = index(ctx, f.vars()[1]);
        // A loop-free graph has no edge from a vertex to itself.
        if (i == j) return constant_dfa(m, false);
        return atomic_edg(i, j, m);
      }
      case FormulaKind::CardP:
        return atomic_cardp(f.p(), index(ctx, f.vars()[0]), m);
      case FormulaKind::CardMod:
        return atomic_cardmod(f.p(), f.q(), index(ctx, f.vars()[0]), m);
      case FormulaKind::Partition: {
        std::vector<std::size_t> indices;
        for (const auto& x : f.vars()) indices.push_back(index(ctx, x));
        return partition_dfa(indices, m);
      }
      case FormulaKind::Col:
        if (options_.expand_col) return compile(expand_macros(f), ctx);
        return atomic_col(index(ctx, f.vars()[0]), index(ctx, f.vars()[1]), m);
      case FormulaKind::Not:
        return complement(compile(f.child(0), ctx));
      case FormulaKind::And:
        return product(compile(f.child(0), ctx), compile(f.child(1), ctx));
      case FormulaKind::Or:
        return complement(product(complement(compile(f.child(0), ctx)), complement(compile(f.child(1), ctx))));
      case FormulaKind::Implies:
        return complement(product(compile(f.child(0), ctx), complement(compile(f.child(1), ctx))));
      case FormulaKind::Exists:
        return exists(f, ctx, false);
      case FormulaKind::Forall:
        return complement(exists(f, ctx, true));
    }
    throw InvalidArgument("unknown formula kind");
  }

 private:
  static std::size_t index(const std::vector<std::string>& ctx, const std::string& x) {
    for (std::size_t k = ctx.size(); k-- > 0;)
      if (ctx[k] == x) return k + 1;
    throw InvalidArgument("unbound variable '" + x + "'");
  }

  /// A block of quantifiers of the same kind: the bound variables take the
  /// highest indices and are projected away together, so the block costs
  /// one determinization.
  Dfa exists(const Formula& f, std::vector<std::string>& ctx, bool negate_body) const {
    const std::size_t before = ctx.size();
    const Formula* body = &f;
    while (body->kind() == f.kind() && ctx.size() - before < kMaxBlock) {
      if (ctx.size() >= Annotation::kMaxWidth) throw InvalidArgument("more than 64 nested variables");
      ctx.push_back(body->vars()[0]);
      body = &body->child(0);
    }
    Dfa inner = compile(*body, ctx);
    const std::size_t count = ctx.size() - before;
    ctx.resize(before);
    if (negate_body) inner = complement(inner);
    return determinize(project_last(inner, count));
  }

  CompileOptions options_;
};

}  // namespace

CompiledAutomaton compile(const Formula& phi, CompileOptions options) {
  return compile(phi, free_variables(phi), options);
}

CompiledAutomaton compile(const Formula& phi, std::vector<std::string> context, CompileOptions options) {
  for (const auto& x : free_variables(phi))
    if (std::find(context.begin(), context.end(), x) == context.end())
      throw InvalidArgument("unbound variable '" + x + "'");
  if (context.size() > Annotation::kMaxWidth) throw InvalidArgument("more than 64 free variables");
  std::vector<std::string> ctx = context;
  Dfa dfa = Compiler(options).compile(phi, ctx);
  return CompiledAutomaton{std::move(dfa), std::move(context)};
}

}  // namespace flyaut
