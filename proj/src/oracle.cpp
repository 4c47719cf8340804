#include "flyaut/oracle.hpp"

#include <algorithm>
#include <bit>
#include <functional>

#include "flyaut/error.hpp"

namespace flyaut {

namespace {

using Mask = std::uint64_t;

struct Structure {
  std::vector<VertexId> ids;
  std::map<VertexId, std::size_t> index;
  std::vector<Mask> adj;
  Mask all = 0;
};

Structure index_graph(const PGraph& g) {
  if (g.vertex_count() > 64) throw GuardExceeded("oracle limited to graphs with at most 64 vertices");
  Structure s;
  s.ids = g.vertices();
  for (std::size_t i = 0; i < s.ids.size(); ++i) s.index.emplace(s.ids[i], i);
  s.adj.assign(s.ids.size(), 0);
  for (const auto& [u, v] : g.edges()) {
    const auto i = s.index.at(u), j = s.index.at(v);
    s.adj[i] |= Mask{1} << j;
    s.adj[j] |= Mask{1} << i;
  }
  s.all = s.ids.size() == 64 ? ~Mask{0} : (Mask{1} << s.ids.size()) - 1;
  return s;
}

/// Throws unless 2^exponent <= guard.
void check_budget(std::size_t exponent, std::uint64_t guard, const char* what) {
  if (exponent >= 64 || (std::uint64_t{1} << exponent) > guard)
    throw GuardExceeded(std::string(what) + " needs 2^" + std::to_string(exponent) +
                        " assignments, above the enumeration guard of " + std::to_string(guard));
}

class Evaluator {
 public:
  explicit Evaluator(const Structure& s) : s_(s) {}

  bool eval(const Formula& f, std::vector<std::pair<std::string, Mask>>& env) const {
    auto set = [&](const std::string& x) -> Mask {
      for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (it->first == x) return it->second;
      throw InvalidArgument("unbound variable '" + x + "'");
    };
    switch (f.kind()) {
      case FormulaKind::Sub:
        return (set(f.vars()[0]) & ~set(f.vars()[1])) == 0;
      case FormulaKind::Sgl:
        return std::popcount(set(f.vars()[0])) == 1;
      case FormulaKind::Edg: {
        const Mask x = set(f.vars()[0]), y = set(f.vars()[1]);
        if (std::popcount(x) != 1 || std::popcount(y) != 1) return false;
        return (s_.adj[static_cast<std::size_t>(std::countr_zero(x))] & y) != 0;
      }
      case FormulaKind::CardP:
        return static_cast<std::uint64_t>(std::popcount(set(f.vars()[0]))) == f.p();
      case FormulaKind::CardMod:
        return static_cast<std::uint64_t>(std::popcount(set(f.vars()[0]))) % f.q() == f.p();
      case FormulaKind::Partition: {
        // Each vertex is counted once per listed occurrence of a set containing it.
        for (std::size_t v = 0; v < s_.ids.size(); ++v) {
          std::size_t hits = 0;
          for (const auto& x : f.vars()) hits += (set(x) >> v) & 1U;
          if (hits != 1) return false;
        }
        return true;
      }
      case FormulaKind::Col: {
        const Mask x = set(f.vars()[0]), y = set(f.vars()[1]);
        if (x & y) return false;
        const Mask rest = s_.all & ~(x | y);
        for (std::size_t v = 0; v < s_.ids.size(); ++v)
          for (Mask cls : {x, y, rest})
            if (((cls >> v) & 1U) && (s_.adj[v] & cls)) return false;
        return true;
      }
      case FormulaKind::Not:
        return !eval(f.child(0), env);
      case FormulaKind::And:
        return eval(f.child(0), env) && eval(f.child(1), env);
      case FormulaKind::Or:
        return eval(f.child(0), env) || eval(f.child(1), env);
      case FormulaKind::Implies:
        return !eval(f.child(0), env) || eval(f.child(1), env);
      case FormulaKind::Exists:
      case FormulaKind::Forall: {
        const bool want = f.kind() == FormulaKind::Exists;
        env.emplace_back(f.vars()[0], 0);
        bool result = !want;
        // Enumerate all subsets of the vertex set, including the full set.
        Mask sub = 0;
        do {
          env.back().second = sub;
          if (eval(f.child(0), env) == want) {
            result = want;
            break;
          }
          sub = (sub - s_.all) & s_.all;
        } while (sub != 0);
        env.pop_back();
        return result;
      }
    }
    return false;
  }

 private:
  const Structure& s_;
};

std::vector<std::string> resolve_context(const Formula& phi, const std::optional<std::vector<std::string>>& context) {
  auto free = free_variables(phi);
  if (!context) return free;
  for (const auto& x : free)
    if (std::find(context->begin(), context->end(), x) == context->end())
      throw InvalidArgument("unbound variable '" + x + "'");
  return *context;
}

}  // namespace

bool oracle_mso_eval(const PGraph& g, const Formula& phi, const Assignment& asg,
                     const std::optional<std::vector<std::string>>& context, std::uint64_t guard) {
  const Structure s = index_graph(g);
  const auto vars = resolve_context(phi, context);
  if (asg.size() < vars.size())
    throw InvalidArgument("assignment has " + std::to_string(asg.size()) + " sets for " +
                          std::to_string(vars.size()) + " variables (unbound variable index)");
  check_budget(s.ids.size() * quantifier_depth(phi), guard, "MSO evaluation");
  std::vector<std::pair<std::string, Mask>> env;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    Mask m = 0;
    for (const auto& v : asg[i]) {
      auto it = s.index.find(v);
      if (it == s.index.end()) throw InvalidArgument("assignment mentions non-vertex " + v.str());
      m |= Mask{1} << it->second;
    }
    env.emplace_back(vars[i], m);
  }
  return Evaluator(s).eval(phi, env);
}

TupleMultiset oracle_multispectrum(const PGraph& g, const Formula& phi,
                                   const std::optional<std::vector<std::string>>& context, std::uint64_t guard) {
  const Structure s = index_graph(g);
  const auto vars = resolve_context(phi, context);
  const std::size_t n = s.ids.size();
  check_budget(n * (vars.size() + quantifier_depth(phi)), guard, "multispectrum enumeration");

  TupleMultiset out;
  std::vector<std::pair<std::string, Mask>> env;
  for (const auto& x : vars) env.emplace_back(x, 0);
  const Evaluator evaluator(s);
  std::function<void(std::size_t)> enumerate = [&](std::size_t i) {
    if (i == vars.size()) {
      if (!evaluator.eval(phi, env)) return;
      CardTuple tuple;
      for (const auto& [x, m] : env) tuple.push_back(static_cast<std::uint64_t>(std::popcount(m)));
      out[tuple] += 1;
      return;
    }
    Mask sub = 0;
    do {
      env[i].second = sub;
      enumerate(i + 1);
      sub = (sub - s.all) & s.all;
    } while (sub != 0);
  };
  enumerate(0);
  return out;
}

BigNat multiset_size(const TupleMultiset& ms) {
  BigNat total = 0;
  for (const auto& [tuple, mult] : ms) total += mult;
  return total;
}

TupleSpectrum multiset_support(const TupleMultiset& ms) {
  TupleSpectrum out;
  for (const auto& [tuple, mult] : ms) out.insert(tuple);
  return out;
}

Tropical multiset_min_first(const TupleMultiset& ms) {
  Tropical best;
  for (const auto& [tuple, mult] : ms) best = min(best, Tropical(tuple.empty() ? 0 : tuple[0]));
  return best;
}

namespace {

/// Connected, maximum degree at most 2 and at least one vertex.
bool is_path_or_cycle(const PGraph& g) {
  std::map<VertexId, std::vector<VertexId>> adj;
  for (const auto& v : g.vertices()) adj[v];
  for (const auto& [u, v] : g.edges()) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (const auto& [v, around] : adj)
    if (around.size() > 2) return false;
  std::set<VertexId> seen{adj.begin()->first};
  std::vector<VertexId> stack{adj.begin()->first};
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (const auto& u : adj[v])
      if (seen.insert(u).second) stack.push_back(u);
  }
  return seen.size() == adj.size();
}

BigNat power(BigNat base, std::size_t exponent) {
  BigNat out = 1;
  while (exponent--) out *= base;
  return out;
}

}  // namespace

BigNat oracle_count_colorings(const PGraph& g, std::uint32_t k, std::uint64_t guard) {
  if (k == 0) throw InvalidArgument("colourings need k >= 1");
  const std::size_t n = g.vertex_count();
  if (n == 0) return 1;
  if (is_path_or_cycle(g)) {
    const BigNat kk = k;
    if (g.edge_count() + 1 == n) return kk * power(kk - 1, n - 1);
    BigNat value = power(kk - 1, n);
    if (n % 2 == 0)
      value += kk - 1;
    else
      value -= kk - 1;
    return value;
  }
  // k^n <= guard, computed without overflow.
  std::uint64_t budget = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (budget > guard / k) throw GuardExceeded("colouring enumeration exceeds the guard");
    budget *= k;
  }
  const Structure s = index_graph(g);
  std::vector<std::uint32_t> colour(n, 0);
  std::uint64_t count = 0;
  std::function<void(std::size_t)> place = [&](std::size_t v) {
    if (v == n) {
      ++count;
      return;
    }
    for (std::uint32_t c = 0; c < k; ++c) {
      bool ok = true;
      for (std::size_t u = 0; u < v && ok; ++u)
        if (((s.adj[v] >> u) & 1U) && colour[u] == c) ok = false;
      if (!ok) continue;
      colour[v] = c;
      place(v + 1);
    }
  };
  place(0);
  return count;
}

}  // namespace flyaut
