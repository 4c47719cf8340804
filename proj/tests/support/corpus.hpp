#ifndef FLYAUT_TESTS_CORPUS_HPP
#define FLYAUT_TESTS_CORPUS_HPP

// Shared generators for the test suites: random terms, every small graph,
// assignments and a fixed formula battery.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "flyaut/formula.hpp"
#include "flyaut/pgraph.hpp"
#include "flyaut/term.hpp"

namespace flyaut::testing {

using Rng = std::mt19937_64;

inline std::uint32_t uniform(Rng& rng, std::uint32_t lo, std::uint32_t hi) {
  return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng);
}

/// Random term with `leaves` leaves over labels 1..labels (labels >= 2).
/// With width > 0 every leaf gets a random annotation of that width.
inline Term random_term(Rng& rng, std::size_t leaves, std::uint32_t labels, std::size_t width = 0) {
  Term t = [&] {
    if (leaves == 1) {
      const PortLabel a(uniform(rng, 1, labels));
      if (width == 0) return Term::leaf(a);
      return Term::leaf(a, Annotation(width, rng() & ((width == 64) ? ~0ULL : ((1ULL << width) - 1))));
    }
    const auto left = uniform(rng, 1, static_cast<std::uint32_t>(leaves - 1));
    return Term::oplus(random_term(rng, left, labels, width), random_term(rng, leaves - left, labels, width));
  }();
  // A few unary operations on top.
  while (uniform(rng, 0, 2) == 0) {
    const std::uint32_t a = uniform(rng, 1, labels);
    std::uint32_t b = uniform(rng, 1, labels - 1);
    if (b >= a) ++b;
    t = uniform(rng, 0, 2) == 0 ? Term::relab(PortLabel(a), PortLabel(b), t)
                                : Term::add(PortLabel(a), PortLabel(b), t);
  }
  return t;
}

/// Random term with 1..max_leaves leaves.
inline Term random_term_upto(Rng& rng, std::size_t max_leaves, std::uint32_t labels, std::size_t width = 0) {
  return random_term(rng, uniform(rng, 1, static_cast<std::uint32_t>(max_leaves)), labels, width);
}

/// Every graph on vertex ids 0..n-1 (2^(n(n-1)/2) of them), ports all 1.
inline std::vector<PGraph> all_graphs(std::size_t n) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<PGraph> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    PGraph g;
    for (std::uint32_t i = 0; i < n; ++i) g.add_vertex(Position(i), PortLabel(1));
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if ((mask >> k) & 1U) g.add_edge(Position(pairs[k].first), Position(pairs[k].second));
    out.push_back(std::move(g));
  }
  return out;
}

/// All graphs on 1..n vertices.
inline std::vector<PGraph> all_graphs_upto(std::size_t n) {
  std::vector<PGraph> out;
  for (std::size_t k = 1; k <= n; ++k) {
    auto more = all_graphs(k);
    out.insert(out.end(), more.begin(), more.end());
  }
  return out;
}

/// Random graph on n vertices with edge probability 1/2 and ports in 1..ports.
inline PGraph random_graph(Rng& rng, std::size_t n, std::uint32_t ports = 1) {
  PGraph g;
  for (std::uint32_t i = 0; i < n; ++i) g.add_vertex(Position(i), PortLabel(uniform(rng, 1, ports)));
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j)
      if (rng() & 1U) g.add_edge(Position(i), Position(j));
  return g;
}

/// The assignment of s sets over `vertices` encoded by the bits of `code`:
/// bit (k*s + i) puts vertices[k] into set i.
inline Assignment decode_assignment(const std::vector<VertexId>& vertices, std::size_t s, std::uint64_t code) {
  Assignment asg(s);
  for (std::size_t k = 0; k < vertices.size(); ++k)
    for (std::size_t i = 0; i < s; ++i)
      if ((code >> (k * s + i)) & 1U) asg[i].insert(vertices[k]);
  return asg;
}

/// Maps an assignment on graph ids to the leaf positions of a generated term.
inline Assignment to_leaves(const Assignment& asg, const std::map<VertexId, VertexId>& renaming) {
  std::map<VertexId, VertexId> back;
  for (const auto& [leaf, id] : renaming) back.emplace(id, leaf);
  Assignment out(asg.size());
  for (std::size_t i = 0; i < asg.size(); ++i)
    for (const auto& v : asg[i]) out[i].insert(back.at(v));
  return out;
}

/// Formulas over at most two free variables covering every atomic formula
/// and every connective.
inline std::vector<std::string> formula_battery() {
  return {
      "(sub X Y)",
      "(sgl X)",
      "(edg X Y)",
      "(cardp 2 X)",
      "(cardmod 1 2 X)",
      "(partition X Y)",
      "(col X Y)",
      "(not (and (sgl X) (sub X Y)))",
      "(or (edg X Y) (cardp 0 Y))",
      "(implies (sgl X) (exists Z (and (edg X Z) (sub Z Y))))",
      "(forall Z (implies (and (sgl Z) (sub Z X)) (exists W (and (edg Z W) (sub W Y)))))",
      "(forall U (forall V (implies (and (sub U X) (sub V X)) (not (edg U V)))))",
      "(exists X (col X Y))",
      "(3colorable)",
      "(and (partition X X Y) (cardmod 0 3 Y))",
  };
}

}  // namespace flyaut::testing

#endif  // FLYAUT_TESTS_CORPUS_HPP
