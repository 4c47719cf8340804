#include "doctest.h"


#include "flyaut/error.hpp"
#include "flyaut/pgraph.hpp"
#include "flyaut/term.hpp"
#include "support/corpus.hpp"

using namespace flyaut;
using flyaut::testing::Rng;

namespace {

PGraph example_graph() {
  return eval_term(parse_term(
      "add(2,3,oplus(add(1,2,oplus(port(1),port(2))),relab(2,3,add(1,2,oplus(port(1),port(2))))))"));
}

/// Applies a random sequence of operations over labels 1..3.
PGraph random_graph_by_ops(Rng& rng, std::uint32_t& next_id) {
  PGraph g = single_vertex(Position(next_id++), PortLabel(flyaut::testing::uniform(rng, 1, 3)));
  for (int step = 0; step < 12; ++step) {
    const PortLabel a(flyaut::testing::uniform(rng, 1, 3));
    PortLabel b(flyaut::testing::uniform(rng, 1, 3));
    switch (flyaut::testing::uniform(rng, 0, 2)) {
      case 0:
        g = disjoint_union(g, single_vertex(Position(next_id++), b));
        break;
      case 1:
        if (a != b) g = add_edges(a, b, g);
        break;
      default:
        g = relabel(a, b, g);
    }
  }
  return g;
}

}  // namespace

TEST_CASE("disjoint union of two single vertices") {
  const PGraph g = disjoint_union(single_vertex(Position(1), PortLabel(1)), single_vertex(Position(2), PortLabel(2)));
  CHECK(g.vertex_count() == 2);
  CHECK(g.edge_count() == 0);
  CHECK(g.port(Position(1)) == PortLabel(1));
  CHECK(g.port(Position(2)) == PortLabel(2));
}

TEST_CASE("disjoint union with the empty graph is the identity") {
  const PGraph g = single_vertex(Position(1), PortLabel(1));
  CHECK(disjoint_union(g, PGraph{}) == g);
  CHECK(disjoint_union(PGraph{}, g) == g);
}

TEST_CASE("disjoint union rejects overlapping ids") {
  const PGraph g = single_vertex(Position(1), PortLabel(1));
  CHECK_THROWS_AS(disjoint_union(g, single_vertex(Position(1), PortLabel(2))), InvalidArgument);
}

TEST_CASE("the subterm at position 4 of the example term is two isolated vertices") {
  const Term t = parse_term(
      "add(2,3,oplus(add(1,2,oplus(port(1),port(2))),relab(2,3,add(1,2,oplus(port(1),port(2))))))");
  const PGraph g = eval_term(subterm(t, Position(std::vector<std::uint32_t>{0, 0, 0})));
  CHECK(g.vertex_count() == 2);
  CHECK(g.edge_count() == 0);
  CHECK(port_type(g) == std::set<PortLabel>{PortLabel(1), PortLabel(2)});
}

TEST_CASE("add_edges") {
  const PGraph two = disjoint_union(single_vertex(Position(1), PortLabel(1)), single_vertex(Position(2), PortLabel(2)));
  const PGraph once = add_edges(PortLabel(1), PortLabel(2), two);
  CHECK(once.edge_count() == 1);
  CHECK(once.adjacent(Position(1), Position(2)));
  CHECK(add_edges(PortLabel(1), PortLabel(2), once) == once);
  CHECK(add_edges(PortLabel(2), PortLabel(1), two) == once);
  CHECK(add_edges(PortLabel(1), PortLabel(3), two) == two);
  CHECK_THROWS_AS(add_edges(PortLabel(1), PortLabel(1), two), InvalidArgument);
}

TEST_CASE("relabel") {
  PGraph g = disjoint_union(single_vertex(Position(9), PortLabel(1)), single_vertex(Position(11), PortLabel(2)));
  g = add_edges(PortLabel(1), PortLabel(2), g);
  const PGraph h = relabel(PortLabel(2), PortLabel(3), g);
  CHECK(h.port(Position(9)) == PortLabel(1));
  CHECK(h.port(Position(11)) == PortLabel(3));
  CHECK(h.edges() == g.edges());
  CHECK(relabel(PortLabel(1), PortLabel(1), g) == g);
  CHECK(relabel(PortLabel(5), PortLabel(1), g) == g);
  CHECK(port_type(relabel(PortLabel(1), PortLabel(2), g)) == std::set<PortLabel>{PortLabel(2)});
}

TEST_CASE("port type") {
  CHECK(port_type(example_graph()) == std::set<PortLabel>{PortLabel(1), PortLabel(2), PortLabel(3)});
  CHECK(port_type(single_vertex(Position(1), PortLabel(4))) == std::set<PortLabel>{PortLabel(4)});
  CHECK(port_type(PGraph{}).empty());
}

TEST_CASE("builtin families") {
  const int three[] = {3};
  const PGraph triangle = builtin_graph("cycle", three);
  CHECK(triangle.vertex_count() == 3);
  CHECK(triangle.edge_count() == 3);

  const PGraph petersen = builtin_graph("petersen", {});
  CHECK(petersen.vertex_count() == 10);
  CHECK(petersen.edge_count() == 15);
  for (const auto& v : petersen.vertices()) CHECK(degree(petersen, v) == 3);

  const int two_by_three[] = {2, 3};
  const PGraph grid = builtin_graph("grid", two_by_three);
  CHECK(grid.vertex_count() == 6);
  CHECK(grid.edge_count() == 7);

  for (int r = 1; r <= 8; ++r)
    for (int c = 1; c <= 8; ++c) {
      const int rc[] = {r, c};
      CHECK(builtin_graph("grid", rc).edge_count() == static_cast<std::size_t>((r - 1) * c + r * (c - 1)));
    }

  const int four[] = {4};
  CHECK(builtin_graph("clique", four).edge_count() == 6);
  CHECK(builtin_graph("path", four).edge_count() == 3);
  CHECK(builtin_graph("star", four).vertex_count() == 5);
  CHECK(builtin_graph("star", four).edge_count() == 4);
  for (const auto& [v, port] : petersen.ports()) CHECK(port == PortLabel(1));

  const int two[] = {2};
  const int zero[] = {0};
  CHECK_THROWS_AS(builtin_graph("cycle", two), InvalidArgument);
  CHECK_THROWS_AS(builtin_graph("path", zero), InvalidArgument);
  CHECK_THROWS_AS(builtin_graph("mobius", three), InvalidArgument);
}

TEST_CASE("random operation sequences keep the graph simple and the laws hold") {
  Rng rng(7);
  std::uint32_t next_id = 0;
  for (int round = 0; round < 200; ++round) {
    const PGraph g = random_graph_by_ops(rng, next_id);
    for (const auto& [u, v] : g.edges()) {
      CHECK(u < v);
      CHECK(g.has_vertex(u));
      CHECK(g.has_vertex(v));
    }
    for (std::uint32_t a = 1; a <= 3; ++a)
      for (std::uint32_t b = 1; b <= 3; ++b) {
        const PortLabel la(a), lb(b);
        CHECK(relabel(la, lb, relabel(la, lb, g)) == relabel(la, lb, g));
        if (a != b) CHECK(add_edges(la, lb, add_edges(la, lb, g)) == add_edges(la, lb, g));
      }
    CHECK(relabel(PortLabel(2), PortLabel(2), g) == g);

    const PGraph h = random_graph_by_ops(rng, next_id);
    const PGraph k = random_graph_by_ops(rng, next_id);
    CHECK(disjoint_union(g, h) == disjoint_union(h, g));
    CHECK(disjoint_union(disjoint_union(g, h), k) == disjoint_union(g, disjoint_union(h, k)));
  }
}

TEST_CASE("graph text format round trip") {
  Rng rng(11);
  for (int round = 0; round < 50; ++round) {
    const PGraph g = flyaut::testing::random_graph(rng, flyaut::testing::uniform(rng, 0, 7), 3);
    CHECK(read_graph(write_graph(g)) == g);
  }
  CHECK(write_graph(single_vertex(Position(0), PortLabel(1))) == "1 0\n0 1\n");
  CHECK_THROWS_AS(read_graph("2 1\n0 1\n1 1\n0 0\n"), Error);
  CHECK_THROWS_AS(read_graph("2 x"), Error);
}

TEST_CASE("dot export lists every edge") {
  const std::string dot = to_dot(example_graph());
  std::size_t edges = 0;
  for (std::size_t at = dot.find("--"); at != std::string::npos; at = dot.find("--", at + 2)) ++edges;
  CHECK(edges == 3);
  CHECK(dot.find("graph") != std::string::npos);
}
