#ifndef FLYAUT_PGRAPH_HPP
#define FLYAUT_PGRAPH_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace flyaut {

/// Port label, a positive integer.
class PortLabel {
 public:
  constexpr PortLabel() = default;
  explicit PortLabel(std::uint32_t value);

  constexpr std::uint32_t value() const noexcept { return value_; }
  friend constexpr auto operator<=>(PortLabel, PortLabel) = default;

 private:
  std::uint32_t value_ = 1;
};

/// A node of a term, addressed by child indices from the root (the root is
/// the empty path). Vertices of evaluated graphs are leaf positions; graphs
/// built by hand use one-step paths {n} as plain integer ids.
class Position {
 public:
  Position() = default;
  explicit Position(std::uint32_t id) : path_{id} {}
  explicit Position(std::vector<std::uint32_t> path) : path_(std::move(path)) {}

  const std::vector<std::uint32_t>& path() const noexcept { return path_; }
  bool is_root() const noexcept { return path_.empty(); }
  Position child(std::uint32_t index) const;

  /// Dot-separated child indices; the root prints as "root".
  std::string str() const;
  static Position parse(std::string_view text);

  friend auto operator<=>(const Position&, const Position&) = default;

 private:
  std::vector<std::uint32_t> path_;
};

using VertexId = Position;
using Edge = std::pair<VertexId, VertexId>;  // first < second
using VertexSet = std::set<VertexId>;
/// One vertex set per set variable X1..Xm.
using Assignment = std::vector<VertexSet>;

/// Port-labeled undirected graph without loops or multiple edges.
class PGraph {
 public:
  PGraph() = default;

  void add_vertex(const VertexId& v, PortLabel port);
  /// Inserts {u,v}; inserting an existing edge is a no-op.
  void add_edge(const VertexId& u, const VertexId& v);
  void set_port(const VertexId& v, PortLabel port);

  const std::map<VertexId, PortLabel>& ports() const noexcept { return ports_; }
  const std::set<Edge>& edges() const noexcept { return edges_; }
  std::vector<VertexId> vertices() const;

  std::size_t vertex_count() const noexcept { return ports_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return ports_.empty(); }
  bool has_vertex(const VertexId& v) const { return ports_.contains(v); }
  bool adjacent(const VertexId& u, const VertexId& v) const;
  PortLabel port(const VertexId& v) const;

  friend bool operator==(const PGraph&, const PGraph&) = default;

 private:
  std::map<VertexId, PortLabel> ports_;
  std::set<Edge> edges_;
};

/// Single vertex `v` carrying `port`, no edges.
PGraph single_vertex(const VertexId& v, PortLabel port);

/// Disjoint union. Throws InvalidArgument if the vertex sets overlap.
PGraph disjoint_union(const PGraph& g, const PGraph& h);

/// Adds an edge between every a-port and every b-port. The label order is
/// irrelevant; a == b is rejected.
PGraph add_edges(PortLabel a, PortLabel b, PGraph g);

/// Renames port label a to b everywhere.
PGraph relabel(PortLabel a, PortLabel b, PGraph g);

/// The type of g: the set of port labels in use.
std::set<PortLabel> port_type(const PGraph& g);

std::size_t degree(const PGraph& g, const VertexId& v);

/// Standard graph families with ids 0..n-1 and every port set to 1.
/// Families: path n, cycle n (n >= 3), clique n, grid r c, star n
/// (one center plus n leaves), petersen.
PGraph builtin_graph(std::string_view family, std::span<const int> params);

/// Applies `rename` to vertex ids (ids not in the map are kept).
PGraph rename_vertices(const PGraph& g, const std::map<VertexId, VertexId>& rename);

// Text format: "n m", then n lines "id port", then m lines "id id" (id1 < id2).
std::string write_graph(const PGraph& g);
PGraph read_graph(std::string_view text);

/// Undirected DOT rendering for visualization.
std::string to_dot(const PGraph& g);

}  // namespace flyaut

#endif  // FLYAUT_PGRAPH_HPP
