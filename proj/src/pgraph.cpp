#include "flyaut/pgraph.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "flyaut/error.hpp"

namespace flyaut {

PortLabel::PortLabel(std::uint32_t value) : value_(value) {
  if (value == 0) throw InvalidArgument("port labels are positive integers");
}

Position Position::child(std::uint32_t index) const {
  auto path = path_;
  path.push_back(index);
  return Position(std::move(path));
}

std::string Position::str() const {
  if (path_.empty()) return "root";
  std::string out;
  for (std::size_t i = 0; i < path_.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(path_[i]);
  }
  return out;
}

Position Position::parse(std::string_view text) {
  if (text == "root") return Position();
  std::vector<std::uint32_t> path;
  std::size_t start = 0;
  while (true) {
    auto dot = text.find('.', start);
    auto piece = text.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
    std::uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
    if (piece.empty() || ec != std::errc() || ptr != piece.data() + piece.size())
      throw InvalidArgument("malformed vertex id '" + std::string(text) + "'");
    path.push_back(value);
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return Position(std::move(path));
}

void PGraph::add_vertex(const VertexId& v, PortLabel port) {
  if (!ports_.emplace(v, port).second)
    throw InvalidArgument("duplicate vertex " + v.str());
}

void PGraph::add_edge(const VertexId& u, const VertexId& v) {
  if (!has_vertex(u) || !has_vertex(v))
    throw InvalidArgument("edge endpoint is not a vertex: " + u.str() + " " + v.str());
  if (u == v) throw InvalidArgument("loops are not allowed: " + u.str());
  edges_.insert(u < v ? Edge{u, v} : Edge{v, u});
}

void PGraph::set_port(const VertexId& v, PortLabel port) {
  auto it = ports_.find(v);
  if (it == ports_.end()) throw InvalidArgument("unknown vertex " + v.str());
  it->second = port;
}

std::vector<VertexId> PGraph::vertices() const {
  std::vector<VertexId> out;
  out.reserve(ports_.size());
  for (const auto& [v, port] : ports_) out.push_back(v);
  return out;
}

bool PGraph::adjacent(const VertexId& u, const VertexId& v) const {
  return edges_.contains(u < v ? Edge{u, v} : Edge{v, u});
}

PortLabel PGraph::port(const VertexId& v) const {
  auto it = ports_.find(v);
  if (it == ports_.end()) throw InvalidArgument("unknown vertex " + v.str());
  return it->second;
}

PGraph single_vertex(const VertexId& v, PortLabel port) {
  PGraph g;
  g.add_vertex(v, port);
  return g;
}

PGraph disjoint_union(const PGraph& g, const PGraph& h) {
  PGraph out = g;
  for (const auto& [v, port] : h.ports()) {
    if (out.has_vertex(v))
      throw InvalidArgument("disjoint union of overlapping graphs (vertex " + v.str() + ")");
    out.add_vertex(v, port);
  }
  for (const auto& [u, v] : h.edges()) out.add_edge(u, v);
  return out;
}

PGraph add_edges(PortLabel a, PortLabel b, PGraph g) {
  if (a == b) throw InvalidArgument("edge addition needs two distinct labels");
  std::vector<VertexId> as, bs;
  for (const auto& [v, port] : g.ports()) {
    if (port == a) as.push_back(v);
    if (port == b) bs.push_back(v);
  }
  for (const auto& x : as)
    for (const auto& y : bs) g.add_edge(x, y);
  return g;
}

PGraph relabel(PortLabel a, PortLabel b, PGraph g) {
  if (a == b) return g;
  for (const auto& v : g.vertices())
    if (g.port(v) == a) g.set_port(v, b);
  return g;
}

std::set<PortLabel> port_type(const PGraph& g) {
  std::set<PortLabel> out;
  for (const auto& [v, port] : g.ports()) out.insert(port);
  return out;
}

std::size_t degree(const PGraph& g, const VertexId& v) {
  return static_cast<std::size_t>(std::count_if(g.edges().begin(), g.edges().end(),
                                                [&](const Edge& e) { return e.first == v || e.second == v; }));
}

namespace {

PGraph numbered(int n) {
  PGraph g;
  for (int i = 0; i < n; ++i) g.add_vertex(VertexId(static_cast<std::uint32_t>(i)), PortLabel(1));
  return g;
}

void link(PGraph& g, int u, int v) {
  g.add_edge(VertexId(static_cast<std::uint32_t>(u)), VertexId(static_cast<std::uint32_t>(v)));
}

void expect_params(std::string_view family, std::span<const int> params, std::size_t count) {
  if (params.size() != count)
    throw InvalidArgument(std::string(family) + " expects " + std::to_string(count) + " size parameter(s)");
  for (int p : params)
    if (p < 1) throw InvalidArgument(std::string(family) + ": sizes must be >= 1");
}

}  // namespace

PGraph builtin_graph(std::string_view family, std::span<const int> params) {
  if (family == "path") {
    expect_params(family, params, 1);
    PGraph g = numbered(params[0]);
    for (int i = 0; i + 1 < params[0]; ++i) link(g, i, i + 1);
    return g;
  }
  if (family == "cycle") {
    expect_params(family, params, 1);
    if (params[0] < 3) throw InvalidArgument("cycle needs at least 3 vertices");
    PGraph g = numbered(params[0]);
    for (int i = 0; i < params[0]; ++i) link(g, i, (i + 1) % params[0]);
    return g;
  }
  if (family == "clique") {
    expect_params(family, params, 1);
    PGraph g = numbered(params[0]);
    for (int i = 0; i < params[0]; ++i)
      for (int j = i + 1; j < params[0]; ++j) link(g, i, j);
    return g;
  }
  if (family == "grid") {
    expect_params(family, params, 2);
    const int rows = params[0], cols = params[1];
    PGraph g = numbered(rows * cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) {
        if (c + 1 < cols) link(g, r * cols + c, r * cols + c + 1);
        if (r + 1 < rows) link(g, r * cols + c, (r + 1) * cols + c);
      }
    return g;
  }
  if (family == "star") {
    expect_params(family, params, 1);
    PGraph g = numbered(params[0] + 1);
    for (int i = 1; i <= params[0]; ++i) link(g, 0, i);
    return g;
  }
  if (family == "petersen") {
    if (!params.empty()) throw InvalidArgument("petersen takes no parameters");
    // Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5.
    PGraph g = numbered(10);
    for (int i = 0; i < 5; ++i) {
      link(g, i, (i + 1) % 5);
      link(g, 5 + i, 5 + (i + 2) % 5);
      link(g, i, i + 5);
    }
    return g;
  }
  throw InvalidArgument("unknown graph family '" + std::string(family) + "'");
}

PGraph rename_vertices(const PGraph& g, const std::map<VertexId, VertexId>& rename) {
  auto map_id = [&](const VertexId& v) {
    auto it = rename.find(v);
    return it == rename.end() ? v : it->second;
  };
  PGraph out;
  for (const auto& [v, port] : g.ports()) out.add_vertex(map_id(v), port);
  for (const auto& [u, v] : g.edges()) out.add_edge(map_id(u), map_id(v));
  return out;
}

std::string write_graph(const PGraph& g) {
  std::ostringstream out;
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [v, port] : g.ports()) out << v.str() << ' ' << port.value() << '\n';
  for (const auto& [u, v] : g.edges()) out << u.str() << ' ' << v.str() << '\n';
  return out.str();
}

PGraph read_graph(std::string_view text) {
  std::vector<std::pair<std::size_t, std::vector<std::string>>> lines;
  std::size_t number = 0;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    ++number;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream words(line);
    std::vector<std::string> tokens;
    for (std::string w; words >> w;) tokens.push_back(w);
    if (!tokens.empty()) lines.emplace_back(number, std::move(tokens));
  }
  auto fail = [](std::size_t line, const std::string& what) -> ParseError { return ParseError(what, line, 1); };
  if (lines.empty()) throw fail(1, "missing header 'n m'");
  auto to_count = [&](const std::string& s, std::size_t line) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw fail(line, "expected a natural number, got '" + s + "'");
    return value;
  };
  const auto& header = lines.front();
  if (header.second.size() != 2) throw fail(header.first, "header must be 'n m'");
  const std::size_t n = to_count(header.second[0], header.first);
  const std::size_t m = to_count(header.second[1], header.first);
  if (lines.size() != 1 + n + m)
    throw fail(lines.back().first, "expected " + std::to_string(n) + " vertex lines and " + std::to_string(m) +
                                       " edge lines");
  PGraph g;
  for (std::size_t i = 1; i <= n + m; ++i) {
    const auto& [line, tokens] = lines[i];
    if (tokens.size() != 2) throw fail(line, "expected two fields");
    try {
      if (i <= n) {
        auto port = to_count(tokens[1], line);
        g.add_vertex(Position::parse(tokens[0]), PortLabel(static_cast<std::uint32_t>(port)));
      } else {
        auto u = Position::parse(tokens[0]);
        auto v = Position::parse(tokens[1]);
        if (!(u < v)) throw fail(line, "edge ids must satisfy id1 < id2");
        g.add_edge(u, v);
      }
    } catch (const InvalidArgument& e) {
      throw fail(line, e.what());
    }
  }
  return g;
}

std::string to_dot(const PGraph& g) {
  std::ostringstream out;
  out << "graph G {\n";
  for (const auto& [v, port] : g.ports())
    out << "  \"" << v.str() << "\" [label=\"" << v.str() << ":" << port.value() << "\"];\n";
  for (const auto& [u, v] : g.edges()) out << "  \"" << u.str() << "\" -- \"" << v.str() << "\";\n";
  out << "}\n";
  return out.str();
}

}  // namespace flyaut
