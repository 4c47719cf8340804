#include "flyaut/term.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <functional>
#include <limits>
#include <map>
#include <set>

#include "flyaut/error.hpp"

namespace flyaut {

// ---------------------------------------------------------------- Annotation

Annotation::Annotation(std::size_t width, std::uint64_t bits) : width_(width), bits_(bits) {
  if (width > kMaxWidth) throw InvalidArgument("annotations are limited to 64 variables");
  if (width < kMaxWidth && (bits >> width) != 0) throw InvalidArgument("annotation bits exceed its width");
}

Annotation Annotation::parse(std::string_view bits) {
  if (bits.size() > kMaxWidth) throw InvalidArgument("annotations are limited to 64 variables");
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      mask |= std::uint64_t{1} << i;
    else if (bits[i] != '0')
      throw InvalidArgument("annotation bits must be 0 or 1");
  }
  return Annotation(bits.size(), mask);
}

std::size_t Annotation::count() const noexcept { return static_cast<std::size_t>(std::popcount(bits_)); }

Annotation Annotation::prefix(std::size_t n) const {
  if (n > width_) throw InvalidArgument("annotation prefix longer than the annotation");
  const std::uint64_t mask = n == kMaxWidth ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  return Annotation(n, bits_ & mask);
}

Annotation Annotation::with_appended(bool bit) const {
  return Annotation(width_ + 1, bits_ | (bit ? std::uint64_t{1} << width_ : 0));
}

std::string Annotation::str() const {
  std::string out(width_, '0');
  for (std::size_t i = 0; i < width_; ++i)
    if (test(i)) out[i] = '1';
  return out;
}

// ---------------------------------------------------------------------- Term

struct Term::Node {
  TermKind kind;
  PortLabel a;
  PortLabel b;
  Annotation annotation;
  std::vector<Term> children;
  std::size_t size;
  std::size_t leaves;
  std::optional<std::size_t> width;
};

Term Term::leaf(PortLabel a) {
  return Term(std::make_shared<const Node>(Node{TermKind::Leaf, a, PortLabel(1), {}, {}, 1, 1, std::nullopt}));
}

Term Term::leaf(PortLabel a, Annotation w) {
  if (w.width() == 0) throw InvalidArgument("annotated leaves need at least one bit");
  return Term(std::make_shared<const Node>(Node{TermKind::AnnotatedLeaf, a, PortLabel(1), w, {}, 1, 1, w.width()}));
}

Term Term::oplus(Term left, Term right) {
  if (left.annotation_width() != right.annotation_width())
    throw InvalidArgument("oplus of terms with different annotation widths");
  const std::size_t size = 1 + left.size() + right.size();
  const std::size_t leaves = left.leaf_count() + right.leaf_count();
  auto width = left.annotation_width();
  return Term(std::make_shared<const Node>(
      Node{TermKind::Oplus, PortLabel(1), PortLabel(1), {}, {std::move(left), std::move(right)}, size, leaves, width}));
}

Term Term::add(PortLabel a, PortLabel b, Term child) {
  if (a == b) throw InvalidArgument("add needs two distinct labels");
  if (b < a) std::swap(a, b);
  const std::size_t size = 1 + child.size();
  const std::size_t leaves = child.leaf_count();
  auto width = child.annotation_width();
  return Term(std::make_shared<const Node>(Node{TermKind::Add, a, b, {}, {std::move(child)}, size, leaves, width}));
}

Term Term::relab(PortLabel a, PortLabel b, Term child) {
  const std::size_t size = 1 + child.size();
  const std::size_t leaves = child.leaf_count();
  auto width = child.annotation_width();
  return Term(std::make_shared<const Node>(Node{TermKind::Relab, a, b, {}, {std::move(child)}, size, leaves, width}));
}

TermKind Term::kind() const noexcept { return node_->kind; }
bool Term::is_leaf() const noexcept { return node_->children.empty(); }
PortLabel Term::label() const noexcept { return node_->a; }
PortLabel Term::second_label() const noexcept { return node_->b; }
const Annotation& Term::annotation() const noexcept { return node_->annotation; }
std::size_t Term::arity() const noexcept { return node_->children.size(); }
std::size_t Term::size() const noexcept { return node_->size; }
std::size_t Term::leaf_count() const noexcept { return node_->leaves; }
std::optional<std::size_t> Term::annotation_width() const noexcept { return node_->width; }

const Term& Term::child(std::size_t i) const {
  if (i >= node_->children.size()) throw InvalidArgument("child index out of range");
  return node_->children[i];
}

bool operator==(const Term& x, const Term& y) {
  if (x.node_ == y.node_) return true;
  const auto& p = *x.node_;
  const auto& q = *y.node_;
  if (p.kind != q.kind || p.size != q.size) return false;
  switch (p.kind) {
    case TermKind::Leaf:
      return p.a == q.a;
    case TermKind::AnnotatedLeaf:
      return p.a == q.a && p.annotation == q.annotation;
    case TermKind::Oplus:
      return p.children[0] == q.children[0] && p.children[1] == q.children[1];
    case TermKind::Add:
    case TermKind::Relab:
      return p.a == q.a && p.b == q.b && p.children[0] == q.children[0];
  }
  return false;
}

TermType term_type(const Term& t) {
  TermType type;
  type.num_vars = t.vars();
  std::function<void(const Term&)> visit = [&](const Term& u) {
    type.width = std::max(type.width, u.label().value());
    if (u.kind() == TermKind::Add || u.kind() == TermKind::Relab)
      type.width = std::max(type.width, u.second_label().value());
    for (std::size_t i = 0; i < u.arity(); ++i) visit(u.child(i));
  };
  visit(t);
  return type;
}

// ------------------------------------------------------------- parse / print

namespace {

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  Term parse() {
    Term t = term();
    skip();
    if (pos_ != text_.size()) fail("trailing input after term");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(what, line, column);
  }

  void skip() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  std::string word() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected one of oplus, relab, add, port");
    return std::string(text_.substr(start, pos_ - start));
  }

  PortLabel label() {
    skip();
    const std::size_t start = pos_;
    std::uint64_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (value > std::numeric_limits<std::uint32_t>::max()) fail("port label too large");
      ++pos_;
    }
    if (start == pos_) fail("expected a port label");
    if (value == 0) {
      pos_ = start;
      fail("port labels must be >= 1");
    }
    return PortLabel(static_cast<std::uint32_t>(value));
  }

  Annotation bits() {
    expect('[');
    skip();
    std::string digits;
    while (pos_ < text_.size() && (text_[pos_] == '0' || text_[pos_] == '1')) digits += text_[pos_++];
    if (digits.empty()) fail("expected annotation bits");
    if (digits.size() > Annotation::kMaxWidth) fail("annotations are limited to 64 variables");
    expect(']');
    return Annotation::parse(digits);
  }

  Term term() {
    const std::size_t start = (skip(), pos_);
    const std::string op = word();
    expect('(');
    if (op == "port") {
      const PortLabel a = label();
      if (peek(',')) {
        expect(',');
        Annotation w = bits();
        expect(')');
        note_width(w.width(), start);
        return Term::leaf(a, w);
      }
      expect(')');
      note_width(0, start);
      return Term::leaf(a);
    }
    if (op == "oplus") {
      Term left = term();
      expect(',');
      Term right = term();
      expect(')');
      return Term::oplus(std::move(left), std::move(right));
    }
    if (op == "add" || op == "relab") {
      const std::size_t label_pos = (skip(), pos_);
      const PortLabel a = label();
      expect(',');
      const PortLabel b = label();
      expect(',');
      Term child = term();
      expect(')');
      if (op == "relab") return Term::relab(a, b, std::move(child));
      if (a == b) {
        pos_ = label_pos;
        fail("add needs two distinct labels");
      }
      return Term::add(a, b, std::move(child));
    }
    pos_ = start;
    fail("unknown operation '" + op + "'");
  }

  void note_width(std::size_t width, std::size_t at) {
    if (!width_) {
      width_ = width;
    } else if (*width_ != width) {
      pos_ = at;
      fail("mixed annotation widths (" + std::to_string(*width_) + " and " + std::to_string(width) + ")");
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::optional<std::size_t> width_;
};

void print_into(const Term& t, std::string& out) {
  switch (t.kind()) {
    case TermKind::Leaf:
      out += "port(" + std::to_string(t.label().value()) + ")";
      return;
    case TermKind::AnnotatedLeaf:
      out += "port(" + std::to_string(t.label().value()) + ",[" + t.annotation().str() + "])";
      return;
    case TermKind::Oplus:
      out += "oplus(";
      print_into(t.child(0), out);
      out += ',';
      print_into(t.child(1), out);
      out += ')';
      return;
    case TermKind::Add:
    case TermKind::Relab:
      out += t.kind() == TermKind::Add ? "add(" : "relab(";
      out += std::to_string(t.label().value()) + "," + std::to_string(t.second_label().value()) + ",";
      print_into(t.child(0), out);
      out += ')';
      return;
  }
}

}  // namespace

Term parse_term(std::string_view text) { return TermParser(text).parse(); }

std::string print_term(const Term& t) {
  std::string out;
  out.reserve(t.size() * 10);
  print_into(t, out);
  return out;
}

// ----------------------------------------------------------------- positions

const Term& subterm(const Term& t, const Position& pos) {
  const Term* cur = &t;
  for (auto index : pos.path()) {
    if (index >= cur->arity()) throw InvalidArgument("position " + pos.str() + " is not in the term");
    cur = &cur->child(index);
  }
  return *cur;
}

std::vector<Position> leaf_positions(const Term& t) {
  std::vector<Position> out;
  std::vector<std::uint32_t> path;
  std::function<void(const Term&)> visit = [&](const Term& u) {
    if (u.is_leaf()) {
      out.emplace_back(path);
      return;
    }
    for (std::uint32_t i = 0; i < u.arity(); ++i) {
      path.push_back(i);
      visit(u.child(i));
      path.pop_back();
    }
  };
  visit(t);
  return out;
}

std::map<Position, std::size_t> infix_numbers(const Term& t) {
  std::map<Position, std::size_t> out;
  std::vector<std::uint32_t> path;
  std::function<void(const Term&)> visit = [&](const Term& u) {
    const bool binary = u.arity() == 2;
    if (!binary) out.emplace(Position(path), out.size() + 1);
    for (std::uint32_t i = 0; i < u.arity(); ++i) {
      path.push_back(i);
      visit(u.child(i));
      path.pop_back();
      if (binary && i == 0) out.emplace(Position(path), out.size() + 1);
    }
  };
  visit(t);
  return out;
}

// ---------------------------------------------------------------- evaluation

namespace {

/// Bottom-up evaluation; `on_add` sees each Add node with its child's value.
PGraph evaluate(const Term& t, std::vector<std::uint32_t>& path,
                const std::function<void(const Term&, const std::vector<std::uint32_t>&, const PGraph&)>& on_add) {
  switch (t.kind()) {
    case TermKind::Leaf:
    case TermKind::AnnotatedLeaf:
      return single_vertex(Position(path), t.label());
    case TermKind::Oplus: {
      path.push_back(0);
      PGraph left = evaluate(t.child(0), path, on_add);
      path.back() = 1;
      PGraph right = evaluate(t.child(1), path, on_add);
      path.pop_back();
      return disjoint_union(left, right);
    }
    case TermKind::Add:
    case TermKind::Relab: {
      path.push_back(0);
      PGraph g = evaluate(t.child(0), path, on_add);
      path.pop_back();
      if (t.kind() == TermKind::Relab) return relabel(t.label(), t.second_label(), std::move(g));
      if (on_add) on_add(t, path, g);
      return add_edges(t.label(), t.second_label(), std::move(g));
    }
  }
  return {};
}

}  // namespace

PGraph eval_term(const Term& t) {
  std::vector<std::uint32_t> path;
  return evaluate(t, path, nullptr);
}

std::pair<PGraph, Assignment> eval_annotated(const Term& t) {
  PGraph g = eval_term(t);
  Assignment asg(t.vars());
  std::vector<std::uint32_t> path;
  std::function<void(const Term&)> visit = [&](const Term& u) {
    if (u.kind() == TermKind::AnnotatedLeaf) {
      for (std::size_t i = 0; i < asg.size(); ++i)
        if (u.annotation().test(i)) asg[i].insert(Position(path));
      return;
    }
    for (std::uint32_t i = 0; i < u.arity(); ++i) {
      path.push_back(i);
      visit(u.child(i));
      path.pop_back();
    }
  };
  visit(t);
  return {std::move(g), std::move(asg)};
}

namespace {

Term rebuild_leaves(const Term& t, std::vector<std::uint32_t>& path,
                    const std::function<Term(const Term&, const Position&)>& leaf) {
  switch (t.kind()) {
    case TermKind::Leaf:
    case TermKind::AnnotatedLeaf:
      return leaf(t, Position(path));
    case TermKind::Oplus: {
      path.push_back(0);
      Term left = rebuild_leaves(t.child(0), path, leaf);
      path.back() = 1;
      Term right = rebuild_leaves(t.child(1), path, leaf);
      path.pop_back();
      return Term::oplus(std::move(left), std::move(right));
    }
    case TermKind::Add:
    case TermKind::Relab: {
      path.push_back(0);
      Term child = rebuild_leaves(t.child(0), path, leaf);
      path.pop_back();
      return t.kind() == TermKind::Add ? Term::add(t.label(), t.second_label(), std::move(child))
                                       : Term::relab(t.label(), t.second_label(), std::move(child));
    }
  }
  return t;
}

}  // namespace

Term annotate(const Term& t, const Assignment& asg) {
  if (asg.size() > Annotation::kMaxWidth) throw InvalidArgument("annotations are limited to 64 variables");
  std::size_t used = 0;
  std::vector<std::uint32_t> path;
  Term out = rebuild_leaves(t, path, [&](const Term& leaf, const Position& pos) {
    if (asg.empty()) return Term::leaf(leaf.label());
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < asg.size(); ++i)
      if (asg[i].contains(pos)) {
        bits |= std::uint64_t{1} << i;
        ++used;
      }
    return Term::leaf(leaf.label(), Annotation(asg.size(), bits));
  });
  std::size_t total = 0;
  for (const auto& s : asg) total += s.size();
  if (total != used) throw InvalidArgument("assignment contains positions that are not leaves of the term");
  return out;
}

Term strip(const Term& t) {
  if (!t.annotation_width()) return t;
  std::vector<std::uint32_t> path;
  return rebuild_leaves(t, path, [](const Term& leaf, const Position&) { return Term::leaf(leaf.label()); });
}

IrredundancyReport check_irredundant(const Term& t) {
  IrredundancyReport report;
  std::vector<std::uint32_t> path;
  evaluate(t, path, [&](const Term& add, const std::vector<std::uint32_t>& at, const PGraph& g) {
    if (!report.irredundant) return;
    std::vector<VertexId> as, bs;
    for (const auto& [v, port] : g.ports()) {
      if (port == add.label()) as.push_back(v);
      if (port == add.second_label()) bs.push_back(v);
    }
    for (const auto& x : as)
      for (const auto& y : bs)
        if (g.adjacent(x, y)) {
          report.irredundant = false;
          report.offending = Position(at);
          return;
        }
  });
  return report;
}

// ---------------------------------------------------------------- generation

namespace {

GraphTerm with_renaming(Term term, const std::vector<VertexId>& ids_in_leaf_order) {
  GraphTerm out{std::move(term), {}};
  auto leaves = leaf_positions(out.term);
  for (std::size_t i = 0; i < leaves.size(); ++i) out.renaming.emplace(leaves[i], ids_in_leaf_order[i]);
  return out;
}

PortLabel L(std::uint32_t v) { return PortLabel(v); }

}  // namespace

GraphTerm term_from_graph(const PGraph& g) {
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  return term_from_graph(g, edges);
}

GraphTerm term_from_graph(const PGraph& g, std::span<const Edge> edge_order) {
  if (g.empty()) throw InvalidArgument("terms denote nonempty graphs");
  if (edge_order.size() != g.edge_count()) throw InvalidArgument("edge order must list every edge once");
  const auto vertices = g.vertices();
  const auto n = static_cast<std::uint32_t>(vertices.size());
  std::map<VertexId, std::uint32_t> temp;
  for (std::uint32_t i = 0; i < n; ++i) temp.emplace(vertices[i], i + 1);

  if (n == 1) return with_renaming(Term::leaf(g.port(vertices[0])), vertices);

  Term t = Term::leaf(L(1));
  for (std::uint32_t i = 2; i <= n; ++i) t = Term::oplus(std::move(t), Term::leaf(L(i)));
  std::set<Edge> seen;
  for (const auto& [u, v] : edge_order) {
    if (!g.adjacent(u, v) || !seen.insert(u < v ? Edge{u, v} : Edge{v, u}).second)
      throw InvalidArgument("edge order must list every edge once");
    t = Term::add(L(temp.at(u)), L(temp.at(v)), std::move(t));
  }

  // Relabel temporary label i to the target port of vertex i. A relabel
  // i -> j waits while j is still a pending source; cycles go through a
  // spare label above every label in use.
  std::map<std::uint32_t, std::uint32_t> pending;
  std::uint32_t spare = n;
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto target = g.port(vertices[i]).value();
    spare = std::max(spare, target);
    if (target != i + 1) pending.emplace(i + 1, target);
  }
  ++spare;
  while (!pending.empty()) {
    auto ready = std::find_if(pending.begin(), pending.end(),
                              [&](const auto& entry) { return !pending.contains(entry.second); });
    if (ready != pending.end()) {
      t = Term::relab(L(ready->first), L(ready->second), std::move(t));
      pending.erase(ready);
    } else {
      auto [source, target] = *pending.begin();
      t = Term::relab(L(source), L(spare), std::move(t));
      pending.erase(pending.begin());
      pending.emplace(spare++, target);
    }
  }
  return with_renaming(std::move(t), vertices);
}

GraphTerm gen_term(std::string_view family, std::span<const int> params) {
  auto id = [](int i) { return VertexId(static_cast<std::uint32_t>(i)); };
  auto size_arg = [&](std::size_t count) {
    if (params.size() != count)
      throw InvalidArgument(std::string(family) + " expects " + std::to_string(count) + " size parameter(s)");
    for (int p : params)
      if (p < 1) throw InvalidArgument(std::string(family) + ": sizes must be >= 1");
  };
  std::vector<VertexId> order;

  if (family == "clique") {
    size_arg(1);
    Term t = Term::leaf(L(1));
    order.push_back(id(0));
    for (int k = 1; k < params[0]; ++k) {
      t = Term::relab(L(2), L(1), Term::add(L(1), L(2), Term::oplus(std::move(t), Term::leaf(L(2)))));
      order.push_back(id(k));
    }
    return with_renaming(std::move(t), order);
  }
  if (family == "path") {
    size_arg(1);
    if (params[0] == 1) return with_renaming(Term::leaf(L(1)), {id(0)});
    // Current end carries label 2, the interior label 1.
    Term t = Term::leaf(L(2));
    order.push_back(id(0));
    for (int k = 1; k < params[0]; ++k) {
      t = Term::relab(
          L(3), L(2),
          Term::relab(L(2), L(1), Term::add(L(2), L(3), Term::oplus(std::move(t), Term::leaf(L(3))))));
      order.push_back(id(k));
    }
    return with_renaming(Term::relab(L(2), L(1), std::move(t)), order);
  }
  if (family == "cycle") {
    size_arg(1);
    if (params[0] < 3) throw InvalidArgument("cycle needs at least 3 vertices");
    // Start vertex keeps label 4 until the closing edge.
    Term t = Term::add(L(2), L(4), Term::oplus(Term::leaf(L(4)), Term::leaf(L(2))));
    order = {id(0), id(1)};
    for (int k = 2; k < params[0]; ++k) {
      t = Term::relab(
          L(3), L(2),
          Term::relab(L(2), L(1), Term::add(L(2), L(3), Term::oplus(std::move(t), Term::leaf(L(3))))));
      order.push_back(id(k));
    }
    t = Term::add(L(2), L(4), std::move(t));
    return with_renaming(Term::relab(L(4), L(1), Term::relab(L(2), L(1), std::move(t))), order);
  }
  if (family == "grid") {
    size_arg(2);
    const int rows = params[0], cols = params[1];
    // Sweep lines of height h = min(rows, cols). Row i of the current line
    // carries label i+2, finished vertices label 1, the new vertex h+2.
    const bool by_columns = rows <= cols;
    const int h = by_columns ? rows : cols;
    const int lines = by_columns ? cols : rows;
    const auto fresh = static_cast<std::uint32_t>(h + 2);
    std::optional<Term> t;
    for (int j = 0; j < lines; ++j)
      for (int i = 0; i < h; ++i) {
        const auto row = static_cast<std::uint32_t>(i + 2);
        Term next = Term::leaf(L(fresh));
        next = t ? Term::oplus(std::move(*t), std::move(next)) : std::move(next);
        if (j > 0) next = Term::add(L(row), L(fresh), std::move(next));
        if (i > 0) next = Term::add(L(row - 1), L(fresh), std::move(next));
        if (j > 0) next = Term::relab(L(row), L(1), std::move(next));
        t = Term::relab(L(fresh), L(row), std::move(next));
        order.push_back(id(by_columns ? i * cols + j : j * cols + i));
      }
    for (int i = 0; i < h; ++i) t = Term::relab(L(static_cast<std::uint32_t>(i + 2)), L(1), std::move(*t));
    return with_renaming(std::move(*t), order);
  }
  throw InvalidArgument("unknown term family '" + std::string(family) + "'");
}

}  // namespace flyaut
