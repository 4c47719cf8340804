#ifndef FLYAUT_TERM_HPP
#define FLYAUT_TERM_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "flyaut/pgraph.hpp"

namespace flyaut {

/// The Boolean vector w of an annotated leaf (a,w) over F^(m). Bit i
/// (0-based) is the membership of the leaf in set variable X_{i+1}.
class Annotation {
 public:
  static constexpr std::size_t kMaxWidth = 64;

  Annotation() = default;
  Annotation(std::size_t width, std::uint64_t bits);
  /// From a string of '0'/'1' characters, first character = X1.
  static Annotation parse(std::string_view bits);

  std::size_t width() const noexcept { return width_; }
  std::uint64_t bits() const noexcept { return bits_; }
  bool test(std::size_t i) const noexcept { return (bits_ >> i) & 1U; }
  std::size_t count() const noexcept;

  /// First n bits.
  Annotation prefix(std::size_t n) const;
  Annotation with_appended(bool bit) const;

  std::string str() const;
  friend auto operator<=>(const Annotation&, const Annotation&) = default;

 private:
  std::size_t width_ = 0;
  std::uint64_t bits_ = 0;
};

enum class TermKind : std::uint8_t { Leaf, AnnotatedLeaf, Oplus, Add, Relab };

/// Immutable clique-width term over F or F^(m). Subterms are shared, copies
/// are cheap. Add nodes always store their labels with first < second; all
/// leaves of one term have the same annotation width.
class Term {
 public:
  static Term leaf(PortLabel a);
  static Term leaf(PortLabel a, Annotation w);
  static Term oplus(Term left, Term right);
  /// add_{a,b}; arguments are swapped if a > b, a == b is rejected.
  static Term add(PortLabel a, PortLabel b, Term child);
  /// relab_{a->b}
  static Term relab(PortLabel a, PortLabel b, Term child);

  TermKind kind() const noexcept;
  bool is_leaf() const noexcept;
  /// Leaf label, or the first label of Add/Relab.
  PortLabel label() const noexcept;
  /// Second label of Add/Relab (relab target).
  PortLabel second_label() const noexcept;
  const Annotation& annotation() const noexcept;
  std::size_t arity() const noexcept;
  const Term& child(std::size_t i) const;

  /// Number of positions.
  std::size_t size() const noexcept;
  std::size_t leaf_count() const noexcept;
  /// Annotation width m, or nullopt for a term over F.
  std::optional<std::size_t> annotation_width() const noexcept;
  /// Width 0 for terms over F.
  std::size_t vars() const noexcept { return annotation_width().value_or(0); }

  friend bool operator==(const Term& x, const Term& y);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Least k such that all labels are <= k, and the annotation width.
struct TermType {
  std::uint32_t width = 0;
  std::size_t num_vars = 0;
};
TermType term_type(const Term& t);

// Grammar:
//   term := "oplus(" term "," term ")" | "relab(" INT "," INT "," term ")"
//         | "add(" INT "," INT "," term ")" | "port(" INT ")"
//         | "port(" INT ",[" BITS "])"
// Whitespace is ignored; '#' starts a comment running to end of line.
Term parse_term(std::string_view text);
std::string print_term(const Term& t);

/// Subterm at a position; throws InvalidArgument on a dangling path.
const Term& subterm(const Term& t, const Position& pos);
/// Leaf positions, left to right.
std::vector<Position> leaf_positions(const Term& t);
/// Numbers positions from 1 in the order their symbols are written in infix
/// notation: a unary symbol before its argument, oplus between its two.
std::map<Position, std::size_t> infix_numbers(const Term& t);

/// The p-graph val(t); vertices are leaf positions. Annotations are ignored.
PGraph eval_term(const Term& t);
/// val(t) together with the assignment nu(t) encoded by the annotations.
std::pair<PGraph, Assignment> eval_annotated(const Term& t);
/// Inverse of eval_annotated on the assignment: sets bit i of a leaf iff the
/// leaf is in asg[i]. Existing annotations are replaced.
Term annotate(const Term& t, const Assignment& asg);
/// Drops all annotations.
Term strip(const Term& t);

struct IrredundancyReport {
  bool irredundant = true;
  /// First redundant Add in bottom-up order.
  std::optional<Position> offending;
};
/// A term is irredundant when no Add node re-creates an edge already present
/// in the value of its child.
IrredundancyReport check_irredundant(const Term& t);

/// A term together with the map from its leaf positions to the ids of the
/// graph it was generated for.
struct GraphTerm {
  Term term;
  std::map<VertexId, VertexId> renaming;
};

/// Term over |V| labels: one temporary label per vertex, one Add per edge
/// (in `edge_order` if given, else in sorted order), then relabels to the
/// target ports. Always irredundant.
GraphTerm term_from_graph(const PGraph& g);
GraphTerm term_from_graph(const PGraph& g, std::span<const Edge> edge_order);

/// Bounded-width terms for path (3 labels), cycle (4), clique (2) and grid
/// r c (min(r,c)+2 labels); their values equal builtin_graph under the
/// returned renaming.
GraphTerm gen_term(std::string_view family, std::span<const int> params);

}  // namespace flyaut

#endif  // FLYAUT_TERM_HPP
