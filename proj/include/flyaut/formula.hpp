#ifndef FLYAUT_FORMULA_HPP
#define FLYAUT_FORMULA_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace flyaut {

enum class FormulaKind : std::uint8_t {
  Sub,        // X ⊆ Y
  Sgl,        // X is a singleton
  Edg,        // X = {u}, Y = {v}, u adjacent to v
  CardP,      // |X| = p
  CardMod,    // |X| = p mod q
  Partition,  // every vertex lies in exactly one listed set
  Col,        // (X, Y, V - X - Y) are the colour classes of a proper 3-colouring
  Not,
  And,
  Or,
  Implies,
  Exists,
  Forall,
};

/// MSO formula over set variables. Variables are names; the compiler maps
/// them to bit positions. Col is a derived form: it has direct semantics in
/// the oracle and compiles through expand_macros.
class Formula {
 public:
  static Formula sub(std::string x, std::string y);
  static Formula sgl(std::string x);
  static Formula edg(std::string x, std::string y);
  static Formula cardp(std::uint64_t p, std::string x);
  /// Requires q >= 2 and p < q.
  static Formula cardmod(std::uint64_t p, std::uint64_t q, std::string x);
  static Formula partition(std::vector<std::string> xs);
  static Formula col(std::string x, std::string y);
  static Formula neg(Formula f);
  static Formula conj(Formula f, Formula g);
  static Formula disj(Formula f, Formula g);
  static Formula implies(Formula f, Formula g);
  static Formula exists(std::string x, Formula f);
  static Formula forall(std::string x, Formula f);

  FormulaKind kind() const noexcept;
  /// Variables of an atomic formula, or the bound variable of a quantifier.
  const std::vector<std::string>& vars() const noexcept;
  std::uint64_t p() const noexcept;
  std::uint64_t q() const noexcept;
  std::size_t arity() const noexcept;
  const Formula& child(std::size_t i) const;

  friend bool operator==(const Formula& f, const Formula& g);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Free variables in order of first occurrence.
std::vector<std::string> free_variables(const Formula& f);
/// Maximal nesting of quantifiers.
std::size_t quantifier_depth(const Formula& f);

/// Rewrites Col (and nothing else) into sub/sgl/edg with quantifiers.
Formula expand_macros(const Formula& f);

/// Prefix syntax:
///   f := (sub V V) | (sgl V) | (edg V V) | (cardp NAT V) | (cardmod NAT NAT V)
///      | (partition V+) | (col V V) | (3colorable) | (not f) | (and f f)
///      | (or f f) | (implies f f) | (exists V f) | (forall V f)
/// `#` starts a comment. (3colorable) reads as (exists X (exists Y (col X Y))).
/// With `context`, every free variable must be listed there.
Formula parse_formula(std::string_view text, std::optional<std::vector<std::string>> context = std::nullopt);
std::string print_formula(const Formula& f);

}  // namespace flyaut

#endif  // FLYAUT_FORMULA_HPP
