#include "flyaut/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "flyaut/error.hpp"

namespace flyaut {

struct Formula::Node {
  FormulaKind kind;
  std::vector<std::string> vars;
  std::uint64_t p = 0;
  std::uint64_t q = 0;
  std::vector<Formula> children;

  Node(FormulaKind k, std::vector<std::string> xs, std::uint64_t p_ = 0, std::uint64_t q_ = 0,
       std::vector<Formula> cs = {})
      : kind(k), vars(std::move(xs)), p(p_), q(q_), children(std::move(cs)) {}
};

namespace {

void check_name(const std::string& x) {
  if (x.empty()) throw InvalidArgument("empty variable name");
}

}  // namespace

Formula Formula::sub(std::string x, std::string y) {
  check_name(x);
  check_name(y);
  return Formula(std::make_shared<const Node>(Node{FormulaKind::Sub, {std::move(x), std::move(y)}}));
}

Formula Formula::sgl(std::string x) {
  check_name(x);
  return Formula(std::make_shared<const Node>(Node{FormulaKind::Sgl, {std::move(x)}}));
}

Formula Formula::edg(std::string x, std::string y) {
  check_name(x);
  check_name(y);
  return Formula(std::make_shared<const Node>(Node{FormulaKind::Edg, {std::move(x), std::move(y)}}));
}

Formula Formula::cardp(std::uint64_t p, std::string x) {
  check_name(x);
  return Formula(std::make_shared<const Node>(Node{FormulaKind::CardP, {std::move(x)}, p}));
}

Formula Formula::cardmod(std::uint64_t p, std::uint64_t q, std::string x) {
  check_name(x);
  if (q < 2 || p >= q) throw InvalidArgument("cardmod needs q >= 2 and 0 <= p < q");
  return Formula(std::make_shared<const Node>(Node{FormulaKind::CardMod, {std::move(x)}, p, q}));
}

Formula Formula::partition(std::vector<std::string> xs) {
  if (xs.empty()) throw InvalidArgument("partition needs at least one set");
  for (const auto& x : xs) check_name(x);
  return Formula(std::make_shared<const Node>(Node{FormulaKind::Partition, std::move(xs)}));
}

Formula Formula::col(std::string x, std::string y) {
  check_name(x);
  check_name(y);
  return Formula(std::make_shared<const Node>(Node{FormulaKind::Col, {std::move(x), std::move(y)}}));
}

Formula Formula::neg(Formula f) {
  return Formula(std::make_shared<const Node>(Node{FormulaKind::Not, {}, 0, 0, {std::move(f)}}));
}

Formula Formula::conj(Formula f, Formula g) {
  return Formula(std::make_shared<const Node>(Node{FormulaKind::And, {}, 0, 0, {std::move(f), std::move(g)}}));
}

Formula Formula::disj(Formula f, Formula g) {
  return Formula(std::make_shared<const Node>(Node{FormulaKind::Or, {}, 0, 0, {std::move(f), std::move(g)}}));
}

Formula Formula::implies(Formula f, Formula g) {
  return Formula(std::make_shared<const Node>(Node{FormulaKind::Implies, {}, 0, 0, {std::move(f), std::move(g)}}));
}

Formula Formula::exists(std::string x, Formula f) {
  check_name(x);
  return Formula(std::make_shared<const Node>(Node{FormulaKind::Exists, {std::move(x)}, 0, 0, {std::move(f)}}));
}

Formula Formula::forall(std::string x, Formula f) {
  check_name(x);
  return Formula(std::make_shared<const Node>(Node{FormulaKind::Forall, {std::move(x)}, 0, 0, {std::move(f)}}));
}

FormulaKind Formula::kind() const noexcept { return node_->kind; }
const std::vector<std::string>& Formula::vars() const noexcept { return node_->vars; }
std::uint64_t Formula::p() const noexcept { return node_->p; }
std::uint64_t Formula::q() const noexcept { return node_->q; }
std::size_t Formula::arity() const noexcept { return node_->children.size(); }

const Formula& Formula::child(std::size_t i) const {
  if (i >= node_->children.size()) throw InvalidArgument("formula child index out of range");
  return node_->children[i];
}

bool operator==(const Formula& f, const Formula& g) {
  if (f.node_ == g.node_) return true;
  return f.node_->kind == g.node_->kind && f.node_->vars == g.node_->vars && f.node_->p == g.node_->p &&
         f.node_->q == g.node_->q && f.node_->children == g.node_->children;
}

std::vector<std::string> free_variables(const Formula& f) {
  std::vector<std::string> out;
  std::vector<std::string> bound;
  std::function<void(const Formula&)> visit = [&](const Formula& g) {
    switch (g.kind()) {
      case FormulaKind::Exists:
      case FormulaKind::Forall:
        bound.push_back(g.vars()[0]);
        visit(g.child(0));
        bound.pop_back();
        return;
      case FormulaKind::Not:
      case FormulaKind::And:
      case FormulaKind::Or:
      case FormulaKind::Implies:
        for (std::size_t i = 0; i < g.arity(); ++i) visit(g.child(i));
        return;
      default:
        for (const auto& x : g.vars())
          if (std::find(bound.begin(), bound.end(), x) == bound.end() &&
              std::find(out.begin(), out.end(), x) == out.end())
            out.push_back(x);
    }
  };
  visit(f);
  return out;
}

std::size_t quantifier_depth(const Formula& f) {
  std::size_t depth = 0;
  for (std::size_t i = 0; i < f.arity(); ++i) depth = std::max(depth, quantifier_depth(f.child(i)));
  if (f.kind() == FormulaKind::Exists || f.kind() == FormulaKind::Forall) ++depth;
  return depth;
}

namespace {

/// A bound-variable name that differs from every name in `avoid`.
std::string fresh(std::string base, const std::vector<std::string>& avoid) {
  while (std::find(avoid.begin(), avoid.end(), base) != avoid.end()) base += '_';
  return base;
}

Formula expand_col(const std::string& x, const std::string& y) {
  using F = Formula;
  const std::vector<std::string> args{x, y};
  const std::string z = fresh("Z_", args), u = fresh("U_", args), v = fresh("V_", args);
  // X and Y are disjoint: no singleton lies in both.
  F disjoint = F::forall(z, F::implies(F::conj(F::sgl(z), F::sub(z, x)), F::neg(F::sub(z, y))));
  // No edge inside X, inside Y, or inside the complement of X u Y.
  F both_x = F::conj(F::sub(u, x), F::sub(v, x));
  F both_y = F::conj(F::sub(u, y), F::sub(v, y));
  F both_rest = F::conj(F::conj(F::neg(F::sub(u, x)), F::neg(F::sub(u, y))),
                        F::conj(F::neg(F::sub(v, x)), F::neg(F::sub(v, y))));
  F proper = F::forall(
      u, F::forall(v, F::implies(F::edg(u, v),
                                 F::conj(F::neg(both_x), F::conj(F::neg(both_y), F::neg(both_rest))))));
  return F::conj(disjoint, proper);
}

}  // namespace

Formula expand_macros(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Col:
      return expand_col(f.vars()[0], f.vars()[1]);
    case FormulaKind::Not:
      return Formula::neg(expand_macros(f.child(0)));
    case FormulaKind::And:
      return Formula::conj(expand_macros(f.child(0)), expand_macros(f.child(1)));
    case FormulaKind::Or:
      return Formula::disj(expand_macros(f.child(0)), expand_macros(f.child(1)));
    case FormulaKind::Implies:
      return Formula::implies(expand_macros(f.child(0)), expand_macros(f.child(1)));
    case FormulaKind::Exists:
      return Formula::exists(f.vars()[0], expand_macros(f.child(0)));
    case FormulaKind::Forall:
      return Formula::forall(f.vars()[0], expand_macros(f.child(0)));
    default:
      return f;
  }
}

// -------------------------------------------------------------------- parser

namespace {

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : text_(text) {}

  Formula parse() {
    Formula f = formula();
    skip();
    if (pos_ != text_.size()) fail("trailing input after formula");
    return f;
  }

  [[noreturn]] void fail(const std::string& what) const { fail_at(pos_, what); }

  [[noreturn]] void fail_at(std::size_t at, const std::string& what) const {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(what, line, column);
  }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      if (text_[pos_] == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
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

  bool at_close() {
    skip();
    return pos_ < text_.size() && text_[pos_] == ')';
  }

  std::string token() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const auto c = static_cast<unsigned char>(text_[pos_]);
      if (!std::isalnum(c) && c != '_') break;
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string variable() {
    skip();
    const std::size_t start = pos_;
    std::string name = token();
    if (name.empty()) fail("expected a variable");
    if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_')
      fail_at(start, "variables start with a letter or '_'");
    return name;
  }

  std::uint64_t natural() {
    skip();
    const std::size_t start = pos_;
    std::string digits = token();
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      fail_at(start, "expected a natural number");
    if (digits.size() > 18) fail_at(start, "number too large");
    return std::stoull(digits);
  }

  Formula formula() {
    expect('(');
    skip();
    const std::size_t start = pos_;
    const std::string op = token();
    Formula out = [&] {
      if (op == "sub") {
        auto x = variable();
        return Formula::sub(x, variable());
      }
      if (op == "sgl") return Formula::sgl(variable());
      if (op == "edg") {
        auto x = variable();
        return Formula::edg(x, variable());
      }
      if (op == "col") {
        auto x = variable();
        return Formula::col(x, variable());
      }
      if (op == "3colorable") return Formula::exists("X", Formula::exists("Y", Formula::col("X", "Y")));
      if (op == "cardp") {
        auto p = natural();
        return Formula::cardp(p, variable());
      }
      if (op == "cardmod") {
        const std::size_t at = (skip(), pos_);
        auto p = natural();
        auto q = natural();
        if (q < 2 || p >= q) fail_at(at, "cardmod needs q >= 2 and 0 <= p < q");
        return Formula::cardmod(p, q, variable());
      }
      if (op == "partition") {
        std::vector<std::string> xs{variable()};
        while (!at_close()) xs.push_back(variable());
        return Formula::partition(std::move(xs));
      }
      if (op == "not") return Formula::neg(formula());
      if (op == "and" || op == "or" || op == "implies") {
        Formula f = formula();
        Formula g = formula();
        if (op == "and") return Formula::conj(std::move(f), std::move(g));
        if (op == "or") return Formula::disj(std::move(f), std::move(g));
        return Formula::implies(std::move(f), std::move(g));
      }
      if (op == "exists" || op == "forall") {
        auto x = variable();
        Formula f = formula();
        return op == "exists" ? Formula::exists(std::move(x), std::move(f))
                              : Formula::forall(std::move(x), std::move(f));
      }
      fail_at(start, op.empty() ? "expected an operator" : "unknown operator '" + op + "'");
    }();
    expect(')');
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text, std::optional<std::vector<std::string>> context) {
  FormulaParser parser(text);
  Formula f = parser.parse();
  if (context) {
    for (const auto& x : free_variables(f))
      if (std::find(context->begin(), context->end(), x) == context->end())
        throw ParseError("unbound variable '" + x + "'", 1, 1);
  }
  return f;
}

std::string print_formula(const Formula& f) {
  auto vars = [&] {
    std::string out;
    for (const auto& x : f.vars()) out += " " + x;
    return out;
  };
  switch (f.kind()) {
    case FormulaKind::Sub:
      return "(sub" + vars() + ")";
    case FormulaKind::Sgl:
      return "(sgl" + vars() + ")";
    case FormulaKind::Edg:
      return "(edg" + vars() + ")";
    case FormulaKind::Col:
      return "(col" + vars() + ")";
    case FormulaKind::CardP:
      return "(cardp " + std::to_string(f.p()) + vars() + ")";
    case FormulaKind::CardMod:
      return "(cardmod " + std::to_string(f.p()) + " " + std::to_string(f.q()) + vars() + ")";
    case FormulaKind::Partition:
      return "(partition" + vars() + ")";
    case FormulaKind::Not:
      return "(not " + print_formula(f.child(0)) + ")";
    case FormulaKind::And:
      return "(and " + print_formula(f.child(0)) + " " + print_formula(f.child(1)) + ")";
    case FormulaKind::Or:
      return "(or " + print_formula(f.child(0)) + " " + print_formula(f.child(1)) + ")";
    case FormulaKind::Implies:
      return "(implies " + print_formula(f.child(0)) + " " + print_formula(f.child(1)) + ")";
    case FormulaKind::Exists:
      return "(exists " + f.vars()[0] + " " + print_formula(f.child(0)) + ")";
    case FormulaKind::Forall:
      return "(forall " + f.vars()[0] + " " + print_formula(f.child(0)) + ")";
  }
  return {};
}

}  // namespace flyaut
