#ifndef FLYAUT_MSO_HPP
#define FLYAUT_MSO_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "flyaut/automaton.hpp"
#include "flyaut/formula.hpp"
#include "flyaut/values.hpp"

namespace flyaut {

/// A deterministic automaton over F^(m) together with the variable read by
/// each annotation bit: bit i holds vars[i].
struct CompiledAutomaton {
  Dfa dfa;
  std::vector<std::string> vars;
};

// Atomic automata over F^(m). Variable indices are 1-based.

/// X_i ⊆ X_j. States Ok, Error.
Dfa atomic_sub(std::size_t i, std::size_t j, std::size_t m);
/// X_i is a singleton. States Zero, One, Many.
Dfa atomic_sgl(std::size_t i, std::size_t m);
/// X_i = {u}, X_j = {v} with u and v adjacent; requires i != j.
/// States Empty, Error, Ok, (a,_1), (a,_2), (a,b).
Dfa atomic_edg(std::size_t i, std::size_t j, std::size_t m);
/// |X_i| = p. Counts saturate at p+1.
Dfa atomic_cardp(std::uint64_t p, std::size_t i, std::size_t m);
/// |X_i| = p mod q; requires q >= 2 and p < q.
Dfa atomic_cardmod(std::uint64_t p, std::uint64_t q, std::size_t i, std::size_t m);
/// The listed (distinct) sets partition the vertex set.
Dfa atomic_partition(std::span<const std::size_t> indices, std::size_t m);
/// Col(X_i, X_j): X_i, X_j and the remaining vertices are the colour
/// classes 1, 2, 3 of a proper colouring. States are Error and the sets of
/// (port label, colour) pairs present.
Dfa atomic_col(std::size_t i, std::size_t j, std::size_t m);

struct CompileOptions {
  /// Compile Col through expand_macros instead of atomic_col.
  bool expand_col = false;
};

/// Automaton for phi over its free variables in first-occurrence order.
CompiledAutomaton compile(const Formula& phi, CompileOptions options = {});
/// Automaton for phi over the given context; every free variable of phi
/// must be listed. Repeated names resolve to their last occurrence.
CompiledAutomaton compile(const Formula& phi, std::vector<std::string> context, CompileOptions options = {});

// Reference automata for 3-colouring. Colours 1, 2, 3 are X, Y and the
// remaining vertices; states are sets of (port label, colour) pairs.

/// Deterministic automaton for Col(X,Y) over F^(2), that is
/// atomic_col(1, 2, 2); every state except Error accepts.
Dfa handbuilt_col3();
/// Its projection over F: Error and its rules removed, a leaf guesses a
/// colour. Every state accepts.
Nfa handbuilt_col3_proj();
/// Col(X,Y) over F^(2) with states (alpha, |X|) and Error.
Dfa handbuilt_col3_card();
/// Over F: states map each reachable colouring type to the least |X|
/// realizing it; the output is the least value, or infinity when empty.
OutputDfa<Tropical> handbuilt_col3_min();

}  // namespace flyaut

#endif  // FLYAUT_MSO_HPP
