#ifndef FLYAUT_ORACLE_HPP
#define FLYAUT_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flyaut/formula.hpp"
#include "flyaut/pgraph.hpp"
#include "flyaut/values.hpp"

namespace flyaut {

// Ground truth by exhaustive enumeration. These functions never touch
// terms or automata.

/// Default enumeration budget: 2^24 assignments.
inline constexpr std::uint64_t kDefaultGuard = std::uint64_t{1} << 24;

/// Truth of phi in (g, asg), where asg[i] interprets context[i]. Without a
/// context, the free variables of phi in first-occurrence order are used.
/// Quantifiers try all 2^|V| subsets; throws GuardExceeded when
/// 2^(|V| * quantifier depth) exceeds `guard`.
bool oracle_mso_eval(const PGraph& g, const Formula& phi, const Assignment& asg,
                     const std::optional<std::vector<std::string>>& context = std::nullopt,
                     std::uint64_t guard = kDefaultGuard);

/// Multiset of (|X1|, ..., |Xs|) over all satisfying assignments of the
/// context variables (s = context size).
TupleMultiset oracle_multispectrum(const PGraph& g, const Formula& phi,
                                   const std::optional<std::vector<std::string>>& context = std::nullopt,
                                   std::uint64_t guard = kDefaultGuard);

// Views of a multispectrum.
BigNat multiset_size(const TupleMultiset& ms);
TupleSpectrum multiset_support(const TupleMultiset& ms);
/// Least first coordinate (0 for the empty tuple); infinity when empty.
Tropical multiset_min_first(const TupleMultiset& ms);

/// Number of proper k-colourings. Paths and cycles use their closed forms;
/// other graphs are enumerated by backtracking (refused when k^|V| > guard).
BigNat oracle_count_colorings(const PGraph& g, std::uint32_t k, std::uint64_t guard = kDefaultGuard);

}  // namespace flyaut

#endif  // FLYAUT_ORACLE_HPP
