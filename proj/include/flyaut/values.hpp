#ifndef FLYAUT_VALUES_HPP
#define FLYAUT_VALUES_HPP

#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace flyaut {

/// Arbitrary-precision natural number.
using BigNat = boost::multiprecision::cpp_int;

/// Tuple of set cardinalities (|X1|, ..., |Xs|).
using CardTuple = std::vector<std::uint64_t>;
using TupleSpectrum = std::set<CardTuple>;
using TupleMultiset = std::map<CardTuple, BigNat>;

/// A natural number or infinity.
class Tropical {
 public:
  constexpr Tropical() = default;  // infinity
  constexpr explicit Tropical(std::uint64_t value) : value_(value) {}
  static constexpr Tropical infinity() { return Tropical(); }

  constexpr bool is_infinite() const noexcept { return !value_.has_value(); }
  std::uint64_t value() const { return value_.value(); }

  /// Saturating sum; infinity absorbs.
  friend Tropical operator+(Tropical x, Tropical y) {
    if (x.is_infinite() || y.is_infinite()) return infinity();
    return Tropical(*x.value_ + *y.value_);
  }
  friend Tropical min(Tropical x, Tropical y) { return x <= y ? x : y; }

  friend bool operator==(const Tropical&, const Tropical&) = default;
  friend std::strong_ordering operator<=>(const Tropical& x, const Tropical& y) {
    if (x.is_infinite() || y.is_infinite()) return x.is_infinite() <=> y.is_infinite();
    return *x.value_ <=> *y.value_;
  }

  std::string str() const { return is_infinite() ? "infinity" : std::to_string(*value_); }

 private:
  std::optional<std::uint64_t> value_;
};

// Rendering: tuples "(1,2)", spectra "[(1,1),(1,2)]", multisets
// "[(1,1):6]", counts as decimal strings.
std::string render(const CardTuple& tuple);
std::string render(const TupleSpectrum& spectrum);
std::string render(const TupleMultiset& multiset);
std::string render(const BigNat& n);

}  // namespace flyaut

#endif  // FLYAUT_VALUES_HPP
