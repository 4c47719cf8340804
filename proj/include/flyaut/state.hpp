#ifndef FLYAUT_STATE_HPP
#define FLYAUT_STATE_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "flyaut/pgraph.hpp"

namespace flyaut {

enum class StateKind : std::uint8_t { Atom, Label, Nat, Pair, Set, Map };

namespace detail {
struct StateNode;
}

/// A finitely encoded automaton state: atoms from a finite alphabet, port
/// labels, naturals, pairs, finite sets and finite maps.
///
/// Values are hash-consed: every semantic value has exactly one node, so
/// equality and hashing are O(1). Sets and maps are stored sorted by the
/// structural total order (`<=>`), which makes the encoding canonical.
/// Construction is thread-safe.
class StateValue {
 public:
  /// Atom("Error") by default.
  StateValue();

  static StateValue atom(std::string_view name);
  static StateValue label(PortLabel a);
  static StateValue nat(std::uint64_t n);
  static StateValue pair(const StateValue& first, const StateValue& second);
  /// Sorts and removes duplicates.
  static StateValue set(std::vector<StateValue> elements);
  /// Sorts by key; throws InvalidArgument on a repeated key.
  static StateValue map(std::vector<std::pair<StateValue, StateValue>> entries);

  StateKind kind() const noexcept;
  bool is_atom(std::string_view name) const;
  const std::string& atom_name() const;
  PortLabel as_label() const;
  std::uint64_t as_nat() const;
  const StateValue& first() const;
  const StateValue& second() const;
  /// Set elements, or map entries flattened as key0, value0, key1, ...
  std::span<const StateValue> items() const noexcept;
  /// Number of set elements or map entries.
  std::size_t count() const noexcept;
  std::span<const StateValue> elements() const;
  const StateValue& key(std::size_t i) const;
  const StateValue& value(std::size_t i) const;
  /// Map lookup; nullptr when absent.
  const StateValue* find(const StateValue& key) const;
  bool contains(const StateValue& element) const;

  std::size_t hash() const noexcept;
  /// Identity of the interned node.
  const void* id() const noexcept { return node_.get(); }
  /// Number of nodes in the value, counting shared subvalues repeatedly.
  std::uint64_t weight() const noexcept;

  std::string str() const;

  friend bool operator==(const StateValue& x, const StateValue& y) noexcept { return x.node_ == y.node_; }
  friend std::strong_ordering operator<=>(const StateValue& x, const StateValue& y);

 private:
  explicit StateValue(std::shared_ptr<const detail::StateNode> node) : node_(std::move(node)) {}
  static StateValue intern(std::unique_ptr<detail::StateNode> node);
  std::shared_ptr<const detail::StateNode> node_;
};

/// Every port label occurring anywhere inside q.
std::set<PortLabel> state_port_labels(const StateValue& q);

/// Number of distinct values currently alive (interning table size).
std::size_t interned_state_count();

struct StateHash {
  std::size_t operator()(const StateValue& q) const noexcept { return q.hash(); }
};

/// Sorted, duplicate-free sequence of states.
using StateSet = std::vector<StateValue>;
void normalize(StateSet& states);

}  // namespace flyaut

template <>
struct std::hash<flyaut::StateValue> {
  std::size_t operator()(const flyaut::StateValue& q) const noexcept { return q.hash(); }
};

#endif  // FLYAUT_STATE_HPP
