#include "flyaut/state.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

#include "flyaut/error.hpp"

namespace flyaut {

namespace detail {

struct StateNode : std::enable_shared_from_this<StateNode> {
  StateKind kind = StateKind::Atom;
  std::uint64_t scalar = 0;  // label value, natural, or atom id
  std::vector<StateValue> items;
  std::size_t hash = 0;
  std::uint64_t weight = 1;
  const std::string* name = nullptr;  // atoms only; names are never freed
};

}  // namespace detail

namespace {

using detail::StateNode;

struct ShallowHash {
  std::size_t operator()(const StateNode* n) const noexcept { return n->hash; }
};

struct ShallowEq {
  bool operator()(const StateNode* x, const StateNode* y) const noexcept {
    return x->kind == y->kind && x->scalar == y->scalar && x->items == y->items;
  }
};

struct Interner {
  std::mutex mutex;
  std::unordered_set<StateNode*, ShallowHash, ShallowEq> table;
  std::deque<std::string> atom_names;
  std::unordered_map<std::string, std::uint64_t> atom_ids;
};

// Never destroyed: values may outlive static destruction order.
Interner& interner() {
  static auto* instance = new Interner;
  return *instance;
}

struct NodeDeleter {
  void operator()(StateNode* node) const {
    {
      auto& in = interner();
      std::lock_guard lock(in.mutex);
      auto it = in.table.find(node);
      if (it != in.table.end() && *it == node) in.table.erase(it);
    }
    delete node;
  }
};

std::size_t mix(std::size_t seed, std::size_t value) noexcept {
  // boost::hash_combine with a 64-bit constant
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 12) + (seed >> 4));
}

std::strong_ordering compare(const StateValue& x, const StateValue& y);

std::strong_ordering compare_items(std::span<const StateValue> xs, std::span<const StateValue> ys) {
  const std::size_t n = std::min(xs.size(), ys.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (xs[i] == ys[i]) continue;
    return compare(xs[i], ys[i]);
  }
  return xs.size() <=> ys.size();
}

std::strong_ordering compare(const StateValue& x, const StateValue& y) {
  if (x == y) return std::strong_ordering::equal;
  if (x.kind() != y.kind()) return x.kind() <=> y.kind();
  switch (x.kind()) {
    case StateKind::Atom: {
      const int c = x.atom_name().compare(y.atom_name());
      return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }
    case StateKind::Label:
      return x.as_label() <=> y.as_label();
    case StateKind::Nat:
      return x.as_nat() <=> y.as_nat();
    default:
      return compare_items(x.items(), y.items());
  }
}

}  // namespace

StateValue StateValue::intern(std::unique_ptr<StateNode> node) {
  std::size_t h = mix(static_cast<std::size_t>(node->kind) + 1, node->scalar);
  std::uint64_t weight = 1;
  for (const auto& item : node->items) {
    h = mix(h, item.hash());
    weight += item.weight();
  }
  if (node->kind == StateKind::Atom) h = mix(h, std::hash<std::string>{}(*node->name));
  node->hash = h;
  node->weight = weight;

  auto& in = interner();
  std::lock_guard lock(in.mutex);
  auto it = in.table.find(node.get());
  if (it != in.table.end()) {
    if (auto existing = (*it)->weak_from_this().lock()) return StateValue(std::move(existing));
    // The existing node is being destroyed; its deleter will not erase us.
    in.table.erase(it);
  }
  StateNode* raw = node.release();
  in.table.insert(raw);
  return StateValue(std::shared_ptr<const StateNode>(raw, NodeDeleter{}));
}

StateValue::StateValue() : StateValue(atom("Error")) {}

StateValue StateValue::atom(std::string_view name) {
  auto node = std::make_unique<StateNode>();
  node->kind = StateKind::Atom;
  {
    auto& in = interner();
    std::lock_guard lock(in.mutex);
    auto [it, inserted] = in.atom_ids.emplace(std::string(name), in.atom_names.size());
    if (inserted) in.atom_names.emplace_back(name);
    node->scalar = it->second;
    node->name = &in.atom_names[it->second];
  }
  return intern(std::move(node));
}

StateValue StateValue::label(PortLabel a) {
  auto node = std::make_unique<StateNode>();
  node->kind = StateKind::Label;
  node->scalar = a.value();
  return intern(std::move(node));
}

StateValue StateValue::nat(std::uint64_t n) {
  auto node = std::make_unique<StateNode>();
  node->kind = StateKind::Nat;
  node->scalar = n;
  return intern(std::move(node));
}

StateValue StateValue::pair(const StateValue& first, const StateValue& second) {
  auto node = std::make_unique<StateNode>();
  node->kind = StateKind::Pair;
  node->items = {first, second};
  return intern(std::move(node));
}

StateValue StateValue::set(std::vector<StateValue> elements) {
  normalize(elements);
  auto node = std::make_unique<StateNode>();
  node->kind = StateKind::Set;
  node->items = std::move(elements);
  return intern(std::move(node));
}

StateValue StateValue::map(std::vector<std::pair<StateValue, StateValue>> entries) {
  std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) { return compare(x.first, y.first) < 0; });
  auto node = std::make_unique<StateNode>();
  node->kind = StateKind::Map;
  node->items.reserve(2 * entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i > 0 && entries[i].first == node->items[node->items.size() - 2])
      throw InvalidArgument("finite map with repeated key " + entries[i].first.str());
    node->items.push_back(std::move(entries[i].first));
    node->items.push_back(std::move(entries[i].second));
  }
  return intern(std::move(node));
}

StateKind StateValue::kind() const noexcept { return node_->kind; }

bool StateValue::is_atom(std::string_view name) const {
  return node_->kind == StateKind::Atom && atom_name() == name;
}

const std::string& StateValue::atom_name() const {
  if (node_->kind != StateKind::Atom) throw InvalidArgument("state is not an atom: " + str());
  return *node_->name;
}

PortLabel StateValue::as_label() const {
  if (node_->kind != StateKind::Label) throw InvalidArgument("state is not a label: " + str());
  return PortLabel(static_cast<std::uint32_t>(node_->scalar));
}

std::uint64_t StateValue::as_nat() const {
  if (node_->kind != StateKind::Nat) throw InvalidArgument("state is not a natural: " + str());
  return node_->scalar;
}

const StateValue& StateValue::first() const {
  if (node_->kind != StateKind::Pair) throw InvalidArgument("state is not a pair: " + str());
  return node_->items[0];
}

const StateValue& StateValue::second() const {
  if (node_->kind != StateKind::Pair) throw InvalidArgument("state is not a pair: " + str());
  return node_->items[1];
}

std::span<const StateValue> StateValue::items() const noexcept { return node_->items; }

std::size_t StateValue::count() const noexcept {
  return node_->kind == StateKind::Map ? node_->items.size() / 2 : node_->items.size();
}

std::span<const StateValue> StateValue::elements() const {
  if (node_->kind != StateKind::Set) throw InvalidArgument("state is not a set: " + str());
  return node_->items;
}

const StateValue& StateValue::key(std::size_t i) const {
  if (node_->kind != StateKind::Map) throw InvalidArgument("state is not a map: " + str());
  return node_->items.at(2 * i);
}

const StateValue& StateValue::value(std::size_t i) const {
  if (node_->kind != StateKind::Map) throw InvalidArgument("state is not a map: " + str());
  return node_->items.at(2 * i + 1);
}

const StateValue* StateValue::find(const StateValue& key) const {
  if (node_->kind != StateKind::Map) throw InvalidArgument("state is not a map: " + str());
  std::size_t lo = 0, hi = count();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    const auto c = compare(node_->items[2 * mid], key);
    if (c == 0) return &node_->items[2 * mid + 1];
    if (c < 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  return nullptr;
}

bool StateValue::contains(const StateValue& element) const {
  const auto elems = elements();
  return std::binary_search(elems.begin(), elems.end(), element,
                            [](const StateValue& x, const StateValue& y) { return compare(x, y) < 0; });
}

std::size_t StateValue::hash() const noexcept { return node_->hash; }
std::uint64_t StateValue::weight() const noexcept { return node_->weight; }

std::string StateValue::str() const {
  switch (kind()) {
    case StateKind::Atom:
      return atom_name();
    case StateKind::Label:
    case StateKind::Nat:
      return std::to_string(node_->scalar);
    case StateKind::Pair:
      return "(" + first().str() + "," + second().str() + ")";
    case StateKind::Set: {
      std::string out = "{";
      for (std::size_t i = 0; i < node_->items.size(); ++i) out += (i ? "," : "") + node_->items[i].str();
      return out + "}";
    }
    case StateKind::Map: {
      std::string out = "{";
      for (std::size_t i = 0; i < count(); ++i) out += (i ? "," : "") + key(i).str() + "->" + value(i).str();
      return out + "}";
    }
  }
  return {};
}

std::strong_ordering operator<=>(const StateValue& x, const StateValue& y) { return compare(x, y); }

std::set<PortLabel> state_port_labels(const StateValue& q) {
  std::set<PortLabel> out;
  std::unordered_set<const void*> seen;
  std::vector<StateValue> stack{q};
  while (!stack.empty()) {
    StateValue cur = std::move(stack.back());
    stack.pop_back();
    if (!seen.insert(cur.id()).second) continue;
    if (cur.kind() == StateKind::Label) out.insert(cur.as_label());
    for (const auto& item : cur.items()) stack.push_back(item);
  }
  return out;
}

std::size_t interned_state_count() {
  auto& in = interner();
  std::lock_guard lock(in.mutex);
  return in.table.size();
}

void normalize(StateSet& states) {
  std::sort(states.begin(), states.end(), [](const StateValue& x, const StateValue& y) { return compare(x, y) < 0; });
  states.erase(std::unique(states.begin(), states.end()), states.end());
}

}  // namespace flyaut
