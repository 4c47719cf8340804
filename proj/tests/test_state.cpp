#include "doctest.h"

#include "flyaut/error.hpp"
#include "flyaut/state.hpp"

using namespace flyaut;

namespace {

StateValue lc(std::uint32_t a, std::uint64_t colour) {
  return StateValue::pair(StateValue::label(PortLabel(a)), StateValue::nat(colour));
}

}  // namespace

TEST_CASE("values are interned") {
  CHECK(StateValue::atom("Ok") == StateValue::atom("Ok"));
  CHECK(StateValue::atom("Ok").id() == StateValue::atom("Ok").id());
  CHECK(StateValue::atom("Ok") != StateValue::atom("Error"));
  CHECK(StateValue() == StateValue::atom("Error"));
  CHECK(StateValue::set({lc(1, 1), lc(2, 3)}) == StateValue::set({lc(2, 3), lc(1, 1), lc(2, 3)}));
  CHECK(StateValue::set({lc(1, 1), lc(2, 3)}).count() == 2);
  CHECK(StateValue::nat(3).hash() == StateValue::nat(3).hash());
  CHECK(StateValue::nat(3) != StateValue::label(PortLabel(3)));
}

TEST_CASE("accessors") {
  const StateValue p = lc(4, 2);
  CHECK(p.kind() == StateKind::Pair);
  CHECK(p.first().as_label() == PortLabel(4));
  CHECK(p.second().as_nat() == 2);
  CHECK_THROWS_AS(p.as_nat(), InvalidArgument);

  const StateValue m = StateValue::map({{StateValue::nat(2), StateValue::atom("b")}, {StateValue::nat(1), StateValue::atom("a")}});
  CHECK(m.count() == 2);
  CHECK(m.key(0) == StateValue::nat(1));
  CHECK(*m.find(StateValue::nat(2)) == StateValue::atom("b"));
  CHECK(m.find(StateValue::nat(3)) == nullptr);
  CHECK_THROWS_AS(StateValue::map({{StateValue::nat(1), StateValue::nat(1)}, {StateValue::nat(1), StateValue::nat(2)}}),
                  InvalidArgument);

  const StateValue s = StateValue::set({lc(1, 1)});
  CHECK(s.contains(lc(1, 1)));
  CHECK_FALSE(s.contains(lc(1, 2)));
}

TEST_CASE("total order is structural and strict") {
  std::vector<StateValue> values = {StateValue::atom("Error"), StateValue::atom("Ok"), StateValue::nat(0),
                                    StateValue::nat(7), StateValue::label(PortLabel(1)), lc(1, 1), lc(1, 2),
                                    StateValue::set({}), StateValue::set({lc(1, 1)}), StateValue::map({})};
  for (const auto& x : values)
    for (const auto& y : values) {
      CHECK(((x <=> y) == 0) == (x == y));
      CHECK(((x <=> y) < 0) == ((y <=> x) > 0));
    }
  CHECK(StateValue::nat(1) < StateValue::nat(2));
}

TEST_CASE("embedded port labels") {
  CHECK(state_port_labels(StateValue::set({lc(1, 1), lc(2, 3)})) == std::set<PortLabel>{PortLabel(1), PortLabel(2)});
  CHECK(state_port_labels(StateValue::atom("Error")).empty());
  CHECK(state_port_labels(StateValue::nat(5)).empty());
  const StateValue nested = StateValue::map({{StateValue::label(PortLabel(7)), StateValue::set({lc(3, 1)})}});
  CHECK(state_port_labels(nested) == std::set<PortLabel>{PortLabel(3), PortLabel(7)});
}

TEST_CASE("rendering") {
  CHECK(StateValue::atom("Ok").str() == "Ok");
  CHECK(StateValue::nat(4).str() == "4");
  CHECK_FALSE(StateValue::set({lc(1, 1), lc(2, 3)}).str().empty());
  StateSet states{StateValue::nat(2), StateValue::nat(1), StateValue::nat(2)};
  normalize(states);
  CHECK(states == StateSet{StateValue::nat(1), StateValue::nat(2)});
}
