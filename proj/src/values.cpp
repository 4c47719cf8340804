#include "flyaut/values.hpp"

namespace flyaut {

std::string render(const CardTuple& tuple) {
  std::string out = "(";
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(tuple[i]);
  }
  return out + ")";
}

std::string render(const TupleSpectrum& spectrum) {
  std::string out = "[";
  bool first = true;
  for (const auto& t : spectrum) {
    if (!first) out += ',';
    first = false;
    out += render(t);
  }
  return out + "]";
}

std::string render(const TupleMultiset& multiset) {
  std::string out = "[";
  bool first = true;
  for (const auto& [t, m] : multiset) {
    if (!first) out += ',';
    first = false;
    out += render(t) + ":" + m.str();
  }
  return out + "]";
}

std::string render(const BigNat& n) { return n.str(); }

}  // namespace flyaut
