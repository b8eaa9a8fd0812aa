#include "polyagent/finset.hpp"

#include <algorithm>
#include <unordered_set>

namespace polyagent {

const std::string& FinSet::label(std::size_t i) const {
  if (i >= elements.size()) {
    throw Error("element index " + std::to_string(i) + " out of range for set '" +
                name + "' of size " + std::to_string(elements.size()));
  }
  return elements[i];
}

std::optional<std::size_t> FinSet::find(std::string_view label) const {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i] == label) return i;
  }
  return std::nullopt;
}

std::size_t FinSet::index_of(std::string_view label) const {
  if (auto i = find(label)) return *i;
  throw Error("no element '" + std::string(label) + "' in set '" + name + "'");
}

bool operator==(const FinSet& a, const FinSet& b) {
  return a.elements == b.elements;
}

void validate_finset(const FinSet& s) {
  std::unordered_set<std::string_view> seen;
  for (const auto& e : s.elements) {
    if (!seen.insert(e).second) {
      throw InvariantViolation("set '" + s.name + "' repeats element '" + e + "'");
    }
  }
}

FinSet product(const FinSet& a, const FinSet& b) {
  FinSet out;
  out.name = "(" + a.name + "x" + b.name + ")";
  out.elements.reserve(a.size() * b.size());
  for (const auto& x : a.elements) {
    for (const auto& y : b.elements) {
      out.elements.push_back("(" + x + "," + y + ")");
    }
  }
  return out;
}

FinSet product(const std::string& name, const std::vector<FinSet>& factors) {
  FinSet out;
  out.name = name;
  std::size_t total = 1;
  for (const auto& f : factors) total *= f.size();
  out.elements.reserve(total);
  if (total == 0) return out;
  std::vector<std::size_t> tuple(factors.size(), 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::string label = "(";
    for (std::size_t k = 0; k < factors.size(); ++k) {
      if (k > 0) label += ",";
      label += factors[k].elements[tuple[k]];
    }
    label += ")";
    out.elements.push_back(std::move(label));
    // odometer, last factor fastest
    for (std::size_t k = factors.size(); k-- > 0;) {
      if (++tuple[k] < factors[k].size()) break;
      tuple[k] = 0;
    }
  }
  return out;
}

FinSet range_set(const std::string& name, std::size_t n, const std::string& prefix) {
  FinSet out;
  out.name = name;
  out.elements.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.elements.push_back(prefix + std::to_string(i));
  return out;
}

std::size_t tuple_index(const std::vector<FinSet>& factors,
                        const std::vector<std::size_t>& tuple) {
  std::size_t flat = 0;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    flat = flat * factors[k].size() + tuple[k];
  }
  return flat;
}

std::vector<std::size_t> tuple_of_index(const std::vector<FinSet>& factors,
                                        std::size_t flat) {
  std::vector<std::size_t> tuple(factors.size(), 0);
  for (std::size_t k = factors.size(); k-- > 0;) {
    tuple[k] = flat % factors[k].size();
    flat /= factors[k].size();
  }
  return tuple;
}

}  // namespace polyagent
