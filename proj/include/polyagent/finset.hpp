#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polyagent/errors.hpp"

namespace polyagent {

// A named finite carrier with a stable, canonical element order.
// Every matrix layout, product and flattened dependent sum in the library
// refers to this order; index 0..n-1 is the identity of an element.
struct FinSet {
  std::string name;
  std::vector<std::string> elements;

  std::size_t size() const { return elements.size(); }
  bool empty() const { return elements.empty(); }

  const std::string& label(std::size_t i) const;
  std::optional<std::size_t> find(std::string_view label) const;
  // Throws Error when the label is absent.
  std::size_t index_of(std::string_view label) const;
};

// Equality of carriers ignores the name: two FinSets are equal when they
// list the same labels in the same order.
bool operator==(const FinSet& a, const FinSet& b);
inline bool operator!=(const FinSet& a, const FinSet& b) { return !(a == b); }

// Throws InvariantViolation unless element labels are pairwise distinct.
void validate_finset(const FinSet& s);

// Cartesian product, lexicographic with `a` as the major index.
// Labels are rendered "(x,y)".
FinSet product(const FinSet& a, const FinSet& b);

// n-ary product, lexicographic with factors[0] as the most significant
// index. Labels are rendered "(x,y,...,z)".
FinSet product(const std::string& name, const std::vector<FinSet>& factors);

// {name}0 .. {name}{n-1}, a convenience for generated carriers.
FinSet range_set(const std::string& name, std::size_t n,
                 const std::string& prefix);

// Flat index of a tuple in the n-ary product layout.
std::size_t tuple_index(const std::vector<FinSet>& factors,
                        const std::vector<std::size_t>& tuple);

// Inverse of tuple_index.
std::vector<std::size_t> tuple_of_index(const std::vector<FinSet>& factors,
                                        std::size_t flat);

}  // namespace polyagent
