#pragma once

#include <cstddef>
#include <vector>

#include "polyagent/finset.hpp"

namespace polyagent {

// A finite polynomial functor: a carrier of positions, each with its own
// carrier of directions. Read as an interface: positions are the outputs a
// system can show, directions the inputs valid at that output.
struct Polynomial {
  FinSet positions;
  std::vector<FinSet> directions;  // one per position, possibly empty

  std::size_t num_positions() const { return positions.size(); }
  const FinSet& dir(std::size_t i) const;

  // True when every position carries the same direction labels.
  bool is_monomial() const;

  // Total size of the flattened dependent sum of directions.
  std::size_t total_directions() const;
};

// Label-wise structural equality (position labels and, per position,
// direction labels).
bool operator==(const Polynomial& a, const Polynomial& b);
inline bool operator!=(const Polynomial& a, const Polynomial& b) {
  return !(a == b);
}

// Throws InvariantViolation on malformed data (duplicate labels, missing
// direction carriers).
void validate_poly(const Polynomial& p);

// The monomial O y^I: positions O, direction carrier I at every position.
Polynomial monomial(FinSet positions, FinSet directions);

// The unit interface y: one position "*", one direction "*".
Polynomial trivial_interface();

// Parallel tensor: positions p(1)xq(1) and directions p[i]xq[j], both in
// lexicographic order with the left factor major.
Polynomial tensor(const Polynomial& p, const Polynomial& q);

// The set of p-terms with inputs in X: pairs (i, f) of a position and a
// total map f: p[i] -> X, labelled "i(f(d0),...)". Position-major,
// then maps in mixed-radix order (last direction fastest).
FinSet poly_apply(const Polynomial& p, const FinSet& x);

}  // namespace polyagent
