#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "polyagent/lens.hpp"

namespace polyagent {

// A finite category presented by explicit tables. Composition is stored
// diagrammatically: then_table[f][g] is "f then g", defined exactly when
// cod(f) == dom(g).
struct FinCategory {
  static constexpr std::size_t kUndefined = static_cast<std::size_t>(-1);

  struct Morphism {
    std::string label;
    std::size_t dom;
    std::size_t cod;
  };

  FinSet objects;
  std::vector<Morphism> morphisms;
  std::vector<std::size_t> identities;            // per object, into morphisms
  std::vector<std::vector<std::size_t>> then_table;  // kUndefined off-domain

  std::size_t morphism_index(const std::string& label) const;  // UnknownMorphism
};

// Exhaustively checks identities, closure, unit and associativity laws.
// Throws InvalidCategory with the offending cell.
void validate_category(const FinCategory& c);

// The polynomial whose positions are the objects and whose directions at x
// are the morphisms out of x (identity included), in declaration order.
// Throws InvalidCategory when the law checks fail.
Polynomial category_to_poly(const FinCategory& c);

// True iff the labelled morphisms form a composable path (cod of each is
// the dom of the next). The empty sequence is composable.
bool check_policy_composable(const FinCategory& c,
                             const std::vector<std::string>& labels);

}  // namespace polyagent
