#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "polyagent/poly.hpp"

namespace polyagent {

// A dependent lens between polynomial interfaces: a forward map on
// positions and, per dom position, a backward map on directions running
// against the forward direction. Backward tables are indexed by the
// codomain's directions at the forwarded position.
struct Lens {
  Polynomial dom;
  Polynomial cod;
  std::vector<std::size_t> fwd;               // dom position -> cod position
  std::vector<std::vector<std::size_t>> bwd;  // bwd[i][k] in dom.dir(i),
                                              // k over cod.dir(fwd[i])
};

// Extensional equality: same endpoints, same tables.
bool operator==(const Lens& a, const Lens& b);
inline bool operator!=(const Lens& a, const Lens& b) { return !(a == b); }

// Throws InvariantViolation unless every table is total and in range.
void validate_lens(const Lens& l);

Lens lens_identity(const Polynomial& p);

// Diagrammatic composition: f: p -> q, then g: q -> r.
// Throws InterfaceMismatch unless f.cod == g.dom structurally.
Lens lens_compose(const Lens& f, const Lens& g);

// Parallel product of lenses under the lexicographic tensor layout.
Lens tensor(const Lens& f, const Lens& g);

// The canonical symmetry p (x) q -> q (x) p.
Lens swap_lens(const Polynomial& p, const Polynomial& q);

// An isomorphism witness: an invertible lens together with its inverse.
struct PolyIso {
  Lens fwd;  // p -> q
  Lens inv;  // q -> p
};

// Searches for an isomorphism p ~= q (a position bijection preserving
// direction counts, with per-position direction bijections). Labels are
// ignored; the witness uses index-order bijections within matched
// positions. Returns nullopt when the shapes differ.
std::optional<PolyIso> find_isomorphism(const Polynomial& p,
                                        const Polynomial& q);

}  // namespace polyagent
