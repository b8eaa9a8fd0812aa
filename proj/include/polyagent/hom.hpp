#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "polyagent/lens.hpp"

namespace polyagent {

// Enumerations refuse to run past this many results unless overridden.
inline constexpr std::size_t kDefaultSizeGuard = 1'000'000;

// Exact number of lenses p -> q, or nullopt when it does not fit in 64
// bits. Closed form: product over dom positions of
// sum over cod positions of |p[i]|^|q[j]|, with 0^0 = 1.
std::optional<std::uint64_t> lens_count(const Polynomial& p,
                                        const Polynomial& q);

// Every lens p -> q exactly once, in canonical order: forward tables in
// mixed-radix order over dom positions (last position fastest), then for
// each forward table the backward tables in mixed-radix order over the
// flattened (position, cod-direction) digits. Throws SizeGuardExceeded
// with the computed cardinality when the count exceeds the guard.
std::vector<Lens> enumerate_lenses(const Polynomial& p, const Polynomial& q,
                                   std::size_t guard = kDefaultSizeGuard);

// The internal hom [p,q] materialized: one position per lens p -> q, and
// at the position of a lens phi the flattened dependent sum over dom
// positions i of the cod directions at phi(i). Direction labels record the
// pair (dom position, cod direction) they stand for.
struct HomPolynomial {
  Polynomial source;  // p
  Polynomial target;  // q
  Polynomial underlying;
  std::vector<Lens> position_lenses;

  // Base index of the direction block of dom position i at position phi.
  std::size_t dir_offset(std::size_t phi, std::size_t i) const;

  // Canonical index of a lens among the positions. Throws Error if absent.
  std::size_t find_position(const Lens& l) const;
};

HomPolynomial internal_hom(const Polynomial& p, const Polynomial& q,
                           std::size_t guard = kDefaultSizeGuard);

// The dual [p, y].
HomPolynomial dual(const Polynomial& p,
                   std::size_t guard = kDefaultSizeGuard);

// Transpose of phi: p (x) q -> r across the currying adjunction,
// yielding p -> [q,r]. `hom_qr` must be the materialized [q,r].
Lens curry(const Lens& phi, const Polynomial& p, const Polynomial& q,
           const HomPolynomial& hom_qr);
Lens curry(const Lens& phi, const Polynomial& p, const Polynomial& q,
           std::size_t guard = kDefaultSizeGuard);

// Inverse transpose: from psi: p -> [q,r] back to p (x) q -> r.
Lens uncurry(const Lens& psi, const HomPolynomial& hom_qr);

// The evaluation lens [q,r] (x) q -> r (the identity of [q,r] transported
// across the adjunction).
Lens eval_lens(const HomPolynomial& hom_qr);
Lens eval_lens(const Polynomial& q, const Polynomial& r,
               std::size_t guard = kDefaultSizeGuard);

// Composition internal to the interface category:
// [p,q] (x) [q,r] -> [p,r], acting by lens composition on positions.
Lens internal_compose(const HomPolynomial& hom_pq,
                      const HomPolynomial& hom_qr,
                      const HomPolynomial& hom_pr);
Lens internal_compose(const Polynomial& p, const Polynomial& q,
                      const Polynomial& r,
                      std::size_t guard = kDefaultSizeGuard);

}  // namespace polyagent
