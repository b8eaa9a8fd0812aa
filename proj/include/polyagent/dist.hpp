#pragma once

#include <vector>

#include "polyagent/finset.hpp"

namespace polyagent {

// Tolerance accepted at construction time (serialized rounding slack).
inline constexpr double kNormEps = 1e-9;
// Tolerance for algebraic law checks.
inline constexpr double kLawEps = 1e-12;
// Tolerance for system-morphism residuals.
inline constexpr double kMorphismEps = 1e-9;

// A probability distribution over a finite carrier, one mass per element
// in carrier order.
struct Dist {
  FinSet carrier;
  std::vector<double> mass;

  double operator[](std::size_t i) const { return mass[i]; }
};

// Validates and renormalizes: masses must be nonnegative and sum to 1
// within kNormEps, else InvariantViolation.
Dist make_dist(FinSet carrier, std::vector<double> mass);

Dist dirac(FinSet carrier, std::size_t at);
Dist uniform_dist(FinSet carrier);

// 1/2 the L1 distance. Throws CarrierMismatch on different carriers.
double total_variation(const Dist& a, const Dist& b);

// Image distribution along a total map f: dom -> cod.
Dist pushforward(const std::vector<std::size_t>& f, const FinSet& cod,
                 const Dist& d);

}  // namespace polyagent
