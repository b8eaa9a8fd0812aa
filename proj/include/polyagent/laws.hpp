#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polyagent/meta.hpp"
#include "polyagent/rng.hpp"

namespace polyagent::laws {

struct LawResult {
  std::string name;
  bool pass = false;
  double residual = 0.0;
  std::string note;  // "skipped: ..." when a guard stopped the suite
};

struct Sizes {
  std::size_t max_positions = 3;
  std::size_t max_directions = 3;
  std::size_t max_states = 4;
  std::size_t max_carrier = 6;
  std::size_t iterations = 50;
  std::size_t sample_trajectories = 20000;
};

// Random instance generators shared by the suites.
Polynomial random_poly(Rng& rng, std::size_t max_positions,
                       std::size_t max_directions, bool allow_empty_dirs = true);
// nullopt when no lens exists (some dom position cannot be mapped).
std::optional<Lens> random_lens(Rng& rng, const Polynomial& p,
                                const Polynomial& q);
Dist random_dist(Rng& rng, FinSet carrier);
Channel random_channel(Rng& rng, FinSet dom, FinSet cod);
GenSystem random_gen_system(Rng& rng, const Polynomial& iface,
                            std::size_t max_states);

// Every law suite, in a fixed order. Declared scenario systems may be
// appended to the random sweep by the caller.
std::vector<LawResult> run_all(std::uint64_t seed, const Sizes& sizes);

LawResult poly_category_laws(Rng& rng, const Sizes& sizes);
LawResult tensor_functoriality(Rng& rng, const Sizes& sizes);
LawResult tensor_symmetry(Rng& rng, const Sizes& sizes);
LawResult monomial_embedding_count(Rng& rng, const Sizes& sizes);
LawResult poly_apply_functoriality(Rng& rng, const Sizes& sizes);
LawResult hom_cardinality(Rng& rng, const Sizes& sizes);
LawResult currying_adjunction(Rng& rng, const Sizes& sizes);
LawResult evaluation_triangle(Rng& rng, const Sizes& sizes);
LawResult internal_composition_laws(Rng& rng, const Sizes& sizes);
LawResult channel_category_laws(Rng& rng, const Sizes& sizes);
LawResult tensor_interchange(Rng& rng, const Sizes& sizes);
LawResult bayes_oracle(Rng& rng, const Sizes& sizes);
LawResult pushforward_functoriality(Rng& rng, const Sizes& sizes);
LawResult gen_pseudofunctoriality(Rng& rng, const Sizes& sizes);
LawResult rewire_preserves_morphisms(Rng& rng, const Sizes& sizes);
LawResult laxator_coherence(Rng& rng, const Sizes& sizes);
LawResult unroll_consistency(Rng& rng, const Sizes& sizes);
LawResult filter_equivalence(Rng& rng, const Sizes& sizes);
LawResult groth_categoricity(Rng& rng, const Sizes& sizes);

}  // namespace polyagent::laws
