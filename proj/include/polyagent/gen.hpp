#pragma once

#include <cstdint>
#include <vector>

#include "polyagent/channel.hpp"
#include "polyagent/lens.hpp"

namespace polyagent {

// The flattened dependent sum over states of the directions at each
// state's output position, in state-major order. This is the domain of
// every update channel; offsets[s] is the base index of state s's block.
struct FlatDomain {
  FinSet carrier;
  std::vector<std::size_t> offsets;
};

FlatDomain flat_domain(const Polynomial& iface, const FinSet& states,
                       const std::vector<std::size_t>& out);

// A deterministic dependent Moore machine: output map on states, update
// map on the flattened dependent sum.
struct MooreSystem {
  Polynomial iface;
  FinSet states;
  std::vector<std::size_t> out;  // state -> iface position
  std::vector<std::size_t> upd;  // flat domain -> state
};

void validate_moore(const MooreSystem& m);

// A generative model: like a Moore machine, but the update is a channel.
struct GenSystem {
  Polynomial iface;
  FinSet states;
  std::vector<std::size_t> out;
  Channel upd;                        // flat domain ~> states
  std::vector<std::size_t> offsets;   // flat-domain block base per state

  std::size_t flat_index(std::size_t state, std::size_t direction) const {
    return offsets[state] + direction;
  }
};

// Validates shapes and builds the cached flat-domain layout.
GenSystem make_gen_system(Polynomial iface, FinSet states,
                          std::vector<std::size_t> out, Channel upd);

struct PrioredGenSystem {
  GenSystem system;
  Dist prior;  // over system.states
};

PrioredGenSystem attach_prior(GenSystem system, Dist prior);
GenSystem forget_prior(const PrioredGenSystem& ps);

// Embeds a deterministic machine as a generative model with Dirac rows.
GenSystem moore_to_gen(const MooreSystem& m);

// Rewires a deterministic machine along a lens (compose the lens after
// the machine's own lens presentation).
MooreSystem moore_rewire(const Lens& phi, const MooreSystem& m);

// The action of a lens phi: p -> q on models over p: keep the states,
// forward the outputs, and precompose the update with the deterministic
// reindexing that pulls q-directions back to p-directions.
GenSystem gen_rewire(const Lens& phi, const GenSystem& sys);

// Parallel composition (the laxator): product states, product outputs,
// row-wise independent joint of the updates.
GenSystem gen_parallel(const GenSystem& a, const GenSystem& b);

struct MorphismCheck {
  bool ok;
  double residual;
};

// Checks the commutation f . upd_a = upd_b . (f x id) entrywise. Throws
// IncompatibleOutputs when f carries mass between states whose output
// positions differ (the reindexing is then ill-typed).
MorphismCheck check_system_morphism(const Channel& f, const GenSystem& a,
                                    const GenSystem& b,
                                    double eps = kMorphismEps);

// Additionally requires prior_b = f . prior_a.
MorphismCheck check_priored_morphism(const Channel& f,
                                     const PrioredGenSystem& a,
                                     const PrioredGenSystem& b,
                                     double eps = kMorphismEps);

// Builds a model with a stochastic likelihood folded into the update:
// states become S x p(1), the output map is the projection, and each
// transition row is the joint of the state transition and the likelihood
// of the arrived-at state.
// trans: flattened (S x p(1))-major sum of p[i] ~> S, like: S ~> p(1).
GenSystem fold_likelihood(const FinSet& states, const Polynomial& iface,
                          const Channel& trans, const Channel& like);

// Exact marginals d_0 .. d_T of a closed system (iface of y shape:
// one position, one direction). Throws InterfaceNotClosed otherwise.
std::vector<Dist> closed_unroll_exact(const PrioredGenSystem& sys,
                                      std::size_t steps);

// One sampled trajectory of a closed system, deterministic given seed.
std::vector<std::size_t> closed_unroll_sample(const PrioredGenSystem& sys,
                                              std::size_t steps,
                                              std::uint64_t seed);

}  // namespace polyagent
