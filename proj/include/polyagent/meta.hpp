#pragma once

#include <map>
#include <utility>

#include "polyagent/agent.hpp"
#include "polyagent/hom.hpp"

namespace polyagent {

// An object of the total category of models: an interface together with a
// generative model over it.
struct GrothObject {
  Polynomial iface;
  GenSystem system;
};

// A morphism (p,S,theta) -> (p',S',theta'): a change of interface together
// with a change of structure compatible with rewiring along it.
struct GrothMorphism {
  Lens lens;     // p -> p'
  Channel chan;  // S ~> S'
};

GrothMorphism groth_identity(const GrothObject& obj);

// Componentwise composition (lens composition and channel composition).
GrothMorphism groth_compose(const GrothMorphism& f, const GrothMorphism& g);

// Rewires src along m.lens and checks m.chan as a system morphism into
// dst. Throws InterfaceMismatch on endpoint mismatch and propagates
// IncompatibleOutputs from the underlying check.
MorphismCheck check_groth_morphism(const GrothObject& src, const GrothObject& dst,
                                   const GrothMorphism& m,
                                   double eps = kMorphismEps);

// All valid morphisms src -> dst, lens-major then channel order. By
// default the channel search ranges over deterministic channels (all
// functions between the state carriers). With deterministic_only = false
// a coarse half-integer grid of rows (masses in {0, 1/2, 1}) is searched
// instead; either way the search size is guarded.
std::vector<GrothMorphism> enumerate_groth_morphisms(
    const GrothObject& src, const GrothObject& dst,
    bool deterministic_only = true, std::size_t guard = kDefaultSizeGuard);

// User-supplied channel candidates instead of a generated family.
std::vector<GrothMorphism> enumerate_groth_morphisms(
    const GrothObject& src, const GrothObject& dst,
    const std::vector<Channel>& candidates,
    std::size_t guard = kDefaultSizeGuard);

// tables[(k,k2)] lists the morphisms objs[k] -> objs[k2].
using GrothHomTables =
    std::map<std::pair<std::size_t, std::size_t>, std::vector<GrothMorphism>>;

GrothHomTables build_hom_tables(const std::vector<GrothObject>& objs,
                                bool deterministic_only = true,
                                std::size_t guard = kDefaultSizeGuard);

// The structure-learning interface: positions pair an object with one of
// its interface positions; the directions at any position of object k are
// all tabulated morphisms out of k. Throws MissingTable when a pair of
// objects has no table.
Polynomial structure_agent_interface(const std::vector<GrothObject>& objs,
                                     const GrothHomTables& tables);

// A generative process over the structure interface: states are the
// disjoint union of the objects' states, outputs report (object, that
// object's output), and a chosen morphism moves the state through its
// channel into the target object.
GenSystem structure_demo_system(const std::vector<GrothObject>& objs,
                                const GrothHomTables& tables);

}  // namespace polyagent
