#pragma once

#include "polyagent/agent.hpp"

namespace polyagent {

// A manager agent on the interface By^C (x) Dy^E -> Oy^A: it couples two
// worker agents (left over By^C, right over Dy^E) into one agent over
// Oy^A. Deterministic maps are tables in row-major layout over their
// argument lists; the belief-dependent maps are procedures.
struct HierAgent {
  FinSet states;         // S
  FinSet low_obs_left;   // B: what the left worker shows the manager
  FinSet low_act_left;   // C: what the manager commands the left worker
  FinSet low_obs_right;  // D
  FinSet low_act_right;  // E
  FinSet high_obs;       // O: what the composite shows outside
  FinSet high_act;       // A: what the composite receives from outside

  std::vector<std::size_t> likelihood;        // S x B x D -> O
  std::vector<std::size_t> low_action_left;   // S x B x D x A -> C
  std::vector<std::size_t> low_action_right;  // S x B x D x A -> E
  Channel transition;                         // (S x B x D x A) ~> S
  Dist prior;                                 // over S
  Dist preferences;                           // over O

  // generative processes for the workers' observations
  std::function<std::size_t(const Dist&, std::size_t)> gen_left;   // DS x O -> B
  std::function<std::size_t(const Dist&, std::size_t)> gen_right;  // DS x O -> D
  // high-level action selection and state inference
  std::function<std::size_t(const Dist&, std::size_t, std::size_t, std::size_t)>
      high_policy;  // DS x O x C x E -> A
  std::function<Dist(const Dist&, std::size_t, std::size_t, std::size_t)>
      inference;  // DS x O x C x E -> DS

  std::size_t sbd_index(std::size_t s, std::size_t b, std::size_t d) const {
    return (s * low_obs_left.size() + b) * low_obs_right.size() + d;
  }
  std::size_t sbda_index(std::size_t s, std::size_t b, std::size_t d,
                         std::size_t a) const {
    return sbd_index(s, b, d) * high_act.size() + a;
  }
};

void validate_hier_agent(const HierAgent& mgr);

// Wires the workers under the manager. Per step, the composite
//  - shows o = likelihood(s, b, d) with b, d the workers' outputs;
//  - on an external action a, commands the workers with the low-action
//    maps and transitions all three state factors independently;
// while its controller
//  - generates the workers' observations from the manager's belief,
//  - lets the workers select their own actions on those observations,
//  - selects the high action and infers, treating the workers' actions
//    as observed.
// Only O and A are visible from outside. Throws CarrierMismatch unless
// the workers' interfaces are the declared monomials.
Agent compose_hierarchy(const HierAgent& mgr, const Agent& left,
                        const Agent& right);

// The one-state agent over the trivial interface y.
Agent make_trivial_agent();

// Iterated two-level composition with trivial observation carriers:
// uppers[k] manages the composite built so far as its left worker (its C
// carrier must match the current interface's actions) and a one-state
// constant right worker. An empty `uppers` returns the bottom agent.
Agent build_deep_chain(const Agent& bottom,
                       const std::vector<HierAgent>& uppers);

}  // namespace polyagent
