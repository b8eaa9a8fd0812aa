#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "polyagent/gen.hpp"

namespace polyagent {

// Guard on the number of policies a planner will enumerate.
inline constexpr std::size_t kDefaultPolicyGuard = 100'000;

// Marks positions with no directions inside a policy section.
inline constexpr std::size_t kNoDirection = static_cast<std::size_t>(-1);

// A typed policy: per step, a section assigning one direction to every
// position that has any. On a monomial interface a constant section is a
// classical action, and a policy a classical action sequence.
struct TypedPolicy {
  std::vector<std::vector<std::size_t>> sections;  // [step][position]

  std::size_t length() const { return sections.size(); }
};

// All length-`horizon` section sequences in canonical order: sections are
// mixed-radix words over positions (last position fastest), policies
// mixed-radix words over steps (last step fastest). Horizon 0 yields no
// policies. Throws SizeGuardExceeded past the guard.
std::vector<TypedPolicy> enumerate_typed_policies(
    const Polynomial& p, std::size_t horizon,
    std::size_t guard = kDefaultPolicyGuard);

// Condition a belief on the event "the model shows this position" (exact
// Bayes with the Dirac likelihood of the output map).
// Throws ZeroEvidence when no belief mass is consistent with it.
Dist condition_on_position(const GenSystem& m, const Dist& belief,
                           std::size_t position);

// Push a conditioned belief through the update channel at a taken
// direction. All belief mass must sit on states showing `position`.
Dist predict_step(const GenSystem& m, const Dist& belief, std::size_t position,
                  std::size_t direction);

// condition_on_position then predict_step.
Dist exact_infer(const GenSystem& m, const Dist& belief, std::size_t position,
                 std::size_t direction);

struct ActionChoice {
  std::size_t direction;
  std::size_t policy_index;
  double g;
};

// The decision half of an agent: procedures over beliefs, since the
// belief simplex is not a finite carrier.
struct Controller {
  Polynomial iface;
  // belief, observed position -> next belief (the full perception step)
  std::function<Dist(const Dist&, std::size_t)> infer;
  // belief, observed position -> direction at that position
  std::function<std::size_t(const Dist&, std::size_t)> policy;
  // optional: same as policy but exposing the ranking, for logs
  std::function<ActionChoice(const Dist&, std::size_t)> policy_detail;
};

struct Agent {
  PrioredGenSystem model;
  Controller controller;
  Dist preferences;  // over iface positions
  std::size_t horizon = 1;
  std::size_t policy_guard = kDefaultPolicyGuard;

  const Polynomial& iface() const { return model.system.iface; }
};

// Cumulative KL divergence between the predicted position marginals under
// a policy and the preference distribution. Predicted mass landing on a
// position with no directions before the rollout ends makes the policy
// infeasible and scores +infinity.
double expected_free_energy(const Agent& agent, const Dist& belief,
                            const TypedPolicy& policy);

// Conditions the belief on the observed position, scores every policy up
// to the agent's horizon, and returns the first step of the argmin (ties
// broken by canonical order). With horizon 0 there is nothing to rank and
// the first direction wins. Throws NoAvailableAction when the current
// position has no directions.
ActionChoice select_action_detail(const Agent& agent, const Dist& belief,
                                  std::size_t position);
std::size_t select_action(const Agent& agent, const Dist& belief,
                          std::size_t position);

// The canonical controller of a model: expected-free-energy action
// selection and the exact condition/predict perception step.
Controller make_efe_controller(const PrioredGenSystem& model, Dist preferences,
                               std::size_t horizon,
                               std::size_t policy_guard = kDefaultPolicyGuard);

Agent make_agent(PrioredGenSystem model, Dist preferences, std::size_t horizon,
                 std::size_t policy_guard = kDefaultPolicyGuard);

struct EpisodeStep {
  std::size_t env_state;
  std::size_t position;
  Dist belief;  // conditioned on the position observed this step
  std::optional<std::size_t> direction;     // absent on the final record
  std::optional<std::size_t> policy_index;  // present for ranking controllers
  std::optional<double> g;
};

// Couples an agent to a generative process over the same interface and
// runs `steps` environment transitions (steps+1 records). Deterministic
// given the seed.
std::vector<EpisodeStep> simulate_episode(const Agent& agent,
                                          const PrioredGenSystem& env,
                                          std::size_t steps,
                                          std::uint64_t seed);

}  // namespace polyagent
