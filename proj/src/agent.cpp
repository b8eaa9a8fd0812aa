#include "polyagent/agent.hpp"

#include <cmath>
#include <limits>
#include <memory>

#include "polyagent/rng.hpp"

namespace polyagent {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// KL(q || pref) with natural log, 0 log 0 = 0, support violations -> +inf.
double kl_divergence(const std::vector<double>& q, const std::vector<double>& pref) {
  double kl = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] <= 0.0) continue;
    if (pref[i] <= 0.0) return kInf;
    kl += q[i] * std::log(q[i] / pref[i]);
  }
  return kl;
}

}  // namespace

std::vector<TypedPolicy> enumerate_typed_policies(const Polynomial& p,
                                                  std::size_t horizon,
                                                  std::size_t guard) {
  std::vector<TypedPolicy> out;
  if (horizon == 0) return out;

  // section digits range over positions with at least one direction
  std::vector<std::size_t> active;
  std::uint64_t per_section = 1;
  bool saturated = false;
  for (std::size_t i = 0; i < p.num_positions(); ++i) {
    const std::size_t n = p.dir(i).size();
    if (n == 0) continue;
    active.push_back(i);
    if (per_section > std::numeric_limits<std::uint64_t>::max() / n) saturated = true;
    per_section *= n;
  }
  std::uint64_t total = 1;
  for (std::size_t t = 0; t < horizon && !saturated; ++t) {
    if (total > std::numeric_limits<std::uint64_t>::max() / per_section) saturated = true;
    total *= per_section;
  }
  if (saturated || total > guard) {
    const std::string card = saturated ? "overflow (>2^64)" : std::to_string(total);
    throw SizeGuardExceeded("policy enumeration would produce " + card +
                                " policies, guard is " + std::to_string(guard),
                            card);
  }

  std::vector<std::size_t> digits(active.size() * horizon, 0);
  std::vector<std::size_t> radix(digits.size());
  for (std::size_t t = 0; t < horizon; ++t) {
    for (std::size_t k = 0; k < active.size(); ++k) {
      radix[t * active.size() + k] = p.dir(active[k]).size();
    }
  }
  out.reserve(total);
  bool more = true;
  while (more) {
    TypedPolicy pol;
    pol.sections.assign(horizon, std::vector<std::size_t>(p.num_positions(), kNoDirection));
    for (std::size_t t = 0; t < horizon; ++t) {
      for (std::size_t k = 0; k < active.size(); ++k) {
        pol.sections[t][active[k]] = digits[t * active.size() + k];
      }
    }
    out.push_back(std::move(pol));
    more = false;
    for (std::size_t k = digits.size(); k-- > 0;) {
      if (++digits[k] < radix[k]) {
        more = true;
        break;
      }
      digits[k] = 0;
    }
    if (digits.empty()) break;  // single empty section sequence
  }
  return out;
}

Dist condition_on_position(const GenSystem& m, const Dist& belief,
                           std::size_t position) {
  if (belief.carrier != m.states) {
    throw CarrierMismatch("belief carrier is not the model's state carrier");
  }
  std::vector<double> mass(belief.mass.size(), 0.0);
  double evidence = 0.0;
  for (std::size_t s = 0; s < mass.size(); ++s) {
    if (m.out[s] == position) {
      mass[s] = belief.mass[s];
      evidence += mass[s];
    }
  }
  if (evidence <= kNormEps) {
    throw ZeroEvidence("no belief mass is consistent with position '" +
                       m.iface.positions.label(position) + "'");
  }
  for (double& v : mass) v /= evidence;
  return Dist{belief.carrier, std::move(mass)};
}

Dist predict_step(const GenSystem& m, const Dist& belief, std::size_t position,
                  std::size_t direction) {
  if (direction >= m.iface.dir(position).size()) {
    throw NoAvailableAction("direction index out of range at position '" +
                            m.iface.positions.label(position) + "'");
  }
  std::vector<double> mass(belief.mass.size(), 0.0);
  for (std::size_t s = 0; s < belief.mass.size(); ++s) {
    const double w = belief.mass[s];
    if (w == 0.0) continue;
    const auto& row = m.upd.rows[m.flat_index(s, direction)];
    for (std::size_t s2 = 0; s2 < mass.size(); ++s2) mass[s2] += w * row[s2];
  }
  return Dist{belief.carrier, std::move(mass)};
}

Dist exact_infer(const GenSystem& m, const Dist& belief, std::size_t position,
                 std::size_t direction) {
  return predict_step(m, condition_on_position(m, belief, position), position,
                      direction);
}

double expected_free_energy(const Agent& agent, const Dist& belief,
                            const TypedPolicy& policy) {
  const GenSystem& m = agent.model.system;
  std::vector<double> cur = belief.mass;
  double g = 0.0;
  for (const auto& section : policy.sections) {
    // roll the belief one step, applying the section at each position
    std::vector<double> next(cur.size(), 0.0);
    for (std::size_t s = 0; s < cur.size(); ++s) {
      const double w = cur[s];
      if (w == 0.0) continue;
      const std::size_t dir = section[m.out[s]];
      if (dir == kNoDirection) return kInf;  // stranded at an input-less position
      const auto& row = m.upd.rows[m.flat_index(s, dir)];
      for (std::size_t s2 = 0; s2 < next.size(); ++s2) next[s2] += w * row[s2];
    }
    cur = std::move(next);
    // predicted position marginal vs preferences
    std::vector<double> q(m.iface.num_positions(), 0.0);
    for (std::size_t s = 0; s < cur.size(); ++s) q[m.out[s]] += cur[s];
    g += kl_divergence(q, agent.preferences.mass);
    if (g == kInf) return kInf;
  }
  return g;
}

ActionChoice select_action_detail(const Agent& agent, const Dist& belief,
                                  std::size_t position) {
  const GenSystem& m = agent.model.system;
  const std::size_t n_dirs = m.iface.dir(position).size();
  if (n_dirs == 0) {
    throw NoAvailableAction("position '" + m.iface.positions.label(position) +
                            "' has no directions");
  }
  const Dist conditioned = condition_on_position(m, belief, position);
  const auto policies =
      enumerate_typed_policies(m.iface, agent.horizon, agent.policy_guard);
  if (policies.empty()) {
    // nothing to rank; canonical order means the first direction
    return ActionChoice{0, 0, 0.0};
  }
  std::size_t best = 0;
  double best_g = kInf;
  bool have = false;
  for (std::size_t k = 0; k < policies.size(); ++k) {
    const double g = expected_free_energy(agent, conditioned, policies[k]);
    if (!have || g < best_g) {
      best = k;
      best_g = g;
      have = true;
    }
  }
  std::size_t dir = policies[best].sections[0][position];
  if (dir == kNoDirection) dir = 0;  // unreachable: n_dirs > 0 here
  return ActionChoice{dir, best, best_g};
}

std::size_t select_action(const Agent& agent, const Dist& belief,
                          std::size_t position) {
  return select_action_detail(agent, belief, position).direction;
}

Controller make_efe_controller(const PrioredGenSystem& model, Dist preferences,
                               std::size_t horizon, std::size_t policy_guard) {
  Controller c;
  c.iface = model.system.iface;
  // the closures carry their own agent view of the model
  auto held = std::make_shared<Agent>();
  held->model = model;
  held->preferences = std::move(preferences);
  held->horizon = horizon;
  held->policy_guard = policy_guard;
  c.policy_detail = [held](const Dist& belief, std::size_t position) {
    return select_action_detail(*held, belief, position);
  };
  c.policy = [held](const Dist& belief, std::size_t position) {
    return select_action_detail(*held, belief, position).direction;
  };
  c.infer = [held](const Dist& belief, std::size_t position) {
    const GenSystem& m = held->model.system;
    const Dist conditioned = condition_on_position(m, belief, position);
    const std::size_t dir = m.iface.dir(position).empty()
                                ? kNoDirection
                                : select_action_detail(*held, belief, position).direction;
    if (dir == kNoDirection) return conditioned;  // stuck: no input will arrive
    return predict_step(m, conditioned, position, dir);
  };
  return c;
}

Agent make_agent(PrioredGenSystem model, Dist preferences, std::size_t horizon,
                 std::size_t policy_guard) {
  if (preferences.carrier.size() != model.system.iface.num_positions()) {
    throw CarrierMismatch("preference carrier must be the interface positions");
  }
  Agent a;
  a.controller = make_efe_controller(model, preferences, horizon, policy_guard);
  a.model = std::move(model);
  a.preferences = std::move(preferences);
  a.horizon = horizon;
  a.policy_guard = policy_guard;
  return a;
}

std::vector<EpisodeStep> simulate_episode(const Agent& agent,
                                          const PrioredGenSystem& env,
                                          std::size_t steps, std::uint64_t seed) {
  if (agent.iface() != env.system.iface) {
    throw InterfaceMismatch("agent and environment do not share an interface");
  }
  Rng rng(seed);
  std::vector<EpisodeStep> log;
  log.reserve(steps + 1);
  std::size_t env_state = rng.sample(env.prior);
  Dist belief = agent.model.prior;
  for (std::size_t t = 0;; ++t) {
    const std::size_t position = env.system.out[env_state];
    EpisodeStep step;
    step.env_state = env_state;
    step.position = position;
    step.belief = condition_on_position(agent.model.system, belief, position);
    if (t == steps) {
      log.push_back(std::move(step));
      break;
    }
    if (agent.controller.policy_detail) {
      const ActionChoice choice = agent.controller.policy_detail(belief, position);
      step.direction = choice.direction;
      step.policy_index = choice.policy_index;
      step.g = choice.g;
    } else {
      step.direction = agent.controller.policy(belief, position);
    }
    if (*step.direction >= env.system.iface.dir(position).size()) {
      throw InvariantViolation("controller emitted an ill-typed direction at position '" +
                               env.system.iface.positions.label(position) + "'");
    }
    env_state = rng.sample(
        env.system.upd.rows[env.system.flat_index(env_state, *step.direction)]);
    belief = agent.controller.infer(belief, position);
    log.push_back(std::move(step));
  }
  return log;
}

}  // namespace polyagent
