#include "polyagent/hierarchy.hpp"

#include <memory>
#include <tuple>

namespace polyagent {

namespace {

void check_table(const std::vector<std::size_t>& table, std::size_t size,
                 std::size_t range, const char* what) {
  if (table.size() != size) {
    throw InvariantViolation(std::string(what) + " table has " +
                             std::to_string(table.size()) + " entries, expected " +
                             std::to_string(size));
  }
  for (std::size_t v : table) {
    if (v >= range) {
      throw InvariantViolation(std::string(what) + " table entry out of range");
    }
  }
}

struct Split3 {
  Dist s, l, r;
};

Split3 marginals3(const Dist& joint, const FinSet& s_set, const FinSet& l_set,
                  const FinSet& r_set) {
  std::vector<double> ms(s_set.size(), 0.0);
  std::vector<double> ml(l_set.size(), 0.0);
  std::vector<double> mr(r_set.size(), 0.0);
  const std::size_t nl = l_set.size();
  const std::size_t nr = r_set.size();
  for (std::size_t s = 0; s < s_set.size(); ++s) {
    for (std::size_t l = 0; l < nl; ++l) {
      for (std::size_t r = 0; r < nr; ++r) {
        const double m = joint.mass[(s * nl + l) * nr + r];
        ms[s] += m;
        ml[l] += m;
        mr[r] += m;
      }
    }
  }
  return Split3{Dist{s_set, std::move(ms)}, Dist{l_set, std::move(ml)},
                Dist{r_set, std::move(mr)}};
}

Dist joint3(const Dist& s, const Dist& l, const Dist& r, const FinSet& carrier) {
  std::vector<double> mass;
  mass.reserve(carrier.size());
  for (double a : s.mass) {
    for (double b : l.mass) {
      for (double c : r.mass) mass.push_back(a * b * c);
    }
  }
  return Dist{carrier, std::move(mass)};
}

}  // namespace

void validate_hier_agent(const HierAgent& mgr) {
  const std::size_t ns = mgr.states.size();
  const std::size_t nb = mgr.low_obs_left.size();
  const std::size_t nd = mgr.low_obs_right.size();
  const std::size_t na = mgr.high_act.size();
  check_table(mgr.likelihood, ns * nb * nd, mgr.high_obs.size(), "likelihood");
  check_table(mgr.low_action_left, ns * nb * nd * na, mgr.low_act_left.size(),
              "low_action_left");
  check_table(mgr.low_action_right, ns * nb * nd * na, mgr.low_act_right.size(),
              "low_action_right");
  if (mgr.transition.dom.size() != ns * nb * nd * na || mgr.transition.cod != mgr.states) {
    throw InvariantViolation("manager transition channel has the wrong shape");
  }
  if (mgr.prior.carrier != mgr.states) {
    throw InvariantViolation("manager prior is not over the manager states");
  }
  if (mgr.preferences.carrier != mgr.high_obs) {
    throw InvariantViolation("manager preferences are not over the high observations");
  }
  if (!mgr.gen_left || !mgr.gen_right || !mgr.high_policy || !mgr.inference) {
    throw InvariantViolation("manager procedures must all be provided");
  }
}

Agent compose_hierarchy(const HierAgent& mgr, const Agent& left, const Agent& right) {
  validate_hier_agent(mgr);
  if (left.iface() != monomial(mgr.low_obs_left, mgr.low_act_left)) {
    throw CarrierMismatch("left worker interface is not the declared By^C");
  }
  if (right.iface() != monomial(mgr.low_obs_right, mgr.low_act_right)) {
    throw CarrierMismatch("right worker interface is not the declared Dy^E");
  }

  const GenSystem& ml = left.model.system;
  const GenSystem& mr = right.model.system;
  const std::size_t ns = mgr.states.size();
  const std::size_t nl = ml.states.size();
  const std::size_t nr = mr.states.size();
  const std::size_t na = mgr.high_act.size();

  Polynomial iface = monomial(mgr.high_obs, mgr.high_act);
  FinSet states = product(
      "(" + mgr.states.name + "x" + ml.states.name + "x" + mr.states.name + ")",
      {mgr.states, ml.states, mr.states});

  std::vector<std::size_t> out(states.size());
  for (std::size_t s = 0; s < ns; ++s) {
    for (std::size_t l = 0; l < nl; ++l) {
      for (std::size_t r = 0; r < nr; ++r) {
        const std::size_t b = ml.out[l];
        const std::size_t d = mr.out[r];
        out[(s * nl + l) * nr + r] = mgr.likelihood[mgr.sbd_index(s, b, d)];
      }
    }
  }

  FlatDomain fd = flat_domain(iface, states, out);
  std::vector<std::vector<double>> rows;
  rows.reserve(fd.carrier.size());
  for (std::size_t s = 0; s < ns; ++s) {
    for (std::size_t l = 0; l < nl; ++l) {
      for (std::size_t r = 0; r < nr; ++r) {
        const std::size_t b = ml.out[l];
        const std::size_t d = mr.out[r];
        for (std::size_t a = 0; a < na; ++a) {
          const std::size_t c = mgr.low_action_left[mgr.sbda_index(s, b, d, a)];
          const std::size_t e = mgr.low_action_right[mgr.sbda_index(s, b, d, a)];
          const auto& row_s = mgr.transition.rows[mgr.sbda_index(s, b, d, a)];
          const auto& row_l = ml.upd.rows[ml.flat_index(l, c)];
          const auto& row_r = mr.upd.rows[mr.flat_index(r, e)];
          std::vector<double> row;
          row.reserve(states.size());
          for (double ps : row_s) {
            for (double pl : row_l) {
              for (double pr : row_r) row.push_back(ps * pl * pr);
            }
          }
          rows.push_back(std::move(row));
        }
      }
    }
  }
  Channel upd = make_channel(fd.carrier, states, std::move(rows));
  GenSystem system = make_gen_system(iface, states, std::move(out), std::move(upd));
  Dist prior = joint3(mgr.prior, left.model.prior, right.model.prior, states);

  // the decision side wires the manager's procedures around the workers'
  struct Closure {
    HierAgent mgr;
    Controller left;
    Controller right;
    FinSet s_set, l_set, r_set, carrier;
  };
  auto cl = std::make_shared<Closure>(Closure{mgr, left.controller, right.controller,
                                              mgr.states, ml.states, mr.states, states});

  auto decide = [cl](const Dist& belief, std::size_t o) {
    const Split3 parts = marginals3(belief, cl->s_set, cl->l_set, cl->r_set);
    const std::size_t b = cl->mgr.gen_left(parts.s, o);
    const std::size_t d = cl->mgr.gen_right(parts.s, o);
    if (b >= cl->mgr.low_obs_left.size() || d >= cl->mgr.low_obs_right.size()) {
      throw InvariantViolation("manager generated an out-of-range worker observation");
    }
    const std::size_t c = cl->left.policy(parts.l, b);
    const std::size_t e = cl->right.policy(parts.r, d);
    const std::size_t a = cl->mgr.high_policy(parts.s, o, c, e);
    if (a >= cl->mgr.high_act.size()) {
      throw InvariantViolation("manager policy selected an out-of-range action");
    }
    return std::tuple<std::size_t, std::size_t, std::size_t, std::size_t,
                      std::size_t>{b, d, c, e, a};
  };

  Controller controller;
  controller.iface = system.iface;
  controller.policy = [decide](const Dist& belief, std::size_t o) {
    return std::get<4>(decide(belief, o));
  };
  controller.infer = [cl, decide](const Dist& belief, std::size_t o) {
    const auto [b, d, c, e, a] = decide(belief, o);
    (void)a;
    const Split3 parts = marginals3(belief, cl->s_set, cl->l_set, cl->r_set);
    const Dist s_next = cl->mgr.inference(parts.s, o, c, e);
    const Dist l_next = cl->left.infer(parts.l, b);
    const Dist r_next = cl->right.infer(parts.r, d);
    return joint3(s_next, l_next, r_next, cl->carrier);
  };

  Agent composite;
  composite.model = PrioredGenSystem{std::move(system), std::move(prior)};
  composite.controller = std::move(controller);
  composite.preferences = mgr.preferences;
  composite.horizon = 1;
  return composite;
}

Agent make_trivial_agent() {
  Polynomial iface = trivial_interface();
  FinSet states{"1", {"*"}};
  std::vector<std::size_t> out{0};
  FlatDomain fd = flat_domain(iface, states, out);
  Channel upd = make_channel(fd.carrier, states, {{1.0}});
  GenSystem sys = make_gen_system(iface, states, out, std::move(upd));
  Dist prior = dirac(sys.states, 0);
  Dist prefs = dirac(sys.iface.positions, 0);
  return make_agent(PrioredGenSystem{std::move(sys), std::move(prior)},
                    std::move(prefs), 1);
}

namespace {

// One-state worker over monomial(obs, act) that stays put and always picks
// the first action.
Agent make_constant_worker(const FinSet& obs, const FinSet& act) {
  Polynomial iface = monomial(obs, act);
  FinSet states{"1", {"*"}};
  std::vector<std::size_t> out{0};
  FlatDomain fd = flat_domain(iface, states, out);
  std::vector<std::vector<double>> rows(fd.carrier.size(), std::vector<double>{1.0});
  Channel upd = make_channel(fd.carrier, states, std::move(rows));
  GenSystem sys = make_gen_system(iface, states, out, std::move(upd));
  Dist prior = dirac(sys.states, 0);
  Dist prefs = dirac(sys.iface.positions, 0);
  return make_agent(PrioredGenSystem{std::move(sys), std::move(prior)},
                    std::move(prefs), 1);
}

}  // namespace

Agent build_deep_chain(const Agent& bottom, const std::vector<HierAgent>& uppers) {
  Agent acc = bottom;
  for (const auto& mgr : uppers) {
    if (mgr.low_obs_left.size() != 1 || mgr.low_obs_right.size() != 1 ||
        mgr.low_act_right.size() != 1 || mgr.high_obs.size() != 1) {
      throw CarrierMismatch(
          "deep-chain managers must have trivial B, D, E and O carriers");
    }
    acc = compose_hierarchy(mgr, acc,
                            make_constant_worker(mgr.low_obs_right, mgr.low_act_right));
  }
  return acc;
}

}  // namespace polyagent
