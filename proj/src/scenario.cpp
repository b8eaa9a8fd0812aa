#include "polyagent/scenario.hpp"

#include <fstream>
#include <memory>
#include <sstream>

namespace polyagent {

namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

std::string str_field(const Json& j, const char* key, const std::string& where) {
  const Json& f = field(j, key, where);
  if (!f.is_string()) throw ParseError(where + ": field '" + key + "' must be a string");
  return f.get<std::string>();
}

template <typename Map>
const typename Map::mapped_type& resolve(const Map& map, const std::string& name,
                                         const std::string& where,
                                         const char* what) {
  const auto it = map.find(name);
  if (it == map.end()) {
    throw ReferenceError(where + ": no " + what + " named '" + name + "'");
  }
  return it->second;
}

std::size_t argmax(const Dist& d) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < d.mass.size(); ++i) {
    if (d.mass[i] > d.mass[best]) best = i;
  }
  return best;
}

// Deterministic-table procedures keyed by the belief mode, plus the
// canonical Bayes inference over the manager's own pieces.
struct HierTables {
  FinSet states, b_set, c_set, d_set, e_set, o_set, a_set;
  std::vector<std::size_t> likelihood;
  Channel transition;
  std::vector<std::size_t> gen_left;     // (mode, o) -> B
  std::vector<std::size_t> gen_right;    // (mode, o) -> D
  std::vector<std::size_t> high_policy;  // (mode, o, c, e) -> A
};

HierAgent build_table_hier_agent(std::shared_ptr<const HierTables> t, Dist prior,
                                 Dist preferences,
                                 std::vector<std::size_t> low_action_left,
                                 std::vector<std::size_t> low_action_right) {
  HierAgent mgr;
  mgr.states = t->states;
  mgr.low_obs_left = t->b_set;
  mgr.low_act_left = t->c_set;
  mgr.low_obs_right = t->d_set;
  mgr.low_act_right = t->e_set;
  mgr.high_obs = t->o_set;
  mgr.high_act = t->a_set;
  mgr.likelihood = t->likelihood;
  mgr.low_action_left = std::move(low_action_left);
  mgr.low_action_right = std::move(low_action_right);
  mgr.transition = t->transition;
  mgr.prior = std::move(prior);
  mgr.preferences = std::move(preferences);
  const std::size_t no = t->o_set.size();
  const std::size_t nc = t->c_set.size();
  const std::size_t ne = t->e_set.size();
  mgr.gen_left = [t, no](const Dist& belief, std::size_t o) {
    return t->gen_left[argmax(belief) * no + o];
  };
  mgr.gen_right = [t, no](const Dist& belief, std::size_t o) {
    return t->gen_right[argmax(belief) * no + o];
  };
  mgr.high_policy = [t, no, nc, ne](const Dist& belief, std::size_t o, std::size_t c,
                                    std::size_t e) {
    return t->high_policy[((argmax(belief) * no + o) * nc + c) * ne + e];
  };
  mgr.inference = [t, no, nc, ne](const Dist& belief, std::size_t o, std::size_t c,
                                  std::size_t e) {
    const std::size_t mode = argmax(belief);
    const std::size_t b = t->gen_left[mode * no + o];
    const std::size_t d = t->gen_right[mode * no + o];
    const std::size_t a = t->high_policy[((mode * no + o) * nc + c) * ne + e];
    // condition on the likelihood agreeing with the observation
    std::vector<double> w(belief.mass.size(), 0.0);
    double evidence = 0.0;
    const std::size_t nb = t->b_set.size();
    const std::size_t nd = t->d_set.size();
    for (std::size_t s = 0; s < w.size(); ++s) {
      if (t->likelihood[(s * nb + b) * nd + d] == o) {
        w[s] = belief.mass[s];
        evidence += w[s];
      }
    }
    if (evidence <= kNormEps) {
      throw ZeroEvidence("manager belief is inconsistent with observation '" +
                         t->o_set.label(o) + "'");
    }
    for (auto& v : w) v /= evidence;
    // predict through the manager transition
    const std::size_t na = t->a_set.size();
    std::vector<double> next(w.size(), 0.0);
    for (std::size_t s = 0; s < w.size(); ++s) {
      if (w[s] == 0.0) continue;
      const auto& row = t->transition.rows[((s * nb + b) * nd + d) * na + a];
      for (std::size_t s2 = 0; s2 < next.size(); ++s2) next[s2] += w[s] * row[s2];
    }
    return Dist{belief.carrier, std::move(next)};
  };
  validate_hier_agent(mgr);
  return mgr;
}

class Parser {
 public:
  explicit Parser(const Json& j) : root_(j) {}

  Scenario run() {
    if (!root_.is_object()) throw ParseError("scenario root must be an object");
    const std::string version = str_field(root_, "version", "scenario");
    if (version != kScenarioVersion) {
      throw ParseError("unsupported scenario version '" + version + "', expected '" +
                       std::string(kScenarioVersion) + "'");
    }
    parse_finsets();
    parse_polynomials();
    parse_lenses();
    parse_channels();
    parse_categories();
    parse_systems();
    parse_agents();
    parse_hieragents();
    parse_experiments();
    return std::move(out_);
  }

 private:
  const Json* section(const char* key) {
    const auto it = root_.find(key);
    if (it == root_.end()) return nullptr;
    if (!it->is_array()) {
      throw ParseError(std::string("section '") + key + "' must be an array");
    }
    return &*it;
  }

  void parse_finsets() {
    const Json* sec = section("finsets");
    if (!sec) return;
    for (const auto& j : *sec) {
      const std::string name = str_field(j, "name", "finsets entry");
      const std::string where = "finsets['" + name + "']";
      FinSet s;
      s.name = name;
      s.elements = field(j, "elements", where).get<std::vector<std::string>>();
      validate_finset(s);
      out_.finsets.emplace(name, std::move(s));
    }
  }

  FinSet finset_ref(const Json& j, const std::string& where) {
    if (!j.is_string()) throw ParseError(where + ": expected a finset name");
    return resolve(out_.finsets, j.get<std::string>(), where, "finset");
  }

  void parse_polynomials() {
    const Json* sec = section("polynomials");
    if (!sec) return;
    for (const auto& j : *sec) {
      const std::string name = str_field(j, "name", "polynomials entry");
      const std::string where = "polynomials['" + name + "']";
      Polynomial p;
      p.positions = finset_ref(field(j, "positions", where), where + ".positions");
      const Json& dirs = field(j, "directions", where);
      if (dirs.is_string()) {
        // monomial shorthand: one carrier for every position
        p = monomial(p.positions, finset_ref(dirs, where + ".directions"));
      } else if (dirs.is_array()) {
        if (dirs.size() != p.positions.size()) {
          throw InvariantViolation(where + ": " + std::to_string(dirs.size()) +
                                   " direction carriers for " +
                                   std::to_string(p.positions.size()) + " positions");
        }
        for (const auto& d : dirs) {
          p.directions.push_back(finset_ref(d, where + ".directions"));
        }
      } else {
        throw ParseError(where + ".directions must be a name or an array of names");
      }
      validate_poly(p);
      out_.polynomials.emplace(name, std::move(p));
    }
  }

  void parse_lenses() {
    const Json* sec = section("lenses");
    if (!sec) return;
    for (const auto& j : *sec) {
      const std::string name = str_field(j, "name", "lenses entry");
      const std::string where = "lenses['" + name + "']";
      Lens l;
      l.dom = resolve(out_.polynomials, str_field(j, "dom", where), where + ".dom",
                      "polynomial");
      l.cod = resolve(out_.polynomials, str_field(j, "cod", where), where + ".cod",
                      "polynomial");
      l.fwd = field(j, "fwd", where).get<std::vector<std::size_t>>();
      l.bwd = field(j, "bwd", where).get<std::vector<std::vector<std::size_t>>>();
      try {
        validate_lens(l);
      } catch (const InvariantViolation& e) {
        throw InvariantViolation(where + ": " + e.what());
      }
      out_.lenses.emplace(name, std::move(l));
    }
  }

  void parse_channels() {
    const Json* sec = section("channels");
    if (!sec) return;
    for (const auto& j : *sec) {
      const std::string name = str_field(j, "name", "channels entry");
      const std::string where = "channels['" + name + "']";
      try {
        Channel c = make_channel(
            finset_ref(field(j, "dom", where), where + ".dom"),
            finset_ref(field(j, "cod", where), where + ".cod"),
            field(j, "rows", where).get<std::vector<std::vector<double>>>());
        out_.channels.emplace(name, std::move(c));
      } catch (const InvariantViolation& e) {
        throw InvariantViolation(where + ": " + e.what());
      }
    }
  }

  void parse_categories() {
    const Json* sec = section("categories");
    if (!sec) return;
    for (const auto& j : *sec) {
      const std::string name = str_field(j, "name", "categories entry");
      const std::string where = "categories['" + name + "']";
      FinCategory c;
      c.objects = finset_ref(field(j, "objects", where), where + ".objects");
      for (const auto& m : field(j, "morphisms", where)) {
        FinCategory::Morphism morph;
        morph.label = str_field(m, "label", where + ".morphisms");
        morph.dom = c.objects.index_of(str_field(m, "dom", where + ".morphisms"));
        morph.cod = c.objects.index_of(str_field(m, "cod", where + ".morphisms"));
        c.morphisms.push_back(std::move(morph));
      }
      const Json& ids = field(j, "identities", where);
      c.identities.resize(c.objects.size());
      for (std::size_t x = 0; x < c.objects.size(); ++x) {
        const auto it = ids.find(c.objects.label(x));
        if (it == ids.end()) {
          throw ParseError(where + ": no identity for object '" + c.objects.label(x) +
                           "'");
        }
        c.identities[x] = c.morphism_index(it->get<std::string>());
      }
      c.then_table.assign(c.morphisms.size(),
                          std::vector<std::size_t>(c.morphisms.size(),
                                                   FinCategory::kUndefined));
      // identity compositions are implied; explicit entries may override
      for (std::size_t f = 0; f < c.morphisms.size(); ++f) {
        c.then_table[c.identities[c.morphisms[f].dom]][f] = f;
        c.then_table[f][c.identities[c.morphisms[f].cod]] = f;
      }
      if (const auto comp = j.find("compose"); comp != j.end()) {
        for (const auto& e : *comp) {
          const std::size_t f = c.morphism_index(str_field(e, "first", where));
          const std::size_t g = c.morphism_index(str_field(e, "then", where));
          c.then_table[f][g] = c.morphism_index(str_field(e, "equals", where));
        }
      }
      try {
        validate_category(c);
      } catch (const InvalidCategory& e) {
        throw InvariantViolation(where + ": " + e.what());
      }
      out_.categories.emplace(name, std::move(c));
    }
  }

  void parse_systems() {
    const Json* sec = section("gensystems");
    if (!sec) return;
    for (const auto& j : *sec) {
      const std::string name = str_field(j, "name", "gensystems entry");
      const std::string where = "gensystems['" + name + "']";
      const Polynomial& iface = resolve(out_.polynomials, str_field(j, "iface", where),
                                        where + ".iface", "polynomial");
      const FinSet states = finset_ref(field(j, "states", where), where + ".states");
      std::vector<std::size_t> out;
      for (const auto& label : field(j, "out", where)) {
        if (!label.is_string()) throw ParseError(where + ".out must list position labels");
        const auto idx = iface.positions.find(label.get<std::string>());
        if (!idx) {
          throw ReferenceError(where + ".out: no position '" +
                               label.get<std::string>() + "'");
        }
        out.push_back(*idx);
      }
      try {
        FlatDomain fd = flat_domain(iface, states, out);
        const Json& upd_field = field(j, "upd", where);
        Channel upd =
            upd_field.is_string()
                ? resolve(out_.channels, upd_field.get<std::string>(), where + ".upd",
                          "channel")
                : make_channel(fd.carrier, states,
                               upd_field.get<std::vector<std::vector<double>>>());
        if (upd_field.is_string() && upd.dom.size() != fd.carrier.size()) {
          throw InvariantViolation(where + ".upd: channel domain size " +
                                   std::to_string(upd.dom.size()) +
                                   " does not match the flat domain size " +
                                   std::to_string(fd.carrier.size()));
        }
        GenSystem sys = make_gen_system(iface, states, out, std::move(upd));
        Dist prior =
            make_dist(sys.states, field(j, "prior", where).get<std::vector<double>>());
        out_.systems.emplace(name,
                             PrioredGenSystem{std::move(sys), std::move(prior)});
      } catch (const InvariantViolation& e) {
        throw InvariantViolation(where + ": " + e.what());
      }
    }
  }

  void parse_agents() {
    const Json* sec = section("agents");
    if (!sec) return;
    for (const auto& j : *sec) {
      const std::string name = str_field(j, "name", "agents entry");
      const std::string where = "agents['" + name + "']";
      const PrioredGenSystem& model = resolve(
          out_.systems, str_field(j, "model", where), where + ".model", "gensystem");
      try {
        Dist prefs = make_dist(model.system.iface.positions,
                               field(j, "preferences", where).get<std::vector<double>>());
        const std::size_t horizon = field(j, "horizon", where).get<std::size_t>();
        out_.agents.emplace(name, make_agent(model, std::move(prefs), horizon));
      } catch (const InvariantViolation& e) {
        throw InvariantViolation(where + ": " + e.what());
      }
    }
  }

  std::vector<std::size_t> label_table(const Json& j, const FinSet& target,
                                       std::size_t expected,
                                       const std::string& where) {
    if (!j.is_array() || j.size() != expected) {
      throw InvariantViolation(where + ": expected " + std::to_string(expected) +
                               " entries");
    }
    std::vector<std::size_t> out;
    out.reserve(j.size());
    for (const auto& e : j) {
      if (!e.is_string()) throw ParseError(where + ": entries must be labels");
      const auto idx = target.find(e.get<std::string>());
      if (!idx) {
        throw ReferenceError(where + ": no element '" + e.get<std::string>() +
                             "' in '" + target.name + "'");
      }
      out.push_back(*idx);
    }
    return out;
  }

  void parse_hieragents() {
    const Json* sec = section("hieragents");
    if (!sec) return;
    for (const auto& j : *sec) {
      const std::string name = str_field(j, "name", "hieragents entry");
      const std::string where = "hieragents['" + name + "']";
      auto tables = std::make_shared<HierTables>();
      tables->states = finset_ref(field(j, "states", where), where + ".states");
      tables->b_set = finset_ref(field(j, "B", where), where + ".B");
      tables->c_set = finset_ref(field(j, "C", where), where + ".C");
      tables->d_set = finset_ref(field(j, "D", where), where + ".D");
      tables->e_set = finset_ref(field(j, "E", where), where + ".E");
      tables->o_set = finset_ref(field(j, "O", where), where + ".O");
      tables->a_set = finset_ref(field(j, "A", where), where + ".A");
      const std::size_t ns = tables->states.size();
      const std::size_t nb = tables->b_set.size();
      const std::size_t nd = tables->d_set.size();
      const std::size_t no = tables->o_set.size();
      const std::size_t na = tables->a_set.size();
      const std::size_t nc = tables->c_set.size();
      const std::size_t ne = tables->e_set.size();
      try {
        tables->likelihood = label_table(field(j, "likelihood", where), tables->o_set,
                                         ns * nb * nd, where + ".likelihood");
        auto low_left = label_table(field(j, "low_action_left", where), tables->c_set,
                                    ns * nb * nd * na, where + ".low_action_left");
        auto low_right = label_table(field(j, "low_action_right", where), tables->e_set,
                                     ns * nb * nd * na, where + ".low_action_right");
        FinSet trans_dom = product(where + ".trans_dom",
                                   {tables->states, tables->b_set, tables->d_set,
                                    tables->a_set});
        tables->transition = make_channel(
            std::move(trans_dom), tables->states,
            field(j, "transition", where).get<std::vector<std::vector<double>>>());
        tables->gen_left = label_table(field(j, "gen_left", where), tables->b_set,
                                       ns * no, where + ".gen_left");
        tables->gen_right = label_table(field(j, "gen_right", where), tables->d_set,
                                        ns * no, where + ".gen_right");
        tables->high_policy = label_table(field(j, "high_policy", where), tables->a_set,
                                          ns * no * nc * ne, where + ".high_policy");
        const std::string inference = str_field(j, "inference", where);
        if (inference != "bayes") {
          throw ParseError(where + ".inference: unknown kind '" + inference + "'");
        }
        Dist prior =
            make_dist(tables->states, field(j, "prior", where).get<std::vector<double>>());
        Dist prefs = make_dist(tables->o_set,
                               field(j, "preferences", where).get<std::vector<double>>());
        out_.hieragents.emplace(
            name, build_table_hier_agent(tables, std::move(prior), std::move(prefs),
                                         std::move(low_left), std::move(low_right)));
      } catch (const InvariantViolation& e) {
        throw InvariantViolation(where + ": " + e.what());
      }
    }
  }

  void parse_experiments() {
    const Json* sec = section("experiments");
    if (!sec) return;
    for (const auto& j : *sec) {
      Experiment e;
      e.name = str_field(j, "name", "experiments entry");
      const std::string where = "experiments['" + e.name + "']";
      e.kind = str_field(j, "kind", where);
      if (const auto it = j.find("T"); it != j.end()) e.steps = it->get<std::size_t>();
      if (const auto it = j.find("horizon"); it != j.end()) {
        e.horizon = it->get<std::size_t>();
      }
      if (const auto it = j.find("seed"); it != j.end()) {
        e.seed = it->get<std::uint64_t>();
      }
      if (const auto it = j.find("trajectories"); it != j.end()) {
        e.trajectories = it->get<std::size_t>();
      }
      if (e.kind == "unroll") {
        e.system = str_field(j, "system", where);
        resolve(out_.systems, e.system, where + ".system", "gensystem");
        if (const auto it = j.find("mode"); it != j.end()) {
          e.mode = it->get<std::string>();
        }
        if (e.mode != "exact" && e.mode != "sample") {
          throw ParseError(where + ".mode must be 'exact' or 'sample'");
        }
      } else if (e.kind == "simulate") {
        e.agent = str_field(j, "agent", where);
        e.env = str_field(j, "env", where);
        resolve(out_.agents, e.agent, where + ".agent", "agent");
        resolve(out_.systems, e.env, where + ".env", "gensystem");
      } else if (e.kind == "plan") {
        e.agent = str_field(j, "agent", where);
        resolve(out_.agents, e.agent, where + ".agent", "agent");
        e.position = str_field(j, "position", where);
        if (const auto it = j.find("belief"); it != j.end()) {
          e.belief = it->get<std::vector<double>>();
        }
      } else if (e.kind == "compose") {
        if (const auto it = j.find("chain"); it != j.end()) {
          e.chain = it->get<std::vector<std::string>>();
          if (e.chain.empty()) throw ParseError(where + ".chain must be nonempty");
          resolve(out_.agents, e.chain[0], where + ".chain", "agent");
          for (std::size_t k = 1; k < e.chain.size(); ++k) {
            resolve(out_.hieragents, e.chain[k], where + ".chain", "hieragent");
          }
        } else {
          e.manager = str_field(j, "manager", where);
          e.left = str_field(j, "left", where);
          e.right = str_field(j, "right", where);
          resolve(out_.hieragents, e.manager, where + ".manager", "hieragent");
          resolve(out_.agents, e.left, where + ".left", "agent");
          resolve(out_.agents, e.right, where + ".right", "agent");
        }
      } else {
        throw ParseError(where + ": unknown kind '" + e.kind + "'");
      }
      out_.experiments.push_back(std::move(e));
    }
  }

  const Json& root_;
  Scenario out_;
};

}  // namespace

const Experiment& Scenario::experiment(const std::string& name) const {
  for (const auto& e : experiments) {
    if (e.name == name) return e;
  }
  throw ReferenceError("no experiment named '" + name + "'");
}

Scenario parse_scenario(const Json& j) { return Parser(j).run(); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Scenario load_scenario(const std::string& path) {
  const std::string bytes = read_file(path);
  Json j;
  try {
    j = Json::parse(bytes);
  } catch (const Json::parse_error& e) {
    throw ParseError("scenario '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_scenario(j);
}

}  // namespace polyagent
