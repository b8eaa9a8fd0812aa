#include "polyagent/meta.hpp"

#include <string>

namespace polyagent {

GrothMorphism groth_identity(const GrothObject& obj) {
  return GrothMorphism{lens_identity(obj.iface), identity_channel(obj.system.states)};
}

GrothMorphism groth_compose(const GrothMorphism& f, const GrothMorphism& g) {
  return GrothMorphism{lens_compose(f.lens, g.lens), channel_compose(f.chan, g.chan)};
}

MorphismCheck check_groth_morphism(const GrothObject& src, const GrothObject& dst,
                                   const GrothMorphism& m, double eps) {
  if (m.lens.dom != src.iface || m.lens.cod != dst.iface) {
    throw InterfaceMismatch("morphism lens endpoints do not match the objects");
  }
  const GenSystem rewired = gen_rewire(m.lens, src.system);
  return check_system_morphism(m.chan, rewired, dst.system, eps);
}

namespace {

std::vector<GrothMorphism> filter_valid(const GrothObject& src, const GrothObject& dst,
                                        const std::vector<Lens>& lenses,
                                        const std::vector<Channel>& channels) {
  std::vector<GrothMorphism> out;
  for (const Lens& lens : lenses) {
    const GenSystem rewired = gen_rewire(lens, src.system);
    for (const Channel& chan : channels) {
      try {
        const MorphismCheck check = check_system_morphism(chan, rewired, dst.system);
        if (check.ok) out.push_back(GrothMorphism{lens, chan});
      } catch (const IncompatibleOutputs&) {
        // the channel is ill-typed against this lens; not a morphism
      }
    }
  }
  return out;
}

std::vector<Channel> all_function_channels(const FinSet& dom, const FinSet& cod,
                                           std::size_t guard) {
  std::vector<Channel> out;
  if (dom.empty()) {
    out.push_back(dirac_channel({}, dom, cod));
    return out;
  }
  if (cod.empty()) return out;  // no functions into the empty set
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < dom.size(); ++i) {
    total *= cod.size();
    if (total > guard) {
      throw SizeGuardExceeded("deterministic channel search over " + dom.name +
                                  " -> " + cod.name + " exceeds the guard of " +
                                  std::to_string(guard),
                              "at least " + std::to_string(total));
    }
  }
  std::vector<std::size_t> f(dom.size(), 0);
  bool more = true;
  while (more) {
    out.push_back(dirac_channel(f, dom, cod));
    more = false;
    for (std::size_t k = f.size(); k-- > 0;) {
      if (++f[k] < cod.size()) {
        more = true;
        break;
      }
      f[k] = 0;
    }
  }
  return out;
}

// Rows with masses in multiples of 1/2: all ways to place two half-units
// on the codomain.
std::vector<std::vector<double>> half_grid_rows(std::size_t n) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      std::vector<double> row(n, 0.0);
      row[i] += 0.5;
      row[j] += 0.5;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<Channel> half_grid_channels(const FinSet& dom, const FinSet& cod,
                                        std::size_t guard) {
  std::vector<Channel> out;
  if (dom.empty()) {
    out.push_back(Channel{dom, cod, {}});
    return out;
  }
  if (dom.size() * cod.size() > guard) {
    throw SizeGuardExceeded("stochastic channel grid over " + dom.name + " -> " +
                                cod.name + " exceeds the guard of " +
                                std::to_string(guard),
                            std::to_string(dom.size() * cod.size()));
  }
  const auto rows = half_grid_rows(cod.size());
  if (rows.empty()) return out;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < dom.size(); ++i) {
    total *= rows.size();
    if (total > guard) {
      throw SizeGuardExceeded("stochastic channel grid search over " + dom.name +
                                  " -> " + cod.name + " exceeds the guard of " +
                                  std::to_string(guard),
                              "at least " + std::to_string(total));
    }
  }
  std::vector<std::size_t> pick(dom.size(), 0);
  bool more = true;
  while (more) {
    std::vector<std::vector<double>> mat;
    mat.reserve(dom.size());
    for (std::size_t i = 0; i < dom.size(); ++i) mat.push_back(rows[pick[i]]);
    out.push_back(Channel{dom, cod, std::move(mat)});
    more = false;
    for (std::size_t k = pick.size(); k-- > 0;) {
      if (++pick[k] < rows.size()) {
        more = true;
        break;
      }
      pick[k] = 0;
    }
  }
  return out;
}

}  // namespace

std::vector<GrothMorphism> enumerate_groth_morphisms(const GrothObject& src,
                                                     const GrothObject& dst,
                                                     bool deterministic_only,
                                                     std::size_t guard) {
  const std::vector<Lens> lenses = enumerate_lenses(src.iface, dst.iface, guard);
  const std::vector<Channel> channels =
      deterministic_only
          ? all_function_channels(src.system.states, dst.system.states, guard)
          : half_grid_channels(src.system.states, dst.system.states, guard);
  return filter_valid(src, dst, lenses, channels);
}

std::vector<GrothMorphism> enumerate_groth_morphisms(
    const GrothObject& src, const GrothObject& dst,
    const std::vector<Channel>& candidates, std::size_t guard) {
  const std::vector<Lens> lenses = enumerate_lenses(src.iface, dst.iface, guard);
  for (const Channel& c : candidates) {
    if (c.dom != src.system.states || c.cod != dst.system.states) {
      throw CarrierMismatch("candidate channel endpoints do not match the objects");
    }
  }
  return filter_valid(src, dst, lenses, candidates);
}

GrothHomTables build_hom_tables(const std::vector<GrothObject>& objs,
                                bool deterministic_only, std::size_t guard) {
  GrothHomTables tables;
  for (std::size_t k = 0; k < objs.size(); ++k) {
    for (std::size_t k2 = 0; k2 < objs.size(); ++k2) {
      tables[{k, k2}] =
          enumerate_groth_morphisms(objs[k], objs[k2], deterministic_only, guard);
    }
  }
  return tables;
}

namespace {

const std::vector<GrothMorphism>& table_at(const GrothHomTables& tables,
                                           std::size_t k, std::size_t k2) {
  const auto it = tables.find({k, k2});
  if (it == tables.end()) {
    throw MissingTable("no morphism table for objects " + std::to_string(k) +
                       " -> " + std::to_string(k2));
  }
  return it->second;
}

}  // namespace

Polynomial structure_agent_interface(const std::vector<GrothObject>& objs,
                                     const GrothHomTables& tables) {
  Polynomial p;
  p.positions.name = "IntGen";
  for (std::size_t k = 0; k < objs.size(); ++k) {
    // directions: every tabulated morphism out of object k, target-major
    FinSet dirs;
    dirs.name = "m" + std::to_string(k) + "-out";
    for (std::size_t k2 = 0; k2 < objs.size(); ++k2) {
      const auto& table = table_at(tables, k, k2);
      for (std::size_t idx = 0; idx < table.size(); ++idx) {
        dirs.elements.push_back("m" + std::to_string(k) + "->m" + std::to_string(k2) +
                                "#" + std::to_string(idx));
      }
    }
    const Polynomial& iface = objs[k].iface;
    for (std::size_t i = 0; i < iface.num_positions(); ++i) {
      p.positions.elements.push_back("m" + std::to_string(k) + ":" +
                                     iface.positions.label(i));
      p.directions.push_back(dirs);
    }
  }
  return p;
}

GenSystem structure_demo_system(const std::vector<GrothObject>& objs,
                                const GrothHomTables& tables) {
  const Polynomial iface = structure_agent_interface(objs, tables);
  // disjoint union of the objects' state carriers
  FinSet states;
  states.name = "SumStates";
  std::vector<std::size_t> state_offset(objs.size(), 0);
  std::vector<std::size_t> pos_offset(objs.size(), 0);
  for (std::size_t k = 0; k < objs.size(); ++k) {
    state_offset[k] = states.elements.size();
    if (k > 0) pos_offset[k] = pos_offset[k - 1] + objs[k - 1].iface.num_positions();
    for (const auto& label : objs[k].system.states.elements) {
      states.elements.push_back("m" + std::to_string(k) + ":" + label);
    }
  }
  std::vector<std::size_t> out(states.size());
  for (std::size_t k = 0; k < objs.size(); ++k) {
    for (std::size_t s = 0; s < objs[k].system.states.size(); ++s) {
      out[state_offset[k] + s] = pos_offset[k] + objs[k].system.out[s];
    }
  }
  FlatDomain fd = flat_domain(iface, states, out);
  std::vector<std::vector<double>> rows;
  rows.reserve(fd.carrier.size());
  for (std::size_t k = 0; k < objs.size(); ++k) {
    for (std::size_t s = 0; s < objs[k].system.states.size(); ++s) {
      // one row per morphism out of k, in the direction order of the iface
      for (std::size_t k2 = 0; k2 < objs.size(); ++k2) {
        const auto& table = table_at(tables, k, k2);
        for (const GrothMorphism& m : table) {
          std::vector<double> row(states.size(), 0.0);
          for (std::size_t s2 = 0; s2 < objs[k2].system.states.size(); ++s2) {
            row[state_offset[k2] + s2] = m.chan.rows[s][s2];
          }
          rows.push_back(std::move(row));
        }
      }
    }
  }
  Channel upd = make_channel(fd.carrier, states, std::move(rows));
  return make_gen_system(iface, states, out, std::move(upd));
}

}  // namespace polyagent
