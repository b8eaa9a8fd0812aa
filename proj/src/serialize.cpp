#include "polyagent/serialize.hpp"

#include <cstdint>

namespace polyagent {

namespace {

const Json& field(const Json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw ParseError("missing field '" + std::string(key) + "' in " + j.dump());
  }
  return *it;
}

}  // namespace

Json to_json(const FinSet& s) {
  return Json{{"name", s.name}, {"elements", s.elements}};
}

FinSet finset_from_json(const Json& j) {
  FinSet s;
  s.name = field(j, "name").get<std::string>();
  s.elements = field(j, "elements").get<std::vector<std::string>>();
  validate_finset(s);
  return s;
}

Json to_json(const Polynomial& p) {
  Json dirs = Json::array();
  for (const auto& d : p.directions) dirs.push_back(to_json(d));
  return Json{{"positions", to_json(p.positions)}, {"directions", dirs}};
}

Polynomial poly_from_json(const Json& j) {
  Polynomial p;
  p.positions = finset_from_json(field(j, "positions"));
  for (const auto& d : field(j, "directions")) p.directions.push_back(finset_from_json(d));
  validate_poly(p);
  return p;
}

Json to_json(const Lens& l) {
  return Json{{"dom", to_json(l.dom)},
              {"cod", to_json(l.cod)},
              {"fwd", l.fwd},
              {"bwd", l.bwd}};
}

Lens lens_from_json(const Json& j) {
  Lens l;
  l.dom = poly_from_json(field(j, "dom"));
  l.cod = poly_from_json(field(j, "cod"));
  l.fwd = field(j, "fwd").get<std::vector<std::size_t>>();
  l.bwd = field(j, "bwd").get<std::vector<std::vector<std::size_t>>>();
  validate_lens(l);
  return l;
}

Json to_json(const FinCategory& c) {
  Json morphisms = Json::array();
  for (const auto& m : c.morphisms) {
    morphisms.push_back(Json{{"label", m.label},
                             {"dom", c.objects.label(m.dom)},
                             {"cod", c.objects.label(m.cod)}});
  }
  Json compose = Json::array();
  for (std::size_t f = 0; f < c.morphisms.size(); ++f) {
    for (std::size_t g = 0; g < c.morphisms.size(); ++g) {
      if (c.then_table[f][g] == FinCategory::kUndefined) continue;
      compose.push_back(Json{{"first", c.morphisms[f].label},
                             {"then", c.morphisms[g].label},
                             {"equals", c.morphisms[c.then_table[f][g]].label}});
    }
  }
  Json identities = Json::object();
  for (std::size_t x = 0; x < c.identities.size(); ++x) {
    identities[c.objects.label(x)] = c.morphisms[c.identities[x]].label;
  }
  return Json{{"objects", to_json(c.objects)},
              {"morphisms", morphisms},
              {"identities", identities},
              {"compose", compose}};
}

Json to_json(const Dist& d) {
  return Json{{"carrier", to_json(d.carrier)}, {"mass", d.mass}};
}

Dist dist_from_json(const Json& j) {
  return make_dist(finset_from_json(field(j, "carrier")),
                   field(j, "mass").get<std::vector<double>>());
}

Json to_json(const Channel& c) {
  return Json{{"dom", to_json(c.dom)}, {"cod", to_json(c.cod)}, {"rows", c.rows}};
}

Channel channel_from_json(const Json& j) {
  return make_channel(finset_from_json(field(j, "dom")),
                      finset_from_json(field(j, "cod")),
                      field(j, "rows").get<std::vector<std::vector<double>>>());
}

Json to_json(const GenSystem& g) {
  std::vector<std::string> out_labels;
  out_labels.reserve(g.out.size());
  for (std::size_t o : g.out) out_labels.push_back(g.iface.positions.label(o));
  return Json{{"iface", to_json(g.iface)},
              {"states", to_json(g.states)},
              {"out", out_labels},
              {"upd", g.upd.rows}};
}

GenSystem gen_from_json(const Json& j) {
  Polynomial iface = poly_from_json(field(j, "iface"));
  FinSet states = finset_from_json(field(j, "states"));
  std::vector<std::size_t> out;
  for (const auto& label : field(j, "out")) {
    out.push_back(iface.positions.index_of(label.get<std::string>()));
  }
  FlatDomain fd = flat_domain(iface, states, out);
  Channel upd = make_channel(fd.carrier, states,
                             field(j, "upd").get<std::vector<std::vector<double>>>());
  return make_gen_system(std::move(iface), std::move(states), std::move(out),
                         std::move(upd));
}

Json to_json(const PrioredGenSystem& g) {
  Json j = to_json(g.system);
  j["prior"] = g.prior.mass;
  return j;
}

PrioredGenSystem priored_from_json(const Json& j) {
  GenSystem sys = gen_from_json(j);
  Dist prior = make_dist(sys.states, field(j, "prior").get<std::vector<double>>());
  return PrioredGenSystem{std::move(sys), std::move(prior)};
}

Json to_json(const HomPolynomial& h) {
  Json lenses = Json::array();
  for (const auto& l : h.position_lenses) {
    lenses.push_back(Json{{"fwd", l.fwd}, {"bwd", l.bwd}});
  }
  return Json{{"source", to_json(h.source)},
              {"target", to_json(h.target)},
              {"underlying", to_json(h.underlying)},
              {"position_lenses", lenses}};
}

std::string canonical_dump(const Json& j) { return j.dump(); }

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t hash = 0xCBF29CE484222325ull;
  for (unsigned char b : bytes) {
    hash ^= b;
    hash *= 0x100000001B3ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (std::size_t i = 0; i < 16; ++i) {
    out[15 - i] = hex[hash & 0xF];
    hash >>= 4;
  }
  return out;
}

}  // namespace polyagent
