#include "polyagent/laws.hpp"

#include <algorithm>
#include <cmath>

namespace polyagent::laws {

namespace {

// Lens equality on tables only, ignoring carrier labels. Used where two
// constructions agree up to a canonical relabeling of flat layouts.
bool table_equal(const Lens& a, const Lens& b) {
  return a.fwd == b.fwd && a.bwd == b.bwd;
}

double matrix_residual(const std::vector<std::vector<double>>& a,
                       const std::vector<std::vector<double>>& b) {
  if (a.size() != b.size()) return 1.0;
  double r = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return 1.0;
    for (std::size_t j = 0; j < a[i].size(); ++j) {
      r = std::max(r, std::abs(a[i][j] - b[i][j]));
    }
  }
  return r;
}

bool matrix_identical(const std::vector<std::vector<double>>& a,
                      const std::vector<std::vector<double>>& b) {
  return a == b;
}

std::size_t pick(Rng& rng, std::size_t n) {
  return static_cast<std::size_t>(rng.next_u64() % n);
}

}  // namespace

Polynomial random_poly(Rng& rng, std::size_t max_positions,
                       std::size_t max_directions, bool allow_empty_dirs) {
  const std::size_t n = 1 + pick(rng, max_positions);
  Polynomial p;
  p.positions.name = "P";
  for (std::size_t i = 0; i < n; ++i) {
    p.positions.elements.push_back("i" + std::to_string(i));
    const std::size_t lo = allow_empty_dirs ? 0 : 1;
    const std::size_t d = lo + pick(rng, max_directions + 1 - lo);
    FinSet dirs;
    dirs.name = "P[i" + std::to_string(i) + "]";
    for (std::size_t k = 0; k < d; ++k) dirs.elements.push_back("d" + std::to_string(k));
    p.directions.push_back(std::move(dirs));
  }
  return p;
}

std::optional<Lens> random_lens(Rng& rng, const Polynomial& p, const Polynomial& q) {
  Lens l;
  l.dom = p;
  l.cod = q;
  l.fwd.resize(p.num_positions());
  l.bwd.resize(p.num_positions());
  for (std::size_t i = 0; i < p.num_positions(); ++i) {
    std::vector<std::size_t> targets;
    for (std::size_t j = 0; j < q.num_positions(); ++j) {
      if (p.dir(i).size() > 0 || q.dir(j).size() == 0) targets.push_back(j);
    }
    if (targets.empty()) return std::nullopt;
    const std::size_t j = targets[pick(rng, targets.size())];
    l.fwd[i] = j;
    l.bwd[i].resize(q.dir(j).size());
    for (auto& v : l.bwd[i]) v = pick(rng, std::max<std::size_t>(p.dir(i).size(), 1));
  }
  return l;
}

Dist random_dist(Rng& rng, FinSet carrier) {
  std::vector<double> mass(carrier.size());
  double sum = 0.0;
  for (auto& m : mass) {
    m = rng.next_unit() + 1e-3;
    sum += m;
  }
  for (auto& m : mass) m /= sum;
  return make_dist(std::move(carrier), std::move(mass));
}

Channel random_channel(Rng& rng, FinSet dom, FinSet cod) {
  std::vector<std::vector<double>> rows;
  rows.reserve(dom.size());
  for (std::size_t x = 0; x < dom.size(); ++x) {
    std::vector<double> row(cod.size());
    double sum = 0.0;
    for (auto& m : row) {
      m = rng.next_unit() + 1e-3;
      sum += m;
    }
    for (auto& m : row) m /= sum;
    rows.push_back(std::move(row));
  }
  return make_channel(std::move(dom), std::move(cod), std::move(rows));
}

GenSystem random_gen_system(Rng& rng, const Polynomial& iface,
                            std::size_t max_states) {
  const std::size_t n = 1 + pick(rng, max_states);
  FinSet states = range_set("S", n, "s");
  std::vector<std::size_t> out(n);
  for (auto& o : out) o = pick(rng, iface.num_positions());
  FlatDomain fd = flat_domain(iface, states, out);
  Channel upd = random_channel(rng, fd.carrier, states);
  return make_gen_system(iface, std::move(states), std::move(out), std::move(upd));
}

namespace {

// Keep drawing polynomial pairs until a lens exists between them.
struct LensDraw {
  Polynomial dom, cod;
  Lens lens;
};

LensDraw draw_lens(Rng& rng, const Sizes& sizes, bool allow_empty_dirs = true) {
  while (true) {
    Polynomial p = random_poly(rng, sizes.max_positions, sizes.max_directions,
                               allow_empty_dirs);
    Polynomial q = random_poly(rng, sizes.max_positions, sizes.max_directions,
                               allow_empty_dirs);
    if (auto l = random_lens(rng, p, q)) {
      return LensDraw{std::move(p), std::move(q), std::move(*l)};
    }
  }
}

// A composable chain p -> q -> r (-> s).
struct ChainDraw {
  Polynomial p, q, r, s;
  Lens f, g, h;
};

ChainDraw draw_chain(Rng& rng, const Sizes& sizes, bool with_third) {
  while (true) {
    Polynomial p = random_poly(rng, sizes.max_positions, sizes.max_directions);
    Polynomial q = random_poly(rng, sizes.max_positions, sizes.max_directions);
    Polynomial r = random_poly(rng, sizes.max_positions, sizes.max_directions);
    Polynomial s = random_poly(rng, sizes.max_positions, sizes.max_directions);
    auto f = random_lens(rng, p, q);
    auto g = random_lens(rng, q, r);
    if (!f || !g) continue;
    if (!with_third) {
      return ChainDraw{std::move(p), std::move(q), std::move(r), std::move(s),
                       std::move(*f), std::move(*g), Lens{}};
    }
    auto h = random_lens(rng, r, s);
    if (!h) continue;
    return ChainDraw{std::move(p), std::move(q), std::move(r), std::move(s),
                     std::move(*f), std::move(*g), std::move(*h)};
  }
}

}  // namespace

LawResult poly_category_laws(Rng& rng, const Sizes& sizes) {
  LawResult res{"poly-category-laws", true, 0.0, ""};
  for (std::size_t it = 0; it < sizes.iterations; ++it) {
    const ChainDraw c = draw_chain(rng, sizes, true);
    const Lens left = lens_compose(lens_compose(c.f, c.g), c.h);
    const Lens right = lens_compose(c.f, lens_compose(c.g, c.h));
    if (!(left == right)) res.residual += 1.0;
    if (!(lens_compose(lens_identity(c.p), c.f) == c.f)) res.residual += 1.0;
    if (!(lens_compose(c.f, lens_identity(c.q)) == c.f)) res.residual += 1.0;
  }
  res.pass = res.residual == 0.0;
  return res;
}

LawResult tensor_functoriality(Rng& rng, const Sizes& sizes) {
  LawResult res{"tensor-functoriality", true, 0.0, ""};
  for (std::size_t it = 0; it < sizes.iterations; ++it) {
    const ChainDraw a = draw_chain(rng, sizes, false);
    const ChainDraw b = draw_chain(rng, sizes, false);
    const Lens lhs = tensor(lens_compose(a.f, a.g), lens_compose(b.f, b.g));
    const Lens rhs = lens_compose(tensor(a.f, b.f), tensor(a.g, b.g));
    if (!(lhs == rhs)) res.residual += 1.0;
    const Lens ids = tensor(lens_identity(a.p), lens_identity(b.p));
    if (!(ids == lens_identity(tensor(a.p, b.p)))) res.residual += 1.0;
  }
  res.pass = res.residual == 0.0;
  return res;
}

LawResult tensor_symmetry(Rng& rng, const Sizes& sizes) {
  LawResult res{"tensor-symmetry", true, 0.0, ""};
  for (std::size_t it = 0; it < sizes.iterations; ++it) {
    const Polynomial p = random_poly(rng, sizes.max_positions, sizes.max_directions);
    const Polynomial q = random_poly(rng, sizes.max_positions, sizes.max_directions);
    const Lens there = swap_lens(p, q);
    const Lens back = swap_lens(q, p);
    if (!table_equal(lens_compose(there, back), lens_identity(tensor(p, q)))) {
      res.residual += 1.0;
    }
  }
  res.pass = res.residual == 0.0;
  return res;
}

LawResult monomial_embedding_count(Rng& rng, const Sizes& sizes) {
  LawResult res{"monomial-embedding-count", true, 0.0, ""};
  for (std::size_t it = 0; it < sizes.iterations; ++it) {
    const std::size_t o = 1 + pick(rng, 2);
    const std::size_t i = pick(rng, 3);
    const std::size_t pp = 1 + pick(rng, 2);
    const std::size_t j = pick(rng, 3);
    const Polynomial dom = monomial(range_set("O", o, "o"), range_set("I", i, "i"));
    const Polynomial cod = monomial(range_set("Q", pp, "p"), range_set("J", j, "j"));
    std::uint64_t expect = 1;
    for (std::size_t k = 0; k < o; ++k) {
      std::uint64_t per = 0;
      std::uint64_t maps = 1;
      for (std::size_t m = 0; m < j; ++m) maps *= i;
      per = pp * maps;
      expect *= per;
    }
    const auto got = enumerate_lenses(dom, cod).size();
    if (got != expect) res.residual += 1.0;
  }
  res.pass = res.residual == 0.0;
  return res;
}

namespace {

// The action of p on a map g: X -> X', computed through term labels.
std::vector<std::size_t> apply_map(const Polynomial& p, const FinSet& x,
                                   const FinSet& x2,
                                   const std::vector<std::size_t>& g) {
  const FinSet px = poly_apply(p, x);
  const FinSet px2 = poly_apply(p, x2);
  std::vector<std::size_t> out(px.size());
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < p.num_positions(); ++i) {
    const std::size_t arity = p.dir(i).size();
    if (x.empty() && arity > 0) continue;
    std::vector<std::size_t> assign(arity, 0);
    bool done = false;
    while (!done) {
      std::string label = p.positions.label(i) + "(";
      for (std::size_t k = 0; k < arity; ++k) {
        if (k > 0) label += ",";
        label += x2.label(g[assign[k]]);
      }
      label += ")";
      out[cursor++] = px2.index_of(label);
      done = true;
      for (std::size_t k = arity; k-- > 0;) {
        if (++assign[k] < x.size()) {
          done = false;
          break;
        }
        assign[k] = 0;
      }
    }
  }
  return out;
}

}  // namespace

LawResult poly_apply_functoriality(Rng& rng, const Sizes& sizes) {
  LawResult res{"poly-apply-functoriality", true, 0.0, ""};
  for (std::size_t it = 0; it < sizes.iterations; ++it) {
    const Polynomial p = random_poly(rng, sizes.max_positions, sizes.max_directions);
    const FinSet x = range_set("X", 1 + pick(rng, 3), "x");
    const FinSet x2 = range_set("Y", 1 + pick(rng, 3), "y");
    const FinSet x3 = range_set("Z", 1 + pick(rng, 3), "z");
    std::vector<std::size_t> g(x.size()), h(x2.size());
    for (auto& v : g) v = pick(rng, x2.size());
    for (auto& v : h) v = pick(rng, x3.size());
    std::vector<std::size_t> gh(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) gh[k] = h[g[k]];
    const auto via_composite = apply_map(p, x, x3, gh);
    const auto pg = apply_map(p, x, x2, g);
    const auto ph = apply_map(p, x2, x3, h);
    std::vector<std::size_t> chained(pg.size());
    for (std::size_t k = 0; k < pg.size(); ++k) chained[k] = ph[pg[k]];
    if (via_composite != chained) res.residual += 1.0;
    // identity action
    std::vector<std::size_t> idm(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) idm[k] = k;
    const auto pid = apply_map(p, x, x, idm);
    for (std::size_t k = 0; k < pid.size(); ++k) {
      if (pid[k] != k) {
        res.residual += 1.0;
        break;
      }
    }
  }
  res.pass = res.residual == 0.0;
  return res;
}

LawResult hom_cardinality(Rng& rng, const Sizes& sizes) {
  LawResult res{"hom-cardinality", true, 0.0, ""};
  for (std::size_t it = 0; it < sizes.iterations; ++it) {
    const Polynomial p = random_poly(rng, sizes.max_positions, sizes.max_directions);
    const Polynomial q = random_poly(rng, sizes.max_positions, sizes.max_directions);
    const auto count = lens_count(p, q);
    if (!count || *count > 5000) continue;
    if (enumerate_lenses(p, q).size() != *count) res.residual += 1.0;
  }
  res.pass = res.residual == 0.0;
  return res;
}

LawResult currying_adjunction(Rng& rng, const Sizes& sizes) {
  LawResult res{"currying-adjunction", true, 0.0, ""};
  std::size_t done = 0;
  for (std::size_t it = 0; it < sizes.iterations && done < 8; ++it) {
    const Polynomial p = random_poly(rng, 2, 2);
    const Polynomial q = random_poly(rng, 2, 2);
    const Polynomial r = random_poly(rng, 2, 2);
    try {
      const HomPolynomial hom = internal_hom(q, r, 100000);
      const auto direct = enumerate_lenses(tensor(p, q), r, 100000);
      const auto curried = enumerate_lenses(p, hom.underlying, 100000);
      if (direct.size() != curried.size()) res.residual += 1.0;
      for (const Lens& phi : direct) {
        if (!(uncurry(curry(phi, p, q, hom), hom) == phi)) res.residual += 1.0;
      }
      for (const Lens& psi : curried) {
        if (!(curry(uncurry(psi, hom), p, q, hom) == psi)) res.residual += 1.0;
      }
      ++done;
    } catch (const SizeGuardExceeded&) {
      continue;
    }
  }
  if (done == 0) res.note = "skipped: all draws exceeded the enumeration guard";
  res.pass = res.residual == 0.0;
  return res;
}

LawResult evaluation_triangle(Rng& rng, const Sizes& sizes) {
  LawResult res{"evaluation-triangle", true, 0.0, ""};
  std::size_t done = 0;
  for (std::size_t it = 0; it < sizes.iterations && done < 8; ++it) {
    const Polynomial q = random_poly(rng, 2, 2);
    const Polynomial r = random_poly(rng, 2, 2);
    try {
      const HomPolynomial hom = internal_hom(q, r, 100000);
      const Lens ev = eval_lens(hom);
      const Lens back = curry(ev, hom.underlying, q, hom);
      if (!(back == lens_identity(hom.underlying))) res.residual += 1.0;
      ++done;
    } catch (const SizeGuardExceeded&) {
      continue;
    }
  }
  if (done == 0) res.note = "skipped: all draws exceeded the enumeration guard";
  res.pass = res.residual == 0.0;
  return res;
}

LawResult internal_composition_laws(Rng& rng, const Sizes& sizes) {
  (void)rng;
  (void)sizes;
  LawResult res{"internal-composition", true, 0.0, ""};
  const Polynomial y = trivial_interface();
  const Polynomial two_y = monomial(range_set("2", 2, "o"), range_set("1", 1, "a"));
  for (const Polynomial* p : {&y, &two_y}) {
    for (const Polynomial* q : {&y, &two_y}) {
      for (const Polynomial* r : {&y, &two_y}) {
        const HomPolynomial pq = internal_hom(*p, *q);
        const HomPolynomial qr = internal_hom(*q, *r);
        const HomPolynomial pr = internal_hom(*p, *r);
        const Lens comp = internal_compose(pq, qr, pr);
        // positions compose as lens_compose
        for (std::size_t a = 0; a < pq.position_lenses.size(); ++a) {
          for (std::size_t b = 0; b < qr.position_lenses.size(); ++b) {
            const std::size_t t = a * qr.position_lenses.size() + b;
            const Lens direct =
                lens_compose(pq.position_lenses[a], qr.position_lenses[b]);
            if (!(pr.position_lenses[comp.fwd[t]] == direct)) res.residual += 1.0;
          }
        }
        // unit: composing with the identity position of [p,p]
        const HomPolynomial pp = internal_hom(*p, *p);
        const std::size_t idp = pp.find_position(lens_identity(*p));
        const Lens left_unit = internal_compose(pp, pq, pq);
        for (std::size_t b = 0; b < pq.position_lenses.size(); ++b) {
          const std::size_t t = idp * pq.position_lenses.size() + b;
          if (left_unit.fwd[t] != b) res.residual += 1.0;
        }
      }
    }
  }
  res.pass = res.residual == 0.0;
  return res;
}

LawResult channel_category_laws(Rng& rng, const Sizes& sizes) {
  LawResult res{"channel-category", true, 0.0, ""};
  for (std::size_t it = 0; it < sizes.iterations; ++it) {
    const FinSet x = range_set("X", 1 + pick(rng, sizes.max_carrier), "x");
    const FinSet y = range_set("Y", 1 + pick(rng, sizes.max_carrier), "y");
    const FinSet z = range_set("Z", 1 + pick(rng, sizes.max_carrier), "z");
    const FinSet w = range_set("W", 1 + pick(rng, sizes.max_carrier), "w");
    const Channel q = random_channel(rng, x, y);
    const Channel r = random_channel(rng, y, z);
    const Channel s = random_channel(rng, z, w);
    const Channel left = channel_compose(channel_compose(q, r), s);
    const Channel right = channel_compose(q, channel_compose(r, s));
    res.residual = std::max(res.residual, matrix_residual(left.rows, right.rows));
    const Channel unit_l = channel_compose(identity_channel(x), q);
    const Channel unit_r = channel_compose(q, identity_channel(y));
    res.residual = std::max(res.residual, matrix_residual(unit_l.rows, q.rows));
    res.residual = std::max(res.residual, matrix_residual(unit_r.rows, q.rows));
  }
  res.pass = res.residual <= kLawEps;
  return res;
}

LawResult tensor_interchange(Rng& rng, const Sizes& sizes) {
  LawResult res{"tensor-interchange", true, 0.0, ""};
  for (std::size_t it = 0; it < sizes.iterations; ++it) {
    const FinSet x = range_set("X", 1 + pick(rng, 3), "x");
    const FinSet y = range_set("Y", 1 + pick(rng, 3), "y");
    const FinSet z = range_set("Z", 1 + pick(rng, 3), "z");
    const FinSet x2 = range_set("X2", 1 + pick(rng, 3), "u");
    const FinSet y2 = range_set("Y2", 1 + pick(rng, 3), "v");
    const FinSet z2 = range_set("Z2", 1 + pick(rng, 3), "t");
    const Channel q = random_channel(rng, x, y);
    const Channel q2 = random_channel(rng, y, z);
    const Channel r = random_channel(rng, x2, y2);
    const Channel r2 = random_channel(rng, y2, z2);
    const Channel lhs = channel_tensor(channel_compose(q, q2), channel_compose(r, r2));
    const Channel rhs = channel_compose(channel_tensor(q, r), channel_tensor(q2, r2));
    res.residual = std::max(res.residual, matrix_residual(lhs.rows, rhs.rows));
  }
  res.pass = res.residual <= kLawEps;
  return res;
}

LawResult bayes_oracle(Rng& rng, const Sizes& sizes) {
  LawResult res{"bayes-joint-oracle", true, 0.0, ""};
  for (std::size_t it = 0; it < sizes.iterations; ++it) {
    const FinSet s = range_set("S", 1 + pick(rng, 5), "s");
    const FinSet o = range_set("O", 1 + pick(rng, 5), "o");
    const Dist prior = random_dist(rng, s);
    const Channel like = random_channel(rng, s, o);
    const std::size_t obs = pick(rng, o.size());
    // joint-table conditioning
    std::vector<double> joint(s.size());
    double evidence = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
      joint[k] = prior.mass[k] * like.rows[k][obs];
      evidence += joint[k];
    }
    if (evidence <= kNormEps) continue;
    for (auto& m : joint) m /= evidence;
    const Dist post = bayes_posterior(prior, like, obs);
    for (std::size_t k = 0; k < s.size(); ++k) {
      res.residual = std::max(res.residual, std::abs(post.mass[k] - joint[k]));
    }
  }
  res.pass = res.residual <= kLawEps;
  return res;
}

LawResult pushforward_functoriality(Rng& rng, const Sizes& sizes) {
  LawResult res{"pushforward-functoriality", true, 0.0, ""};
  for (std::size_t it = 0; it < sizes.iterations; ++it) {
    const FinSet x = range_set("X", 1 + pick(rng, 4), "x");
    const FinSet y = range_set("Y", 1 + pick(rng, 4), "y");
    const FinSet z = range_set("Z", 1 + pick(rng, 4), "z");
    std::vector<std::size_t> f(x.size()), g(y.size());
    for (auto& v : f) v = pick(rng, y.size());
    for (auto& v : g) v = pick(rng, z.size());
    std::vector<std::size_t> gf(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) gf[k] = g[f[k]];
    const Dist d = random_dist(rng, x);
    const Dist lhs = pushforward(gf, z, d);
    const Dist rhs = pushforward(g, z, pushforward(f, y, d));
    for (std::size_t k = 0; k < z.size(); ++k) {
      res.residual = std::max(res.residual, std::abs(lhs.mass[k] - rhs.mass[k]));
    }
  }
  res.pass = res.residual <= kLawEps;
  return res;
}

LawResult gen_pseudofunctoriality(Rng& rng, const Sizes& sizes) {
  LawResult res{"gen-pseudofunctoriality", true, 0.0, ""};
  for (std::size_t it = 0; it < sizes.iterations; ++it) {
    const ChainDraw c = draw_chain(rng, sizes, false);
    const GenSystem sys = random_gen_system(rng, c.p, sizes.max_states);
    const GenSystem once = gen_rewire(lens_compose(c.f, c.g), sys);
    const GenSystem twice = gen_rewire(c.g, gen_rewire(c.f, sys));
    if (once.out != twice.out || !matrix_identical(once.upd.rows, twice.upd.rows)) {
      res.residual += 1.0;
    }
    const GenSystem idr = gen_rewire(lens_identity(c.p), sys);
    if (idr.out != sys.out || !matrix_identical(idr.upd.rows, sys.upd.rows)) {
      res.residual += 1.0;
    }
  }
  res.pass = res.residual == 0.0;
  return res;
}

LawResult rewire_preserves_morphisms(Rng& rng, const Sizes& sizes) {
  LawResult res{"rewire-preserves-morphisms", true, 0.0, ""};
  for (std::size_t it = 0; it < sizes.iterations; ++it) {
    const LensDraw d = draw_lens(rng, sizes);
    // build dst system and lift it along a random state surjection
    const GenSystem dst = random_gen_system(rng, d.dom, sizes.max_states);
    const std::size_t n_big = dst.states.size() + 1 + pick(rng, 2);
    FinSet big = range_set("T", n_big, "t");
    std::vector<std::size_t> h(n_big);
    for (std::size_t k = 0; k < n_big; ++k) {
      h[k] = k < dst.states.size() ? k : pick(rng, dst.states.size());
    }
    std::vector<std::size_t> fiber(dst.states.size(), 0);
    for (std::size_t k : h) fiber[k]++;
    std::vector<std::size_t> out_a(n_big);
    for (std::size_t k = 0; k < n_big; ++k) out_a[k] = dst.out[h[k]];
    FlatDomain fd = flat_domain(d.dom, big, out_a);
    std::vector<std::vector<double>> rows;
    rows.reserve(fd.carrier.size());
    for (std::size_t k = 0; k < n_big; ++k) {
      const std::size_t n_dirs = d.dom.dir(out_a[k]).size();
      for (std::size_t dir = 0; dir < n_dirs; ++dir) {
        const auto& brow = dst.upd.rows[dst.flat_index(h[k], dir)];
        std::vector<double> row(n_big, 0.0);
        for (std::size_t k2 = 0; k2 < n_big; ++k2) {
          row[k2] = brow[h[k2]] / static_cast<double>(fiber[h[k2]]);
        }
        rows.push_back(std::move(row));
      }
    }
    const GenSystem src =
        make_gen_system(d.dom, big, out_a, make_channel(fd.carrier, big, std::move(rows)));
    const Channel quot = dirac_channel(h, big, dst.states);
    const MorphismCheck before = check_system_morphism(quot, src, dst);
    const MorphismCheck after =
        check_system_morphism(quot, gen_rewire(d.lens, src), gen_rewire(d.lens, dst));
    res.residual = std::max({res.residual, before.residual, after.residual});
  }
  res.pass = res.residual <= kMorphismEps;
  return res;
}

LawResult laxator_coherence(Rng& rng, const Sizes& sizes) {
  LawResult res{"laxator-coherence", true, 0.0, ""};
  for (std::size_t it = 0; it < sizes.iterations / 5 + 1; ++it) {
    const Polynomial p = random_poly(rng, 2, 2);
    const Polynomial q = random_poly(rng, 2, 2);
    const Polynomial r = random_poly(rng, 2, 2);
    const GenSystem a = random_gen_system(rng, p, 2);
    const GenSystem b = random_gen_system(rng, q, 2);
    const GenSystem c = random_gen_system(rng, r, 2);
    const GenSystem left = gen_parallel(gen_parallel(a, b), c);
    const GenSystem right = gen_parallel(a, gen_parallel(b, c));
    if (left.out != right.out) res.residual += 1.0;
    res.residual =
        std::max(res.residual, matrix_residual(left.upd.rows, right.upd.rows));
    // unit: the one-state trivial system
    FinSet one{"1", {"*"}};
    const Polynomial y = trivial_interface();
    FlatDomain fd = flat_domain(y, one, {0});
    const GenSystem unit =
        make_gen_system(y, one, {0}, make_channel(fd.carrier, one, {{1.0}}));
    const GenSystem au = gen_parallel(a, unit);
    if (au.out != a.out) res.residual += 1.0;
    res.residual = std::max(res.residual, matrix_residual(au.upd.rows, a.upd.rows));
  }
  res.pass = res.residual <= kLawEps;
  return res;
}

LawResult unroll_consistency(Rng& rng, const Sizes& sizes) {
  LawResult res{"unroll-consistency", true, 0.0, ""};
  const Polynomial y = trivial_interface();
  const GenSystem sys = random_gen_system(rng, y, sizes.max_carrier);
  const Dist prior = random_dist(rng, sys.states);
  const PrioredGenSystem ps{sys, prior};
  const std::size_t steps = 10;
  const auto exact = closed_unroll_exact(ps, steps);
  std::vector<std::vector<double>> counts(steps + 1,
                                          std::vector<double>(sys.states.size(), 0.0));
  const std::size_t n = sizes.sample_trajectories;
  const std::uint64_t seed = rng.next_u64();
  for (std::size_t k = 0; k < n; ++k) {
    const auto traj = closed_unroll_sample(ps, steps, derive_stream_seed(seed, k));
    for (std::size_t t = 0; t <= steps; ++t) counts[t][traj[t]] += 1.0;
  }
  for (std::size_t t = 0; t <= steps; ++t) {
    double tv = 0.0;
    for (std::size_t s = 0; s < sys.states.size(); ++s) {
      tv += std::abs(counts[t][s] / static_cast<double>(n) - exact[t].mass[s]);
    }
    res.residual = std::max(res.residual, 0.5 * tv);
  }
  res.pass = res.residual <= 0.02;
  return res;
}

LawResult filter_equivalence(Rng& rng, const Sizes& sizes) {
  LawResult res{"filter-equivalence", true, 0.0, ""};
  for (std::size_t it = 0; it < 10; ++it) {
    const Polynomial p =
        random_poly(rng, sizes.max_positions, sizes.max_directions, false);
    const GenSystem sys = random_gen_system(rng, p, sizes.max_states);
    const Dist prior = random_dist(rng, sys.states);
    const Dist prefs = random_dist(rng, p.positions);
    const PrioredGenSystem model{sys, prior};
    const Agent agent = make_agent(model, prefs, 1);
    const std::size_t steps = 4;
    const auto episode = simulate_episode(agent, model, steps, rng.next_u64());
    // forward filter over the same observation/action sequence
    Dist belief = prior;
    for (std::size_t t = 0; t < episode.size(); ++t) {
      const Dist filtered = condition_on_position(sys, belief, episode[t].position);
      res.residual = std::max(res.residual, total_variation(filtered, episode[t].belief));
      if (!episode[t].direction) break;
      belief = predict_step(sys, filtered, episode[t].position, *episode[t].direction);
    }
  }
  res.pass = res.residual <= 1e-9;
  return res;
}

LawResult groth_categoricity(Rng& rng, const Sizes& sizes) {
  (void)sizes;
  LawResult res{"groth-categoricity", true, 0.0, ""};
  const Polynomial two_y = monomial(range_set("O", 2, "o"), range_set("A", 1, "a"));
  const GenSystem base = random_gen_system(rng, two_y, 2);
  const GrothObject obj1{two_y, base};
  const GrothObject obj2{two_y, base};
  const auto morphisms = enumerate_groth_morphisms(obj1, obj2, true, 10000);
  bool has_identity = false;
  for (const auto& m : morphisms) {
    const MorphismCheck check = check_groth_morphism(obj1, obj2, m);
    res.residual = std::max(res.residual, check.residual);
    if (m.lens == lens_identity(two_y) &&
        matrix_identical(m.chan.rows, identity_channel(base.states).rows)) {
      has_identity = true;
    }
    // composites of valid morphisms must validate
    for (const auto& m2 : morphisms) {
      try {
        const MorphismCheck cc = check_groth_morphism(obj1, obj2, groth_compose(m, m2));
        res.residual = std::max(res.residual, cc.residual);
      } catch (const IncompatibleOutputs&) {
        res.residual += 1.0;
      }
    }
  }
  if (!has_identity) res.residual += 1.0;
  res.pass = res.residual <= kLawEps;
  return res;
}

std::vector<LawResult> run_all(std::uint64_t seed, const Sizes& sizes) {
  std::vector<LawResult> out;
  std::size_t stream = 0;
  const auto run = [&](auto&& suite) {
    Rng rng = Rng::stream(seed, stream++);
    out.push_back(suite(rng, sizes));
  };
  run([&](Rng& r, const Sizes& s) { return poly_category_laws(r, s); });
  run([&](Rng& r, const Sizes& s) { return tensor_functoriality(r, s); });
  run([&](Rng& r, const Sizes& s) { return tensor_symmetry(r, s); });
  run([&](Rng& r, const Sizes& s) { return monomial_embedding_count(r, s); });
  run([&](Rng& r, const Sizes& s) { return poly_apply_functoriality(r, s); });
  run([&](Rng& r, const Sizes& s) { return hom_cardinality(r, s); });
  run([&](Rng& r, const Sizes& s) { return currying_adjunction(r, s); });
  run([&](Rng& r, const Sizes& s) { return evaluation_triangle(r, s); });
  run([&](Rng& r, const Sizes& s) { return internal_composition_laws(r, s); });
  run([&](Rng& r, const Sizes& s) { return channel_category_laws(r, s); });
  run([&](Rng& r, const Sizes& s) { return tensor_interchange(r, s); });
  run([&](Rng& r, const Sizes& s) { return bayes_oracle(r, s); });
  run([&](Rng& r, const Sizes& s) { return pushforward_functoriality(r, s); });
  run([&](Rng& r, const Sizes& s) { return gen_pseudofunctoriality(r, s); });
  run([&](Rng& r, const Sizes& s) { return rewire_preserves_morphisms(r, s); });
  run([&](Rng& r, const Sizes& s) { return laxator_coherence(r, s); });
  run([&](Rng& r, const Sizes& s) { return unroll_consistency(r, s); });
  run([&](Rng& r, const Sizes& s) { return filter_equivalence(r, s); });
  run([&](Rng& r, const Sizes& s) { return groth_categoricity(r, s); });
  return out;
}

}  // namespace polyagent::laws
