#include "polyagent/gen.hpp"

#include <cmath>

#include "polyagent/rng.hpp"

namespace polyagent {

FlatDomain flat_domain(const Polynomial& iface, const FinSet& states,
                       const std::vector<std::size_t>& out) {
  if (out.size() != states.size()) {
    throw InvariantViolation("output map does not cover the state carrier");
  }
  FlatDomain fd;
  fd.carrier.name = "Sum(" + states.name + ")";
  fd.offsets.reserve(states.size());
  for (std::size_t s = 0; s < states.size(); ++s) {
    if (out[s] >= iface.num_positions()) {
      throw InvariantViolation("output map out of range at state '" +
                               states.label(s) + "'");
    }
    fd.offsets.push_back(fd.carrier.elements.size());
    const FinSet& dirs = iface.dir(out[s]);
    for (std::size_t d = 0; d < dirs.size(); ++d) {
      fd.carrier.elements.push_back("(" + states.label(s) + "," + dirs.label(d) + ")");
    }
  }
  return fd;
}

void validate_moore(const MooreSystem& m) {
  const FlatDomain fd = flat_domain(m.iface, m.states, m.out);
  if (m.upd.size() != fd.carrier.size()) {
    throw InvariantViolation("Moore update does not cover the flat domain");
  }
  for (std::size_t s : m.upd) {
    if (s >= m.states.size()) {
      throw InvariantViolation("Moore update maps outside the state carrier");
    }
  }
}

GenSystem make_gen_system(Polynomial iface, FinSet states,
                          std::vector<std::size_t> out, Channel upd) {
  FlatDomain fd = flat_domain(iface, states, out);
  if (upd.dom.size() != fd.carrier.size()) {
    throw InvariantViolation("update channel domain has " +
                             std::to_string(upd.dom.size()) + " elements, flat domain has " +
                             std::to_string(fd.carrier.size()));
  }
  if (upd.cod != states) {
    throw InvariantViolation("update channel codomain is not the state carrier");
  }
  upd.dom = std::move(fd.carrier);  // adopt the canonical labels
  GenSystem g;
  g.iface = std::move(iface);
  g.states = std::move(states);
  g.out = std::move(out);
  g.upd = std::move(upd);
  g.offsets = std::move(fd.offsets);
  return g;
}

PrioredGenSystem attach_prior(GenSystem system, Dist prior) {
  if (prior.carrier != system.states) {
    throw CarrierMismatch("prior carrier is not the system's state carrier");
  }
  return PrioredGenSystem{std::move(system), std::move(prior)};
}

GenSystem forget_prior(const PrioredGenSystem& ps) { return ps.system; }

GenSystem moore_to_gen(const MooreSystem& m) {
  validate_moore(m);
  FlatDomain fd = flat_domain(m.iface, m.states, m.out);
  Channel upd = dirac_channel(m.upd, fd.carrier, m.states);
  return make_gen_system(m.iface, m.states, m.out, std::move(upd));
}

MooreSystem moore_rewire(const Lens& phi, const MooreSystem& m) {
  if (phi.dom != m.iface) {
    throw InterfaceMismatch("moore_rewire: lens domain is not the machine interface");
  }
  MooreSystem r;
  r.iface = phi.cod;
  r.states = m.states;
  r.out.reserve(m.states.size());
  for (std::size_t s = 0; s < m.states.size(); ++s) r.out.push_back(phi.fwd[m.out[s]]);
  const FlatDomain fd_old = flat_domain(m.iface, m.states, m.out);
  for (std::size_t s = 0; s < m.states.size(); ++s) {
    const std::size_t new_pos = r.out[s];
    const std::size_t n_dirs = phi.cod.dir(new_pos).size();
    for (std::size_t d = 0; d < n_dirs; ++d) {
      const std::size_t back = phi.bwd[m.out[s]][d];
      r.upd.push_back(m.upd[fd_old.offsets[s] + back]);
    }
  }
  return r;
}

GenSystem gen_rewire(const Lens& phi, const GenSystem& sys) {
  if (phi.dom != sys.iface) {
    throw InterfaceMismatch("gen_rewire: lens domain is not the system interface");
  }
  std::vector<std::size_t> out_new(sys.states.size());
  for (std::size_t s = 0; s < sys.states.size(); ++s) out_new[s] = phi.fwd[sys.out[s]];
  FlatDomain fd_new = flat_domain(phi.cod, sys.states, out_new);
  // reindexing (s, d in q[phi(out s)]) -> (s, phi_bwd(d) in p[out s])
  std::vector<std::size_t> pullback;
  pullback.reserve(fd_new.carrier.size());
  for (std::size_t s = 0; s < sys.states.size(); ++s) {
    const std::size_t n_dirs = phi.cod.dir(out_new[s]).size();
    for (std::size_t d = 0; d < n_dirs; ++d) {
      pullback.push_back(sys.flat_index(s, phi.bwd[sys.out[s]][d]));
    }
  }
  Channel reindex = dirac_channel(pullback, fd_new.carrier, sys.upd.dom);
  Channel upd_new = channel_compose(reindex, sys.upd);
  return make_gen_system(phi.cod, sys.states, std::move(out_new), std::move(upd_new));
}

GenSystem gen_parallel(const GenSystem& a, const GenSystem& b) {
  Polynomial iface = tensor(a.iface, b.iface);
  FinSet states = product(a.states, b.states);
  std::vector<std::size_t> out;
  out.reserve(states.size());
  const std::size_t b_positions = b.iface.num_positions();
  for (std::size_t s = 0; s < a.states.size(); ++s) {
    for (std::size_t t = 0; t < b.states.size(); ++t) {
      out.push_back(a.out[s] * b_positions + b.out[t]);
    }
  }
  FlatDomain fd = flat_domain(iface, states, out);
  std::vector<std::vector<double>> rows;
  rows.reserve(fd.carrier.size());
  for (std::size_t s = 0; s < a.states.size(); ++s) {
    const std::size_t da = a.iface.dir(a.out[s]).size();
    for (std::size_t t = 0; t < b.states.size(); ++t) {
      const std::size_t db = b.iface.dir(b.out[t]).size();
      for (std::size_t x = 0; x < da; ++x) {
        const auto& row_a = a.upd.rows[a.flat_index(s, x)];
        for (std::size_t y = 0; y < db; ++y) {
          const auto& row_b = b.upd.rows[b.flat_index(t, y)];
          std::vector<double> row;
          row.reserve(states.size());
          for (double pa : row_a) {
            for (double pb : row_b) row.push_back(pa * pb);
          }
          rows.push_back(std::move(row));
        }
      }
    }
  }
  Channel upd = make_channel(fd.carrier, states, std::move(rows));
  return make_gen_system(std::move(iface), std::move(states), std::move(out),
                         std::move(upd));
}

MorphismCheck check_system_morphism(const Channel& f, const GenSystem& a,
                                    const GenSystem& b, double eps) {
  if (a.iface != b.iface) {
    throw InterfaceMismatch("system morphism requires a shared interface");
  }
  if (f.dom != a.states || f.cod != b.states) {
    throw CarrierMismatch("morphism channel endpoints do not match the systems");
  }
  // (f x id) is only typed when f-reachable states agree on output position
  for (std::size_t s = 0; s < a.states.size(); ++s) {
    for (std::size_t s2 = 0; s2 < b.states.size(); ++s2) {
      if (f.rows[s][s2] > 0.0 && b.out[s2] != a.out[s]) {
        throw IncompatibleOutputs("channel carries mass from '" + a.states.label(s) +
                                  "' (position '" +
                                  a.iface.positions.label(a.out[s]) + "') to '" +
                                  b.states.label(s2) + "' (position '" +
                                  b.iface.positions.label(b.out[s2]) + "')");
      }
    }
  }
  double residual = 0.0;
  for (std::size_t s = 0; s < a.states.size(); ++s) {
    const std::size_t n_dirs = a.iface.dir(a.out[s]).size();
    for (std::size_t d = 0; d < n_dirs; ++d) {
      const auto& row_a = a.upd.rows[a.flat_index(s, d)];
      for (std::size_t s2 = 0; s2 < b.states.size(); ++s2) {
        // lhs: (f . upd_a)(s2 | s, d)
        double lhs = 0.0;
        for (std::size_t m = 0; m < a.states.size(); ++m) lhs += row_a[m] * f.rows[m][s2];
        // rhs: (upd_b . (f x id))(s2 | s, d)
        double rhs = 0.0;
        for (std::size_t m = 0; m < b.states.size(); ++m) {
          const double fm = f.rows[s][m];
          if (fm == 0.0) continue;
          rhs += fm * b.upd.rows[b.flat_index(m, d)][s2];
        }
        residual = std::max(residual, std::abs(lhs - rhs));
      }
    }
  }
  return MorphismCheck{residual <= eps, residual};
}

MorphismCheck check_priored_morphism(const Channel& f, const PrioredGenSystem& a,
                                     const PrioredGenSystem& b, double eps) {
  MorphismCheck base = check_system_morphism(f, a.system, b.system, eps);
  const Dist pushed = push_through(f, a.prior);
  for (std::size_t s2 = 0; s2 < b.prior.mass.size(); ++s2) {
    base.residual = std::max(base.residual, std::abs(pushed.mass[s2] - b.prior.mass[s2]));
  }
  base.ok = base.residual <= eps;
  return base;
}

GenSystem fold_likelihood(const FinSet& states, const Polynomial& iface,
                          const Channel& trans, const Channel& like) {
  if (like.dom != states || like.cod.size() != iface.num_positions()) {
    throw CarrierMismatch("fold_likelihood: likelihood endpoints do not match");
  }
  // folded states S x p(1), output = projection to the position factor
  FinSet folded = product(states, iface.positions);
  const std::size_t n_pos = iface.num_positions();
  std::vector<std::size_t> out(folded.size());
  for (std::size_t k = 0; k < folded.size(); ++k) out[k] = k % n_pos;
  FlatDomain fd = flat_domain(iface, folded, out);
  if (trans.dom.size() != fd.carrier.size() || trans.cod != states) {
    throw CarrierMismatch("fold_likelihood: transition channel has the wrong shape");
  }
  std::vector<std::vector<double>> rows;
  rows.reserve(fd.carrier.size());
  for (std::size_t k = 0; k < folded.size(); ++k) {
    const std::size_t n_dirs = iface.dir(out[k]).size();
    for (std::size_t d = 0; d < n_dirs; ++d) {
      const auto& t_row = trans.rows[fd.offsets[k] + d];
      std::vector<double> row;
      row.reserve(folded.size());
      for (std::size_t s2 = 0; s2 < states.size(); ++s2) {
        for (std::size_t i2 = 0; i2 < n_pos; ++i2) {
          row.push_back(t_row[s2] * like.rows[s2][i2]);
        }
      }
      rows.push_back(std::move(row));
    }
  }
  Channel upd = make_channel(fd.carrier, folded, std::move(rows));
  return make_gen_system(iface, std::move(folded), std::move(out), std::move(upd));
}

namespace {

// A closed interface has exactly one position with exactly one direction.
void require_closed(const GenSystem& sys) {
  if (sys.iface.num_positions() != 1 || sys.iface.dir(0).size() != 1) {
    throw InterfaceNotClosed("system interface '" + sys.iface.positions.name +
                             "' is not the trivial interface");
  }
}

}  // namespace

std::vector<Dist> closed_unroll_exact(const PrioredGenSystem& sys, std::size_t steps) {
  require_closed(sys.system);
  std::vector<Dist> out;
  out.reserve(steps + 1);
  out.push_back(sys.prior);
  for (std::size_t t = 0; t < steps; ++t) {
    const Dist& cur = out.back();
    std::vector<double> next(cur.mass.size(), 0.0);
    for (std::size_t s = 0; s < cur.mass.size(); ++s) {
      const double m = cur.mass[s];
      if (m == 0.0) continue;
      const auto& row = sys.system.upd.rows[sys.system.flat_index(s, 0)];
      for (std::size_t s2 = 0; s2 < next.size(); ++s2) next[s2] += m * row[s2];
    }
    out.push_back(Dist{sys.prior.carrier, std::move(next)});
  }
  return out;
}

std::vector<std::size_t> closed_unroll_sample(const PrioredGenSystem& sys,
                                              std::size_t steps, std::uint64_t seed) {
  require_closed(sys.system);
  Rng rng(seed);
  std::vector<std::size_t> traj;
  traj.reserve(steps + 1);
  std::size_t s = rng.sample(sys.prior);
  traj.push_back(s);
  for (std::size_t t = 0; t < steps; ++t) {
    s = rng.sample(sys.system.upd.rows[sys.system.flat_index(s, 0)]);
    traj.push_back(s);
  }
  return traj;
}

}  // namespace polyagent
