#include "polyagent/hom.hpp"

#include <limits>
#include <string>

namespace polyagent {

namespace {

constexpr std::uint64_t kU64Max = std::numeric_limits<std::uint64_t>::max();

// base^exp saturating at UINT64_MAX. 0^0 = 1 (the empty map).
std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t k = 0; k < exp; ++k) {
    if (base != 0 && r > kU64Max / base) return kU64Max;
    r *= base;
    if (r == 0) return 0;
  }
  return r;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return (a > kU64Max - b) ? kU64Max : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kU64Max / b) return kU64Max;
  return a * b;
}

std::string count_string(std::optional<std::uint64_t> n) {
  return n ? std::to_string(*n) : std::string("overflow (>2^64)");
}

void check_guard(const Polynomial& p, const Polynomial& q, std::size_t guard,
                 const char* what) {
  const auto n = lens_count(p, q);
  if (!n || *n > guard) {
    throw SizeGuardExceeded(std::string(what) + " would enumerate " +
                                count_string(n) + " lenses, guard is " +
                                std::to_string(guard),
                            count_string(n));
  }
}

// Odometer step, last digit fastest. Returns false once all digits wrapped.
bool advance(std::vector<std::size_t>& digits,
             const std::vector<std::size_t>& radix) {
  for (std::size_t k = digits.size(); k-- > 0;) {
    if (++digits[k] < radix[k]) return true;
    digits[k] = 0;
  }
  return false;
}

}  // namespace

std::optional<std::uint64_t> lens_count(const Polynomial& p, const Polynomial& q) {
  std::uint64_t total = 1;
  bool saturated = false;
  for (std::size_t i = 0; i < p.num_positions(); ++i) {
    std::uint64_t per = 0;
    for (std::size_t j = 0; j < q.num_positions(); ++j) {
      const std::uint64_t maps = sat_pow(p.dir(i).size(), q.dir(j).size());
      saturated = saturated || maps == kU64Max;
      per = sat_add(per, maps);
    }
    saturated = saturated || per == kU64Max;
    total = sat_mul(total, per);
    saturated = saturated || total == kU64Max;
    if (total == 0) return 0;  // some position cannot be mapped at all
  }
  if (saturated && total == kU64Max) return std::nullopt;
  return total;
}

std::vector<Lens> enumerate_lenses(const Polynomial& p, const Polynomial& q,
                                   std::size_t guard) {
  check_guard(p, q, guard, "enumerate_lenses");
  std::vector<Lens> out;
  const std::size_t pn = p.num_positions();
  const std::size_t qn = q.num_positions();
  if (pn > 0 && qn == 0) return out;  // nowhere to send positions

  std::vector<std::size_t> fwd(pn, 0);
  const std::vector<std::size_t> fwd_radix(pn, qn);
  bool more_fwd = true;
  while (more_fwd) {
    // backward digits for this forward table: one per (i, cod direction)
    std::vector<std::size_t> radix;
    bool feasible = true;
    for (std::size_t i = 0; i < pn && feasible; ++i) {
      const std::size_t cod_dirs = q.dir(fwd[i]).size();
      const std::size_t dom_dirs = p.dir(i).size();
      if (cod_dirs > 0 && dom_dirs == 0) feasible = false;
      for (std::size_t k = 0; k < cod_dirs; ++k) radix.push_back(dom_dirs);
    }
    if (feasible) {
      std::vector<std::size_t> digits(radix.size(), 0);
      bool more_bwd = true;
      while (more_bwd) {
        Lens l;
        l.dom = p;
        l.cod = q;
        l.fwd = fwd;
        l.bwd.resize(pn);
        std::size_t cursor = 0;
        for (std::size_t i = 0; i < pn; ++i) {
          const std::size_t cod_dirs = q.dir(fwd[i]).size();
          l.bwd[i].assign(digits.begin() + cursor, digits.begin() + cursor + cod_dirs);
          cursor += cod_dirs;
        }
        out.push_back(std::move(l));
        more_bwd = advance(digits, radix);
      }
    }
    more_fwd = advance(fwd, fwd_radix);
  }
  return out;
}

std::size_t HomPolynomial::dir_offset(std::size_t phi, std::size_t i) const {
  const Lens& l = position_lenses.at(phi);
  std::size_t off = 0;
  for (std::size_t k = 0; k < i; ++k) off += target.dir(l.fwd[k]).size();
  return off;
}

std::size_t HomPolynomial::find_position(const Lens& l) const {
  for (std::size_t k = 0; k < position_lenses.size(); ++k) {
    if (position_lenses[k] == l) return k;
  }
  throw Error("lens is not a position of [" + source.positions.name + "," +
              target.positions.name + "]");
}

HomPolynomial internal_hom(const Polynomial& p, const Polynomial& q,
                           std::size_t guard) {
  HomPolynomial hom;
  hom.source = p;
  hom.target = q;
  hom.position_lenses = enumerate_lenses(p, q, guard);
  const std::string hom_name = "[" + p.positions.name + "," + q.positions.name + "]";
  hom.underlying.positions.name = hom_name;
  hom.underlying.directions.reserve(hom.position_lenses.size());
  for (std::size_t k = 0; k < hom.position_lenses.size(); ++k) {
    hom.underlying.positions.elements.push_back("phi" + std::to_string(k));
    const Lens& l = hom.position_lenses[k];
    FinSet dirs;
    dirs.name = hom_name + "[phi" + std::to_string(k) + "]";
    for (std::size_t i = 0; i < p.num_positions(); ++i) {
      const FinSet& block = q.dir(l.fwd[i]);
      for (std::size_t d = 0; d < block.size(); ++d) {
        dirs.elements.push_back("(" + p.positions.label(i) + "," + block.label(d) + ")");
      }
    }
    hom.underlying.directions.push_back(std::move(dirs));
  }
  return hom;
}

HomPolynomial dual(const Polynomial& p, std::size_t guard) {
  return internal_hom(p, trivial_interface(), guard);
}

Lens curry(const Lens& phi, const Polynomial& p, const Polynomial& q,
           const HomPolynomial& hom_qr) {
  if (phi.dom != tensor(p, q)) {
    throw InterfaceMismatch("curry: lens domain is not the given tensor");
  }
  if (hom_qr.source != q || hom_qr.target != phi.cod) {
    throw InterfaceMismatch("curry: hom endpoints do not match the lens");
  }
  const std::size_t qn = q.num_positions();
  Lens psi;
  psi.dom = p;
  psi.cod = hom_qr.underlying;
  psi.fwd.resize(p.num_positions());
  psi.bwd.resize(p.num_positions());
  for (std::size_t i = 0; i < p.num_positions(); ++i) {
    // the partial application of phi at dom position i is a lens q -> r
    Lens lam;
    lam.dom = q;
    lam.cod = phi.cod;
    lam.fwd.resize(qn);
    lam.bwd.resize(qn);
    for (std::size_t j = 0; j < qn; ++j) {
      const std::size_t t = i * qn + j;
      lam.fwd[j] = phi.fwd[t];
      const std::size_t qj = q.dir(j).size();
      lam.bwd[j].resize(phi.bwd[t].size());
      for (std::size_t d = 0; d < phi.bwd[t].size(); ++d) {
        lam.bwd[j][d] = qj == 0 ? 0 : phi.bwd[t][d] % qj;
      }
    }
    const std::size_t pos = hom_qr.find_position(lam);
    psi.fwd[i] = pos;
    // route each hom direction (j, d) back through phi's first component
    std::vector<std::size_t> row;
    row.reserve(hom_qr.underlying.dir(pos).size());
    for (std::size_t j = 0; j < qn; ++j) {
      const std::size_t t = i * qn + j;
      const std::size_t qj = q.dir(j).size();
      for (std::size_t d = 0; d < phi.bwd[t].size(); ++d) {
        row.push_back(qj == 0 ? phi.bwd[t][d] : phi.bwd[t][d] / qj);
      }
    }
    psi.bwd[i] = std::move(row);
  }
  return psi;
}

Lens curry(const Lens& phi, const Polynomial& p, const Polynomial& q,
           std::size_t guard) {
  return curry(phi, p, q, internal_hom(q, phi.cod, guard));
}

Lens uncurry(const Lens& psi, const HomPolynomial& hom_qr) {
  if (psi.cod != hom_qr.underlying) {
    throw InterfaceMismatch("uncurry: lens codomain is not the given hom");
  }
  const Polynomial& p = psi.dom;
  const Polynomial& q = hom_qr.source;
  const Polynomial& r = hom_qr.target;
  const std::size_t qn = q.num_positions();
  Lens phi;
  phi.dom = tensor(p, q);
  phi.cod = r;
  phi.fwd.resize(p.num_positions() * qn);
  phi.bwd.resize(p.num_positions() * qn);
  for (std::size_t i = 0; i < p.num_positions(); ++i) {
    const std::size_t pos = psi.fwd[i];
    const Lens& lam = hom_qr.position_lenses[pos];
    for (std::size_t j = 0; j < qn; ++j) {
      const std::size_t t = i * qn + j;
      phi.fwd[t] = lam.fwd[j];
      const std::size_t qj = q.dir(j).size();
      const std::size_t base = hom_qr.dir_offset(pos, j);
      const std::size_t rd = r.dir(lam.fwd[j]).size();
      phi.bwd[t].resize(rd);
      for (std::size_t d = 0; d < rd; ++d) {
        const std::size_t a = psi.bwd[i][base + d];  // in p[i]
        const std::size_t b = lam.bwd[j][d];         // in q[j]
        phi.bwd[t][d] = a * qj + b;
      }
    }
  }
  return phi;
}

Lens eval_lens(const HomPolynomial& hom_qr) {
  const Polynomial& q = hom_qr.source;
  const std::size_t qn = q.num_positions();
  Lens ev;
  ev.dom = tensor(hom_qr.underlying, q);
  ev.cod = hom_qr.target;
  ev.fwd.resize(hom_qr.position_lenses.size() * qn);
  ev.bwd.resize(ev.fwd.size());
  for (std::size_t k = 0; k < hom_qr.position_lenses.size(); ++k) {
    const Lens& lam = hom_qr.position_lenses[k];
    for (std::size_t j = 0; j < qn; ++j) {
      const std::size_t t = k * qn + j;
      ev.fwd[t] = lam.fwd[j];
      const std::size_t qj = q.dir(j).size();
      const std::size_t base = hom_qr.dir_offset(k, j);
      const std::size_t rd = hom_qr.target.dir(lam.fwd[j]).size();
      ev.bwd[t].resize(rd);
      for (std::size_t d = 0; d < rd; ++d) {
        ev.bwd[t][d] = (base + d) * qj + lam.bwd[j][d];
      }
    }
  }
  return ev;
}

Lens eval_lens(const Polynomial& q, const Polynomial& r, std::size_t guard) {
  return eval_lens(internal_hom(q, r, guard));
}

Lens internal_compose(const HomPolynomial& hom_pq, const HomPolynomial& hom_qr,
                      const HomPolynomial& hom_pr) {
  if (hom_pq.target != hom_qr.source || hom_pr.source != hom_pq.source ||
      hom_pr.target != hom_qr.target) {
    throw InterfaceMismatch("internal_compose: hom endpoints do not chain");
  }
  const Polynomial& p = hom_pq.source;
  const std::size_t qr_n = hom_qr.position_lenses.size();
  Lens out;
  out.dom = tensor(hom_pq.underlying, hom_qr.underlying);
  out.cod = hom_pr.underlying;
  out.fwd.resize(hom_pq.position_lenses.size() * qr_n);
  out.bwd.resize(out.fwd.size());
  for (std::size_t a = 0; a < hom_pq.position_lenses.size(); ++a) {
    const Lens& phi = hom_pq.position_lenses[a];
    for (std::size_t b = 0; b < qr_n; ++b) {
      const Lens& psi = hom_qr.position_lenses[b];
      const std::size_t t = a * qr_n + b;
      const Lens comp = lens_compose(phi, psi);
      out.fwd[t] = hom_pr.find_position(comp);
      const std::size_t qr_dirs = hom_qr.underlying.dir(b).size();
      std::vector<std::size_t> row;
      // [p,r]-directions at comp come in blocks over p positions
      for (std::size_t i = 0; i < p.num_positions(); ++i) {
        const std::size_t mid = phi.fwd[i];
        const std::size_t rd = hom_qr.target.dir(psi.fwd[mid]).size();
        const std::size_t pq_base = hom_pq.dir_offset(a, i);
        const std::size_t qr_base = hom_qr.dir_offset(b, mid);
        for (std::size_t d = 0; d < rd; ++d) {
          const std::size_t pq_dir = pq_base + psi.bwd[mid][d];
          const std::size_t qr_dir = qr_base + d;
          row.push_back(pq_dir * qr_dirs + qr_dir);
        }
      }
      out.bwd[t] = std::move(row);
    }
  }
  return out;
}

Lens internal_compose(const Polynomial& p, const Polynomial& q,
                      const Polynomial& r, std::size_t guard) {
  return internal_compose(internal_hom(p, q, guard), internal_hom(q, r, guard),
                          internal_hom(p, r, guard));
}

}  // namespace polyagent
