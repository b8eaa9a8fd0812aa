#include "polyagent/lens.hpp"

#include <algorithm>
#include <numeric>

namespace polyagent {

bool operator==(const Lens& a, const Lens& b) {
  return a.dom == b.dom && a.cod == b.cod && a.fwd == b.fwd && a.bwd == b.bwd;
}

void validate_lens(const Lens& l) {
  validate_poly(l.dom);
  validate_poly(l.cod);
  if (l.fwd.size() != l.dom.num_positions() || l.bwd.size() != l.dom.num_positions()) {
    throw InvariantViolation("lens tables do not cover every dom position");
  }
  for (std::size_t i = 0; i < l.fwd.size(); ++i) {
    if (l.fwd[i] >= l.cod.num_positions()) {
      throw InvariantViolation("lens forward map out of range at position " +
                               std::to_string(i));
    }
    const std::size_t want = l.cod.dir(l.fwd[i]).size();
    if (l.bwd[i].size() != want) {
      throw InvariantViolation("lens backward table at position " + std::to_string(i) +
                               " has " + std::to_string(l.bwd[i].size()) +
                               " entries, expected " + std::to_string(want));
    }
    for (std::size_t k : l.bwd[i]) {
      if (k >= l.dom.dir(i).size()) {
        throw InvariantViolation("lens backward map out of range at position " +
                                 std::to_string(i));
      }
    }
  }
}

Lens lens_identity(const Polynomial& p) {
  Lens l;
  l.dom = p;
  l.cod = p;
  l.fwd.resize(p.num_positions());
  std::iota(l.fwd.begin(), l.fwd.end(), 0);
  l.bwd.reserve(p.num_positions());
  for (std::size_t i = 0; i < p.num_positions(); ++i) {
    std::vector<std::size_t> row(p.dir(i).size());
    std::iota(row.begin(), row.end(), 0);
    l.bwd.push_back(std::move(row));
  }
  return l;
}

Lens lens_compose(const Lens& f, const Lens& g) {
  if (f.cod != g.dom) {
    throw InterfaceMismatch("lens composition: cod of first does not match dom of second");
  }
  Lens out;
  out.dom = f.dom;
  out.cod = g.cod;
  out.fwd.resize(f.fwd.size());
  out.bwd.resize(f.fwd.size());
  for (std::size_t i = 0; i < f.fwd.size(); ++i) {
    const std::size_t mid = f.fwd[i];
    out.fwd[i] = g.fwd[mid];
    const auto& g_back = g.bwd[mid];  // r[g1(f1(i))] -> q[f1(i)]
    const auto& f_back = f.bwd[i];    // q[f1(i)] -> p[i]
    std::vector<std::size_t> row(g_back.size());
    for (std::size_t k = 0; k < g_back.size(); ++k) row[k] = f_back[g_back[k]];
    out.bwd[i] = std::move(row);
  }
  return out;
}

Lens tensor(const Lens& f, const Lens& g) {
  Lens out;
  out.dom = tensor(f.dom, g.dom);
  out.cod = tensor(f.cod, g.cod);
  const std::size_t g_dom_n = g.dom.num_positions();
  const std::size_t g_cod_n = g.cod.num_positions();
  out.fwd.reserve(out.dom.num_positions());
  out.bwd.reserve(out.dom.num_positions());
  for (std::size_t i = 0; i < f.dom.num_positions(); ++i) {
    for (std::size_t j = 0; j < g_dom_n; ++j) {
      out.fwd.push_back(f.fwd[i] * g_cod_n + g.fwd[j]);
      const std::size_t gj_dirs = g.dom.dir(j).size();
      const std::size_t cod_b = g.cod.dir(g.fwd[j]).size();
      std::vector<std::size_t> row;
      row.reserve(f.cod.dir(f.fwd[i]).size() * cod_b);
      for (std::size_t ka = 0; ka < f.cod.dir(f.fwd[i]).size(); ++ka) {
        for (std::size_t kb = 0; kb < cod_b; ++kb) {
          row.push_back(f.bwd[i][ka] * gj_dirs + g.bwd[j][kb]);
        }
      }
      out.bwd.push_back(std::move(row));
    }
  }
  return out;
}

Lens swap_lens(const Polynomial& p, const Polynomial& q) {
  Lens out;
  out.dom = tensor(p, q);
  out.cod = tensor(q, p);
  const std::size_t qn = q.num_positions();
  const std::size_t pn = p.num_positions();
  out.fwd.reserve(pn * qn);
  out.bwd.reserve(pn * qn);
  for (std::size_t i = 0; i < pn; ++i) {
    for (std::size_t j = 0; j < qn; ++j) {
      out.fwd.push_back(j * pn + i);
      const std::size_t pi = p.dir(i).size();
      const std::size_t qj = q.dir(j).size();
      // cod directions at (j,i) are q[j] x p[i]; send (b,a) back to (a,b)
      std::vector<std::size_t> row;
      row.reserve(qj * pi);
      for (std::size_t b = 0; b < qj; ++b) {
        for (std::size_t a = 0; a < pi; ++a) {
          row.push_back(a * qj + b);
        }
      }
      out.bwd.push_back(std::move(row));
    }
  }
  return out;
}

std::optional<PolyIso> find_isomorphism(const Polynomial& p, const Polynomial& q) {
  if (p.num_positions() != q.num_positions()) return std::nullopt;
  const std::size_t n = p.num_positions();
  // Match positions by direction count; any bijection between equal-size
  // direction carriers is an isomorphism component.
  std::vector<bool> used(n, false);
  std::vector<std::size_t> match(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    bool found = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (!used[j] && q.dir(j).size() == p.dir(i).size()) {
        used[j] = true;
        match[i] = j;
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
  }
  PolyIso iso;
  iso.fwd.dom = p;
  iso.fwd.cod = q;
  iso.inv.dom = q;
  iso.inv.cod = p;
  iso.fwd.fwd = match;
  iso.fwd.bwd.resize(n);
  iso.inv.fwd.assign(n, 0);
  iso.inv.bwd.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = match[i];
    iso.inv.fwd[j] = i;
    std::vector<std::size_t> idx(p.dir(i).size());
    std::iota(idx.begin(), idx.end(), 0);
    iso.fwd.bwd[i] = idx;
    iso.inv.bwd[j] = idx;
  }
  return iso;
}

}  // namespace polyagent
