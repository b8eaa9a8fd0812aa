#include "polyagent/poly.hpp"

namespace polyagent {

const FinSet& Polynomial::dir(std::size_t i) const {
  if (i >= directions.size()) {
    throw Error("position index " + std::to_string(i) +
                " out of range for polynomial with " +
                std::to_string(directions.size()) + " positions");
  }
  return directions[i];
}

bool Polynomial::is_monomial() const {
  for (std::size_t i = 1; i < directions.size(); ++i) {
    if (!(directions[i] == directions[0])) return false;
  }
  return true;
}

std::size_t Polynomial::total_directions() const {
  std::size_t n = 0;
  for (const auto& d : directions) n += d.size();
  return n;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (!(a.positions == b.positions)) return false;
  if (a.directions.size() != b.directions.size()) return false;
  for (std::size_t i = 0; i < a.directions.size(); ++i) {
    if (!(a.directions[i] == b.directions[i])) return false;
  }
  return true;
}

void validate_poly(const Polynomial& p) {
  validate_finset(p.positions);
  if (p.directions.size() != p.positions.size()) {
    throw InvariantViolation("polynomial on '" + p.positions.name + "' has " +
                             std::to_string(p.directions.size()) +
                             " direction carriers for " +
                             std::to_string(p.positions.size()) + " positions");
  }
  for (const auto& d : p.directions) validate_finset(d);
}

Polynomial monomial(FinSet positions, FinSet directions) {
  Polynomial p;
  p.directions.assign(positions.size(), directions);
  p.positions = std::move(positions);
  return p;
}

Polynomial trivial_interface() {
  return monomial(FinSet{"y", {"*"}}, FinSet{"y*", {"*"}});
}

Polynomial tensor(const Polynomial& p, const Polynomial& q) {
  Polynomial out;
  out.positions = product(p.positions, q.positions);
  out.directions.reserve(p.num_positions() * q.num_positions());
  for (std::size_t i = 0; i < p.num_positions(); ++i) {
    for (std::size_t j = 0; j < q.num_positions(); ++j) {
      out.directions.push_back(product(p.dir(i), q.dir(j)));
    }
  }
  return out;
}

FinSet poly_apply(const Polynomial& p, const FinSet& x) {
  FinSet out;
  out.name = p.positions.name + "(" + x.name + ")";
  for (std::size_t i = 0; i < p.num_positions(); ++i) {
    const FinSet& dirs = p.dir(i);
    if (x.empty() && !dirs.empty()) continue;  // no maps into the empty set
    const std::size_t arity = dirs.size();
    std::vector<std::size_t> assign(arity, 0);
    bool done = false;
    while (!done) {
      std::string label = p.positions.label(i) + "(";
      for (std::size_t k = 0; k < arity; ++k) {
        if (k > 0) label += ",";
        label += x.label(assign[k]);
      }
      label += ")";
      out.elements.push_back(std::move(label));
      // odometer over the map, last direction fastest
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

}  // namespace polyagent
