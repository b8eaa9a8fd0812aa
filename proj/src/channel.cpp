#include "polyagent/channel.hpp"

#include <cmath>

#include "polyagent/errors.hpp"

namespace polyagent {

Channel make_channel(FinSet dom, FinSet cod, std::vector<std::vector<double>> rows) {
  if (rows.size() != dom.size()) {
    throw InvariantViolation("channel '" + dom.name + "~>" + cod.name + "' has " +
                             std::to_string(rows.size()) + " rows for " +
                             std::to_string(dom.size()) + " dom elements");
  }
  for (std::size_t x = 0; x < rows.size(); ++x) {
    auto& row = rows[x];
    if (row.size() != cod.size()) {
      throw InvariantViolation("channel row " + std::to_string(x) + " has wrong width");
    }
    double sum = 0.0;
    for (double m : row) {
      if (m < 0.0 || !std::isfinite(m)) {
        throw InvariantViolation("channel row " + std::to_string(x) +
                                 " has a negative or non-finite entry");
      }
      sum += m;
    }
    if (std::abs(sum - 1.0) > kNormEps) {
      throw InvariantViolation("channel row " + std::to_string(x) + " (dom '" +
                               dom.label(x) + "') sums to " + std::to_string(sum));
    }
    for (double& m : row) m /= sum;
  }
  return Channel{std::move(dom), std::move(cod), std::move(rows)};
}

Channel dirac_channel(const std::vector<std::size_t>& f, FinSet dom, FinSet cod) {
  if (f.size() != dom.size()) {
    throw CarrierMismatch("dirac_channel map does not cover the domain");
  }
  std::vector<std::vector<double>> rows(dom.size(),
                                        std::vector<double>(cod.size(), 0.0));
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (f[x] >= cod.size()) throw CarrierMismatch("dirac_channel map out of range");
    rows[x][f[x]] = 1.0;
  }
  return Channel{std::move(dom), std::move(cod), std::move(rows)};
}

Channel identity_channel(FinSet x) {
  std::vector<std::size_t> id(x.size());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
  FinSet cod = x;
  return dirac_channel(id, std::move(x), std::move(cod));
}

Channel channel_compose(const Channel& q, const Channel& r) {
  if (q.cod != r.dom) {
    throw CarrierMismatch("channel composition: cod of first (" + q.cod.name +
                          ") does not match dom of second (" + r.dom.name + ")");
  }
  std::vector<std::vector<double>> rows(q.dom.size(),
                                        std::vector<double>(r.cod.size(), 0.0));
  for (std::size_t x = 0; x < q.dom.size(); ++x) {
    for (std::size_t y = 0; y < q.cod.size(); ++y) {
      const double qxy = q.rows[x][y];
      if (qxy == 0.0) continue;
      for (std::size_t z = 0; z < r.cod.size(); ++z) {
        rows[x][z] += r.rows[y][z] * qxy;
      }
    }
  }
  return Channel{q.dom, r.cod, std::move(rows)};
}

Channel channel_tensor(const Channel& q, const Channel& r) {
  FinSet dom = product(q.dom, r.dom);
  FinSet cod = product(q.cod, r.cod);
  std::vector<std::vector<double>> rows;
  rows.reserve(dom.size());
  for (std::size_t x = 0; x < q.dom.size(); ++x) {
    for (std::size_t x2 = 0; x2 < r.dom.size(); ++x2) {
      std::vector<double> row;
      row.reserve(cod.size());
      for (std::size_t y = 0; y < q.cod.size(); ++y) {
        for (std::size_t y2 = 0; y2 < r.cod.size(); ++y2) {
          row.push_back(q.rows[x][y] * r.rows[x2][y2]);
        }
      }
      rows.push_back(std::move(row));
    }
  }
  return Channel{std::move(dom), std::move(cod), std::move(rows)};
}

Dist push_through(const Channel& c, const Dist& d) {
  if (c.dom != d.carrier) {
    throw CarrierMismatch("push_through: distribution carrier does not match channel dom");
  }
  std::vector<double> mass(c.cod.size(), 0.0);
  for (std::size_t x = 0; x < c.dom.size(); ++x) {
    const double dx = d.mass[x];
    if (dx == 0.0) continue;
    for (std::size_t y = 0; y < c.cod.size(); ++y) mass[y] += c.rows[x][y] * dx;
  }
  return Dist{c.cod, std::move(mass)};
}

Dist bayes_posterior(const Dist& prior, const Channel& like, std::size_t obs) {
  if (like.dom != prior.carrier) {
    throw CarrierMismatch("bayes_posterior: prior carrier does not match likelihood dom");
  }
  if (obs >= like.cod.size()) {
    throw CarrierMismatch("bayes_posterior: observation index out of range");
  }
  std::vector<double> mass(prior.carrier.size(), 0.0);
  double evidence = 0.0;
  for (std::size_t s = 0; s < mass.size(); ++s) {
    mass[s] = prior.mass[s] * like.rows[s][obs];
    evidence += mass[s];
  }
  if (evidence <= kNormEps) {
    throw ZeroEvidence("observation '" + like.cod.label(obs) +
                       "' has zero marginal probability under the prior");
  }
  for (double& m : mass) m /= evidence;
  return Dist{prior.carrier, std::move(mass)};
}

Dist marginal_left(const Dist& joint, const FinSet& left, const FinSet& right) {
  if (joint.carrier.size() != left.size() * right.size()) {
    throw CarrierMismatch("marginal_left: carrier is not the stated product");
  }
  std::vector<double> mass(left.size(), 0.0);
  for (std::size_t i = 0; i < left.size(); ++i) {
    for (std::size_t j = 0; j < right.size(); ++j) {
      mass[i] += joint.mass[i * right.size() + j];
    }
  }
  return Dist{left, std::move(mass)};
}

Dist marginal_right(const Dist& joint, const FinSet& left, const FinSet& right) {
  if (joint.carrier.size() != left.size() * right.size()) {
    throw CarrierMismatch("marginal_right: carrier is not the stated product");
  }
  std::vector<double> mass(right.size(), 0.0);
  for (std::size_t i = 0; i < left.size(); ++i) {
    for (std::size_t j = 0; j < right.size(); ++j) {
      mass[j] += joint.mass[i * right.size() + j];
    }
  }
  return Dist{right, std::move(mass)};
}

}  // namespace polyagent
