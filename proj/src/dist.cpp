#include "polyagent/dist.hpp"

#include <cmath>
#include <numeric>

#include "polyagent/errors.hpp"

namespace polyagent {

Dist make_dist(FinSet carrier, std::vector<double> mass) {
  if (mass.size() != carrier.size()) {
    throw InvariantViolation("distribution over '" + carrier.name + "' has " +
                             std::to_string(mass.size()) + " masses for " +
                             std::to_string(carrier.size()) + " elements");
  }
  double sum = 0.0;
  for (double m : mass) {
    if (m < 0.0 || !std::isfinite(m)) {
      throw InvariantViolation("distribution over '" + carrier.name +
                               "' has a negative or non-finite mass");
    }
    sum += m;
  }
  if (std::abs(sum - 1.0) > kNormEps) {
    throw InvariantViolation("distribution over '" + carrier.name + "' sums to " +
                             std::to_string(sum));
  }
  for (double& m : mass) m /= sum;
  return Dist{std::move(carrier), std::move(mass)};
}

Dist dirac(FinSet carrier, std::size_t at) {
  std::vector<double> mass(carrier.size(), 0.0);
  mass.at(at) = 1.0;
  return Dist{std::move(carrier), std::move(mass)};
}

Dist uniform_dist(FinSet carrier) {
  if (carrier.empty()) {
    throw InvariantViolation("no uniform distribution over the empty carrier '" +
                             carrier.name + "'");
  }
  std::vector<double> mass(carrier.size(), 1.0 / static_cast<double>(carrier.size()));
  return Dist{std::move(carrier), std::move(mass)};
}

double total_variation(const Dist& a, const Dist& b) {
  if (a.carrier != b.carrier) {
    throw CarrierMismatch("total variation between different carriers");
  }
  double l1 = 0.0;
  for (std::size_t i = 0; i < a.mass.size(); ++i) l1 += std::abs(a.mass[i] - b.mass[i]);
  return 0.5 * l1;
}

Dist pushforward(const std::vector<std::size_t>& f, const FinSet& cod, const Dist& d) {
  if (f.size() != d.carrier.size()) {
    throw CarrierMismatch("pushforward map does not cover the carrier");
  }
  std::vector<double> mass(cod.size(), 0.0);
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (f[x] >= cod.size()) throw CarrierMismatch("pushforward map out of range");
    mass[f[x]] += d.mass[x];
  }
  return Dist{cod, std::move(mass)};
}

}  // namespace polyagent
