#pragma once

#include <vector>

#include "polyagent/dist.hpp"

namespace polyagent {

// A conditional distribution between finite carriers: one row per dom
// element, each row a distribution over cod (a row-stochastic matrix).
struct Channel {
  FinSet dom;
  FinSet cod;
  std::vector<std::vector<double>> rows;

  double at(std::size_t x, std::size_t y) const { return rows[x][y]; }
};

// Validates and renormalizes each row (same policy as make_dist).
Channel make_channel(FinSet dom, FinSet cod, std::vector<std::vector<double>> rows);

// The deterministic channel of a total map f: dom -> cod.
Channel dirac_channel(const std::vector<std::size_t>& f, FinSet dom, FinSet cod);

Channel identity_channel(FinSet x);

// Diagrammatic composition by matrix multiplication: first q: X ~> Y,
// then r: Y ~> Z. Throws CarrierMismatch unless q.cod == r.dom.
Channel channel_compose(const Channel& q, const Channel& r);

// Independent joint: entry ((x,x'),(y,y')) = q(y|x) r(y'|x'), with both
// products in lexicographic (left-major) layout.
Channel channel_tensor(const Channel& q, const Channel& r);

// d propagated through c.
Dist push_through(const Channel& c, const Dist& d);

// Exact conditioning: posterior(s) = prior(s) like(obs|s) / evidence.
// Throws ZeroEvidence when the observation has no marginal mass.
Dist bayes_posterior(const Dist& prior, const Channel& like, std::size_t obs);

// Marginals of a distribution over a two-factor product carrier with the
// given factor sizes (left-major layout).
Dist marginal_left(const Dist& joint, const FinSet& left, const FinSet& right);
Dist marginal_right(const Dist& joint, const FinSet& left, const FinSet& right);

}  // namespace polyagent
