#pragma once

#include <string>

#include "json.hpp"
#include "polyagent/agent.hpp"
#include "polyagent/category.hpp"
#include "polyagent/hom.hpp"

namespace polyagent {

using Json = nlohmann::json;

Json to_json(const FinSet& s);
Json to_json(const Polynomial& p);
Json to_json(const Lens& l);
Json to_json(const FinCategory& c);
Json to_json(const Dist& d);
Json to_json(const Channel& c);
Json to_json(const GenSystem& g);
Json to_json(const PrioredGenSystem& g);
Json to_json(const HomPolynomial& h);

FinSet finset_from_json(const Json& j);
Polynomial poly_from_json(const Json& j);
Lens lens_from_json(const Json& j);
Dist dist_from_json(const Json& j);
Channel channel_from_json(const Json& j);
GenSystem gen_from_json(const Json& j);
PrioredGenSystem priored_from_json(const Json& j);

// Compact dump with sorted keys and shortest round-trip floats; the
// canonical byte form used for hashing and file output.
std::string canonical_dump(const Json& j);

// FNV-1a 64 over raw bytes, rendered as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace polyagent
