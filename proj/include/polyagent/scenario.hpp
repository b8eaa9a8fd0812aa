#pragma once

#include <map>
#include <optional>
#include <string>

#include "polyagent/hierarchy.hpp"
#include "polyagent/serialize.hpp"

namespace polyagent {

inline constexpr const char* kScenarioVersion = "polyagent/1";

// A named task inside a scenario file.
struct Experiment {
  std::string name;
  std::string kind;  // unroll | simulate | plan | compose
  // unroll
  std::string system;
  std::string mode = "exact";  // exact | sample
  // simulate / plan
  std::string agent;
  std::string env;
  std::string position;
  std::vector<double> belief;
  // compose
  std::string manager;
  std::string left;
  std::string right;
  std::vector<std::string> chain;  // deep chain: bottom agent, then managers

  std::size_t steps = 0;
  std::size_t horizon = 0;
  std::size_t trajectories = 1;
  std::optional<std::uint64_t> seed;
};

// Parsed scenario: declared objects by name, all invariants verified.
struct Scenario {
  std::map<std::string, FinSet> finsets;
  std::map<std::string, Polynomial> polynomials;
  std::map<std::string, Lens> lenses;
  std::map<std::string, Channel> channels;
  std::map<std::string, FinCategory> categories;
  std::map<std::string, PrioredGenSystem> systems;
  std::map<std::string, Agent> agents;
  std::map<std::string, HierAgent> hieragents;
  std::vector<Experiment> experiments;

  const Experiment& experiment(const std::string& name) const;
};

// Throws ParseError / ReferenceError / InvariantViolation with locations.
Scenario parse_scenario(const Json& j);
Scenario load_scenario(const std::string& path);

// Raw file bytes, for hashing. Throws ParseError when unreadable.
std::string read_file(const std::string& path);

}  // namespace polyagent
