#pragma once

#include <optional>

#include "polyagent/laws.hpp"
#include "polyagent/scenario.hpp"

namespace polyagent {

struct CheckResult {
  std::string name;
  bool pass = false;
  double residual = 0.0;
  std::string note;
};

// Machine-readable outcome of one CLI command; deterministic given the
// scenario bytes, the command and the seed.
struct RunReport {
  std::string command;
  std::string scenario_hash;
  std::optional<std::uint64_t> seed;
  std::vector<CheckResult> checks;
  std::vector<std::string> artifacts;
  Json extra = Json::object();

  bool all_pass() const;
};

Json report_to_json(const RunReport& report);

struct CommandOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_path;
  std::size_t guard = kDefaultSizeGuard;
};

RunReport cmd_validate(const std::string& scenario_path);

RunReport cmd_check_laws(const std::optional<std::string>& scenario_path,
                         std::uint64_t seed, const laws::Sizes& sizes);

RunReport cmd_hom(const std::string& scenario_path, const std::string& p_name,
                  const std::string& q_name, bool enumerate,
                  const CommandOptions& opts);

RunReport cmd_simulate(const std::string& scenario_path,
                       const std::string& experiment_name,
                       const CommandOptions& opts);

RunReport cmd_plan(const std::string& scenario_path, const std::string& agent_name,
                   const std::string& position,
                   const std::optional<std::vector<double>>& belief,
                   std::optional<std::size_t> horizon, const CommandOptions& opts);

RunReport cmd_compose(const std::string& scenario_path,
                      const std::string& experiment_name,
                      const CommandOptions& opts);

// Exit-code mapping documented in the README: 0 success, 2 parse,
// 3 reference, 4 invariant, 5 size guard, 6 other module errors.
int exit_code_for(const std::exception& e);

}  // namespace polyagent
