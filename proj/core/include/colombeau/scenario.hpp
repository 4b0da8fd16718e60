#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "colombeau/common.hpp"
#include "colombeau/net.hpp"

namespace colombeau::scenario {

// Scenario kinds: classify, decompose, ginf_decompose, manifold_decompose,
// example2, non_flabby, assert2, samples. Shared fields: seed (default 0),
// schedule ({"k_min","k_max","step"} or {"values": [...]}), out.
struct RunResult {
    nlohmann::json report;
    int exit_code = 0;          // 0 ok, 2 when a certificate probe failed
    std::string report_path;    // empty when nothing was written
};

// Executes a scenario given as parsed JSON; does not touch the filesystem
// unless the scenario itself names output files (samples CSV).
RunResult run_scenario_json(const nlohmann::json& sc,
                            std::optional<std::uint64_t> seed_override = {});

// Loads, validates, runs, and writes the report next to the scenario (or to
// out_override). Throws ScenarioError on malformed input.
RunResult run_scenario_file(const std::string& path,
                            const std::optional<std::string>& out_override = {},
                            std::optional<std::uint64_t> seed_override = {});

// Builders shared with tests.
EpsSchedule schedule_from_json(const nlohmann::json& sc);
nets::Net net_from_json(const nlohmann::json& spec);

// Writes "eps,x,value" rows, row-major by eps then x, full precision.
void emit_samples(const nets::Net& net, const std::vector<double>& eps_list,
                  const std::vector<double>& grid, const std::string& out_csv);

}  // namespace colombeau::scenario
