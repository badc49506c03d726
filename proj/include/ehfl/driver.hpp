#pragma once

#include <filesystem>
#include <memory>
#include <vector>

#include "ehfl/config.hpp"
#include "ehfl/csv.hpp"

namespace ehfl::driver {

// Bound curves mirror the experiment scenarios: wired full participation,
// wired energy harvesting, and over-the-air energy harvesting.
enum class BoundScenario { conventional, eh_error_free, eh_ota };
std::string_view bound_scenario_name(BoundScenario s);
const std::vector<BoundScenario>& all_bound_scenarios();

std::shared_ptr<model::LossTask> build_task(const config::RunConfig& cfg);
trainer::Trainer build_trainer(const config::RunConfig& cfg, trainer::Scenario scenario);

// Runs one scenario to completion. Selects the configured kernel backend.
std::vector<trainer::RoundRecord> run_scenario(const config::RunConfig& cfg,
                                               trainer::Scenario scenario);

bound::Params bound_params(const config::RunConfig& cfg, BoundScenario scenario);
std::vector<bound::TracePoint> run_bound(const config::RunConfig& cfg, BoundScenario scenario);

// Subcommand entry points: run, write one CSV per scenario plus the manifest,
// and return the output paths.
std::vector<std::filesystem::path> emit_simulate(config::RunConfig cfg);
std::vector<std::filesystem::path> emit_sweep(config::RunConfig cfg);
std::vector<std::filesystem::path> emit_bound(config::RunConfig cfg);

}  // namespace ehfl::driver
