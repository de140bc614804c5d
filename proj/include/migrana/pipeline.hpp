#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "migrana/mincost.hpp"
#include "migrana/network.hpp"
#include "migrana/perturbation.hpp"
#include "migrana/report.hpp"

namespace migrana {

struct PipelineConfig {
    std::string data_path;
    std::string topology_path;
    std::optional<std::string> scores_path;    // fixed scores; otherwise computed from preset
    std::optional<std::string> supplies_path;  // exporter supply figures replacing x6
    std::optional<std::string> scenario_path;
    std::optional<std::string> presets_path;
    std::string preset = "REDUCED";
    double threshold = 0.0;
    double enter_p = 0.05;
    double exit_p = 0.10;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    bool impute_missing = false;

    void validate() const;  // referenced paths must exist
};

// JSON config mirroring the fields above; CLI flags override file values.
PipelineConfig load_config_file(const std::string& path);

struct EventOutcome {
    std::string event_name;
    FlowPlan plan;
    double delta_cost = 0;
};

struct PipelineResult {
    std::vector<DistributionScore> scores;
    MigrationNetwork network;
    FlowPlan plan;
    std::vector<RouteAllocation> allocations;
    std::vector<EventOutcome> events;
    ReportBundle bundle;
};

// ingest -> score -> classify/build -> solve -> allocate -> (events) -> report.
// Deterministic for a fixed config. Errors carry the failing stage's name.
PipelineResult run_pipeline(const PipelineConfig& config);

}  // namespace migrana
