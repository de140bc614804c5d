#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "migrana/mincost.hpp"
#include "migrana/network.hpp"

namespace migrana {

// FNV-1a over a byte string; the manifest uses it to fingerprint inputs.
std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t fnv1a64_file(const std::string& path);

// DOT text: one node per country annotated with its role and headcount,
// one edge per plan arc labelled "flow/capacity @ difficulty".
std::string export_graph(const FlowPlan& plan, const MigrationNetwork& network);

std::string scores_csv(std::span<const DistributionScore> scores);
std::string nodes_csv(const MigrationNetwork& network);
std::string flow_plan_csv(const FlowPlan& plan, const MigrationNetwork& network);
std::string routes_csv(std::span<const RouteAllocation> allocations);

struct ReportBundle {
    std::string scores;      // scores.csv
    std::string nodes;       // nodes.csv
    std::string flow_plan;   // flow_plan.csv
    std::string routes;      // routes.csv
    std::string graph;       // graph.dot
    std::string manifest;    // manifest.json
    std::optional<std::string> event_summary;  // event_summary.csv
    std::optional<std::string> event_diffs;    // event_diffs.csv

    // filename -> content, fixed order
    std::map<std::string, std::string> files() const;
    void write_to(const std::string& directory) const;
};

}  // namespace migrana
