#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "migrana/country_data.hpp"
#include "migrana/scoring.hpp"

namespace migrana {

enum class NodeRole { Exporter, Importer, Transit };

std::string_view role_name(NodeRole role);

struct MigrationNode {
    std::string country;
    NodeRole role = NodeRole::Transit;
    double score = 0;
    long long supply = 0;    // exporters: people to route out
    long long capacity = 0;  // importers: people they can still settle
};

struct MigrationEdge {
    std::string from;
    std::string to;
    double difficulty = 0;                 // cost weight, > 0
    std::optional<long long> capacity;     // nullopt = unbounded
};

struct MigrationNetwork {
    std::vector<MigrationNode> nodes;
    std::vector<MigrationEdge> edges;

    const MigrationNode* find_node(std::string_view country) const;
    MigrationNode* find_node(std::string_view country);
    const MigrationEdge* find_edge(std::string_view from, std::string_view to) const;
    MigrationEdge* find_edge(std::string_view from, std::string_view to);
    long long total_supply() const;
    long long total_capacity() const;
};

// Sign classification: below -threshold exports, above +threshold imports,
// the band in between transits.
std::map<std::string, NodeRole> classify_roles(std::span<const DistributionScore> scores,
                                               double threshold = 0.0);

// People a country can still settle given its score f and current refugee
// count: N_can = round(n_real * f / (1 - f)). Nonpositive f yields 0;
// f >= 1 is undefined.
long long acceptance_capacity(long long n_real, double f);

enum class EdgeKind { ExporterToImporter, ExporterToExporter, ImporterToImporter };

// Difficulty weight per edge kind: supply over downstream capacity for
// exporter->importer, supply ratio for exporter->exporter, capacity ratio
// for importer->importer.
double edge_difficulty(EdgeKind kind, long long t_i, long long t_next, long long r_i,
                       long long r_next);

struct TopologyEdge {
    std::string from;
    std::string to;
    std::optional<double> difficulty;   // explicit override
    std::optional<long long> capacity;  // explicit override
};

// CSV with header from,to,difficulty,capacity; empty cells mean "computed".
std::vector<TopologyEdge> load_topology(std::istream& in);
std::vector<TopologyEdge> load_topology_file(const std::string& path);

struct BuildOptions {
    double classification_threshold = 0.0;
    // Supply figures that replace the table's refugee count (x6) per country.
    std::map<std::string, long long> supply_overrides;
};

// Assembles the directed migration network: one node per scored country with
// role, supply (exporters) and capacity (importers); one edge per topology
// entry carrying the kind-appropriate difficulty unless overridden.
// Edges whose kind has no difficulty formula (anything into an exporter,
// or touching a transit node) require an explicit difficulty override.
MigrationNetwork build_network(const CountryTable& table,
                               std::span<const DistributionScore> scores,
                               std::span<const TopologyEdge> topology,
                               const BuildOptions& options = {});

std::map<std::string, long long> load_supplies(std::istream& in);
std::map<std::string, long long> load_supplies_file(const std::string& path);

}  // namespace migrana
