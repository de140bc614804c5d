#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "migrana/network.hpp"

namespace migrana {

// Weights installed on edges must stay positive; computed difficulties that
// come out nonpositive are clamped to this floor.
inline constexpr double kDifficultyFloor = 1e-6;

// Route difficulty under an external pressure factor:
// Diff = out * (people at the tail - intake left at the head). The raw value
// may be negative; clamp_difficulty applies the floor for installation.
double external_difficulty(double out_factor, double t_i, double r_next);
double clamp_difficulty(double raw, double floor_value = kDifficultyFloor);

struct DifficultyEdit {
    enum class Mode { Set, Remove, External };
    std::string from;
    std::string to;
    Mode mode = Mode::Set;
    double value = 0;  // Set only
};

struct CapacityEdit {
    std::string from;
    std::string to;
    std::optional<long long> capacity;  // nullopt = unbounded
};

struct ArcSpec {
    double difficulty = 1.0;
    std::optional<long long> capacity;
};

// A relief organisation relaying people between two countries: a fresh
// transit node with one arc in from `between_from` and one out to
// `between_to`; the direct arc survives only if keep_direct.
struct NgoInsertion {
    std::string ngo_name;
    std::string between_from;
    std::string between_to;
    ArcSpec in_arc;
    ArcSpec out_arc;
    bool keep_direct = true;
};

struct ScenarioEvent {
    std::string name;
    std::vector<DifficultyEdit> difficulty_edits;
    std::vector<CapacityEdit> capacity_edits;
    std::vector<NgoInsertion> node_insertions;
    double external_out_factor = 1.0;
};

// Pure transformation: difficulty edits, then capacity edits, then node
// insertions, on a copy of the network. Edits must name existing edges.
MigrationNetwork apply_event(const MigrationNetwork& network, const ScenarioEvent& event);

MigrationNetwork insert_ngo_node(const MigrationNetwork& network, const NgoInsertion& insertion);

// JSON scenario: { "events": [ { "name": ..., "out_factor": ...,
//   "difficulty_edits": [...], "capacity_edits": [...], "insertions": [...] } ] }
std::vector<ScenarioEvent> load_scenario(std::istream& in);
std::vector<ScenarioEvent> load_scenario_file(const std::string& path);

}  // namespace migrana
