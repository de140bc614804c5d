#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "migrana/network.hpp"

namespace migrana {

inline constexpr std::string_view kSuperSource = "__source__";
inline constexpr std::string_view kSuperSink = "__sink__";

struct ArcFlow {
    std::string from;
    std::string to;
    double difficulty = 0;
    long long capacity = 0;  // resolved bound (unbounded arcs carry total supply)
    long long flow = 0;
};

struct FlowPlan {
    std::vector<ArcFlow> arcs;  // original edges, network order
    long long total_flow = 0;
    double total_cost = 0;
    long long augmentations = 0;
    long long unrouted = 0;  // supply no augmenting path could move
    // Final node potentials, virtual terminals included; every residual arc
    // satisfies L(u) - L(v) + w >= 0 against these.
    std::map<std::string, double, std::less<>> potentials;

    const ArcFlow* find(std::string_view from, std::string_view to) const;
    long long flow(std::string_view from, std::string_view to) const;
    // outflow minus inflow over the plan's arcs
    long long net_outflow(std::string_view country) const;
};

// Successive shortest augmenting paths on the residual network, with the
// potential reweighting L(u) - L(v) + w(e) applied after every labelling
// round. Flow moves from a virtual source (arcs sized by exporter supply)
// to a virtual sink (arcs sized by importer capacity); among maximum flows
// the result has minimum total difficulty. Equal-cost path ties resolve to
// the lexicographically smallest node sequence.
FlowPlan solve_min_cost_flow(const MigrationNetwork& network);

struct DistanceMatrix {
    std::vector<std::string> countries;
    std::vector<double> values;  // row-major; infinity marks unreachable

    double at(size_t from, size_t to) const { return values[from * countries.size() + to]; }
    bool reachable(size_t from, size_t to) const;
    std::optional<size_t> index_of(std::string_view country) const;
};

// Floyd-Warshall over difficulty weights.
DistanceMatrix all_pairs_shortest(const MigrationNetwork& network);

struct Route {
    std::vector<std::string> path;  // source first
    double priority = 0;            // Q = 1 / path difficulty sum
    double fraction = 0;            // P = Q / sum of Q
    long long persons = 0;
};

struct RouteAllocation {
    std::string source;
    std::vector<Route> routes;
};

// Deterministic path decomposition of a plan's flow: repeatedly peel the
// widest remaining source-to-sink path (ties to the lexicographically
// smallest node sequence).
std::vector<std::pair<std::vector<std::string>, long long>> decompose_flow(const FlowPlan& plan);

// Splits one source's routed people across its decomposed routes in
// proportion to inverse path difficulty, with largest-remainder rounding.
RouteAllocation allocate_routes(const std::string& source, const FlowPlan& plan);
std::vector<RouteAllocation> allocate_all_routes(const FlowPlan& plan);

}  // namespace migrana
