#include "migrana/mincost.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>

#include "migrana/errors.hpp"
#include "migrana/log.hpp"

namespace migrana {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Arc {
    int from = 0;
    int to = 0;
    long long cap = 0;
    long long flow = 0;
    double cost = 0;
};

// Paired forward/backward arcs: arc i and i^1 are inverses.
struct ResidualGraph {
    std::vector<Arc> arcs;
    std::vector<std::vector<int>> adj;

    explicit ResidualGraph(int node_count) : adj(node_count) {}

    void add(int from, int to, long long cap, double cost) {
        adj[from].push_back(static_cast<int>(arcs.size()));
        arcs.push_back({from, to, cap, 0, cost});
        adj[to].push_back(static_cast<int>(arcs.size()));
        arcs.push_back({to, from, 0, 0, -cost});
    }

    long long residual(int a) const { return arcs[a].cap - arcs[a].flow; }

    void push(int a, long long delta) {
        arcs[a].flow += delta;
        arcs[a ^ 1].flow -= delta;
    }
};

// Label-correcting shortest path over reduced costs w + L(u) - L(v).
bool shortest_paths(const ResidualGraph& g, const std::vector<double>& potential, int source,
                    std::vector<double>& dist, std::vector<int>& pred_arc) {
    int n = static_cast<int>(g.adj.size());
    dist.assign(n, kInf);
    pred_arc.assign(n, -1);
    std::vector<char> queued(n, 0);
    dist[source] = 0;
    std::deque<int> queue{source};
    queued[source] = 1;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        queued[u] = 0;
        for (int a : g.adj[u]) {
            if (g.residual(a) <= 0) continue;
            int v = g.arcs[a].to;
            double reduced = g.arcs[a].cost + potential[u] - potential[v];
            double candidate = dist[u] + reduced;
            if (candidate < dist[v]) {
                dist[v] = candidate;
                pred_arc[v] = a;
                if (!queued[v]) {
                    queued[v] = 1;
                    queue.push_back(v);
                }
            }
        }
    }
    return dist.back() < kInf;  // sink is the last node
}

// Lexicographically smallest source->sink path inside the shortest-path DAG.
// DFS tries successors in name-rank order; the first simple path found is
// the lexicographic minimum. Falls back to the predecessor chain if float
// noise leaves the DAG walk stuck.
std::vector<int> lexicographic_path(const ResidualGraph& g, const std::vector<double>& potential,
                                    const std::vector<double>& dist,
                                    const std::vector<int>& pred_arc,
                                    const std::vector<int>& name_rank, int source, int sink) {
    int n = static_cast<int>(g.adj.size());
    auto on_dag = [&](int a) {
        if (g.residual(a) <= 0) return false;
        int u = g.arcs[a].from, v = g.arcs[a].to;
        if (dist[u] >= kInf || dist[v] >= kInf) return false;
        double reduced = g.arcs[a].cost + potential[u] - potential[v];
        double tolerance = 1e-12 * (1.0 + std::fabs(dist[v]));
        return dist[u] + reduced <= dist[v] + tolerance;
    };

    // nodes that can still reach the sink within the DAG
    std::vector<char> reaches_sink(n, 0);
    reaches_sink[sink] = 1;
    {
        std::vector<int> stack{sink};
        std::vector<std::vector<int>> incoming(n);
        for (size_t a = 0; a < g.arcs.size(); ++a)
            if (on_dag(static_cast<int>(a))) incoming[g.arcs[a].to].push_back(static_cast<int>(a));
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int a : incoming[v]) {
                int u = g.arcs[a].from;
                if (!reaches_sink[u]) {
                    reaches_sink[u] = 1;
                    stack.push_back(u);
                }
            }
        }
    }

    std::vector<char> visited(n, 0);
    std::vector<int> path_arcs;
    auto dfs = [&](auto&& self, int u) -> bool {
        if (u == sink) return true;
        visited[u] = 1;
        std::vector<int> candidates;
        for (int a : g.adj[u])
            if (on_dag(a) && !visited[g.arcs[a].to] && reaches_sink[g.arcs[a].to])
                candidates.push_back(a);
        std::sort(candidates.begin(), candidates.end(),
                  [&](int a, int b) { return name_rank[g.arcs[a].to] < name_rank[g.arcs[b].to]; });
        for (int a : candidates) {
            path_arcs.push_back(a);
            if (self(self, g.arcs[a].to)) return true;
            path_arcs.pop_back();
        }
        visited[u] = 0;
        return false;
    };
    if (dfs(dfs, source)) return path_arcs;

    // numeric fallback: walk predecessors
    path_arcs.clear();
    for (int v = sink; v != source;) {
        int a = pred_arc[v];
        path_arcs.push_back(a);
        v = g.arcs[a].from;
    }
    std::reverse(path_arcs.begin(), path_arcs.end());
    return path_arcs;
}

}  // namespace

const ArcFlow* FlowPlan::find(std::string_view from, std::string_view to) const {
    for (const auto& a : arcs)
        if (a.from == from && a.to == to) return &a;
    return nullptr;
}

long long FlowPlan::flow(std::string_view from, std::string_view to) const {
    const ArcFlow* arc = find(from, to);
    return arc ? arc->flow : 0;
}

long long FlowPlan::net_outflow(std::string_view country) const {
    long long net = 0;
    for (const auto& a : arcs) {
        if (a.from == country) net += a.flow;
        if (a.to == country) net -= a.flow;
    }
    return net;
}

FlowPlan solve_min_cost_flow(const MigrationNetwork& network) {
    const int n = static_cast<int>(network.nodes.size());
    long long supply_total = 0, capacity_total = 0;
    for (const auto& node : network.nodes) {
        supply_total += node.supply;
        capacity_total += node.capacity;
    }
    if (supply_total <= 0) throw input_error("min-cost flow: no exporter supply");
    if (capacity_total <= 0) throw input_error("min-cost flow: no importer capacity");
    for (const auto& e : network.edges)
        if (e.difficulty < 0)
            throw input_error("min-cost flow: negative difficulty on " + e.from + " -> " + e.to);

    std::vector<std::string> names;
    names.reserve(n);
    for (const auto& node : network.nodes) names.push_back(node.country);
    auto node_index = [&](std::string_view name) {
        for (int i = 0; i < n; ++i)
            if (names[i] == name) return i;
        throw input_error("min-cost flow: edge references unknown node '" + std::string(name) +
                          "'");
    };

    const int source = n, sink = n + 1;
    // tie-break rank: country name order; virtual terminals sort last
    std::vector<int> name_rank(n + 2);
    {
        std::vector<int> order(n);
        for (int i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) { return names[a] < names[b]; });
        for (int r = 0; r < n; ++r) name_rank[order[r]] = r;
        name_rank[source] = n;
        name_rank[sink] = n + 1;
    }

    ResidualGraph g(n + 2);
    std::vector<int> edge_arc;  // forward arc index per network edge
    edge_arc.reserve(network.edges.size());
    for (const auto& e : network.edges) {
        long long cap = e.capacity.value_or(supply_total);
        edge_arc.push_back(static_cast<int>(g.arcs.size()));
        g.add(node_index(e.from), node_index(e.to), cap, e.difficulty);
    }
    for (int i = 0; i < n; ++i) {
        if (network.nodes[i].supply > 0) g.add(source, i, network.nodes[i].supply, 0.0);
        if (network.nodes[i].capacity > 0) g.add(i, sink, network.nodes[i].capacity, 0.0);
    }

    FlowPlan plan;
    std::vector<double> potential(n + 2, 0.0), dist;
    std::vector<int> pred_arc;
    while (shortest_paths(g, potential, source, dist, pred_arc)) {
        std::vector<int> path =
            lexicographic_path(g, potential, dist, pred_arc, name_rank, source, sink);
        long long bottleneck = std::numeric_limits<long long>::max();
        for (int a : path) bottleneck = std::min(bottleneck, g.residual(a));
        for (int a : path) g.push(a, bottleneck);
        plan.total_flow += bottleneck;
        ++plan.augmentations;
        // Unreachable nodes take the largest finite label so reduced costs
        // on arcs leaving them stay nonnegative.
        double max_label = 0;
        for (int v = 0; v < n + 2; ++v)
            if (dist[v] < kInf) max_label = std::max(max_label, dist[v]);
        for (int v = 0; v < n + 2; ++v) potential[v] += dist[v] < kInf ? dist[v] : max_label;
    }

    plan.arcs.reserve(network.edges.size());
    for (size_t i = 0; i < network.edges.size(); ++i) {
        const auto& e = network.edges[i];
        const Arc& arc = g.arcs[edge_arc[i]];
        plan.arcs.push_back({e.from, e.to, e.difficulty, arc.cap, arc.flow});
        plan.total_cost += static_cast<double>(arc.flow) * e.difficulty;
    }
    plan.unrouted = supply_total - plan.total_flow;
    if (plan.unrouted > 0)
        log::info("min-cost flow: ", plan.unrouted, " of ", supply_total, " people unrouted");
    for (int i = 0; i < n; ++i) plan.potentials[names[i]] = potential[i];
    plan.potentials[std::string(kSuperSource)] = potential[source];
    plan.potentials[std::string(kSuperSink)] = potential[sink];
    return plan;
}

bool DistanceMatrix::reachable(size_t from, size_t to) const { return at(from, to) < kInf; }

std::optional<size_t> DistanceMatrix::index_of(std::string_view country) const {
    for (size_t i = 0; i < countries.size(); ++i)
        if (countries[i] == country) return i;
    return std::nullopt;
}

DistanceMatrix all_pairs_shortest(const MigrationNetwork& network) {
    const size_t n = network.nodes.size();
    DistanceMatrix matrix;
    matrix.countries.reserve(n);
    for (const auto& node : network.nodes) matrix.countries.push_back(node.country);
    matrix.values.assign(n * n, kInf);
    for (size_t i = 0; i < n; ++i) matrix.values[i * n + i] = 0.0;
    for (const auto& e : network.edges) {
        auto from = matrix.index_of(e.from), to = matrix.index_of(e.to);
        if (!from || !to)
            throw input_error("shortest paths: edge references unknown node");
        double& cell = matrix.values[*from * n + *to];
        cell = std::min(cell, e.difficulty);
    }
    for (size_t k = 0; k < n; ++k)
        for (size_t i = 0; i < n; ++i) {
            double ik = matrix.values[i * n + k];
            if (ik >= kInf) continue;
            for (size_t j = 0; j < n; ++j) {
                double through = ik + matrix.values[k * n + j];
                if (through < matrix.values[i * n + j]) matrix.values[i * n + j] = through;
            }
        }
    return matrix;
}

namespace {

struct DecompositionState {
    std::vector<std::string> nodes;            // discovered from plan arcs
    std::vector<std::vector<std::pair<int, long long>>> remaining;  // to, flow left
    std::vector<long long> surplus;  // source side still to peel
    std::vector<long long> deficit;  // sink side still to absorb

    int index_of(std::string_view name) {
        for (size_t i = 0; i < nodes.size(); ++i)
            if (nodes[i] == name) return static_cast<int>(i);
        nodes.emplace_back(name);
        remaining.emplace_back();
        surplus.push_back(0);
        deficit.push_back(0);
        return static_cast<int>(nodes.size()) - 1;
    }
};

}  // namespace

std::vector<std::pair<std::vector<std::string>, long long>> decompose_flow(const FlowPlan& plan) {
    DecompositionState s;
    for (const auto& a : plan.arcs) {
        if (a.flow <= 0) continue;
        int u = s.index_of(a.from), v = s.index_of(a.to);
        s.remaining[u].push_back({v, a.flow});
        s.surplus[u] += a.flow;
        s.deficit[u] -= a.flow;
        s.surplus[v] -= a.flow;
        s.deficit[v] += a.flow;
    }
    const int n = static_cast<int>(s.nodes.size());
    for (int i = 0; i < n; ++i) {
        s.surplus[i] = std::max(s.surplus[i], 0LL);
        s.deficit[i] = std::max(s.deficit[i], 0LL);
    }

    std::vector<int> name_rank(n);
    {
        std::vector<int> order(n);
        for (int i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return s.nodes[a] < s.nodes[b]; });
        for (int r = 0; r < n; ++r) name_rank[order[r]] = r;
    }

    std::vector<std::pair<std::vector<std::string>, long long>> paths;
    while (true) {
        // widest source->sink width by repeated relaxation
        std::vector<long long> width(n, 0);
        for (int i = 0; i < n; ++i) width[i] = s.surplus[i];
        bool changed = true;
        while (changed) {
            changed = false;
            for (int u = 0; u < n; ++u) {
                if (width[u] <= 0) continue;
                for (auto [v, flow] : s.remaining[u]) {
                    long long candidate = std::min(width[u], flow);
                    if (candidate > width[v]) {
                        width[v] = candidate;
                        changed = true;
                    }
                }
            }
        }
        long long best = 0;
        for (int i = 0; i < n; ++i)
            if (s.deficit[i] > 0) best = std::max(best, std::min(width[i], s.deficit[i]));
        if (best <= 0) break;

        // lexicographically smallest path using only arcs of width >= best
        std::vector<char> visited(n, 0);
        std::vector<int> path;
        auto dfs = [&](auto&& self, int u) -> bool {
            path.push_back(u);
            if (s.deficit[u] >= best) return true;
            visited[u] = 1;
            std::vector<int> next;
            for (auto [v, flow] : s.remaining[u])
                if (flow >= best && !visited[v]) next.push_back(v);
            std::sort(next.begin(), next.end(),
                      [&](int a, int b) { return name_rank[a] < name_rank[b]; });
            next.erase(std::unique(next.begin(), next.end()), next.end());
            for (int v : next)
                if (self(self, v)) return true;
            visited[u] = 0;
            path.pop_back();
            return false;
        };
        std::vector<int> starts;
        for (int i = 0; i < n; ++i)
            if (s.surplus[i] >= best) starts.push_back(i);
        std::sort(starts.begin(), starts.end(),
                  [&](int a, int b) { return name_rank[a] < name_rank[b]; });
        bool found = false;
        for (int start : starts) {
            path.clear();
            std::fill(visited.begin(), visited.end(), 0);
            if (dfs(dfs, start)) {
                found = true;
                break;
            }
        }
        if (!found) throw solve_error("flow decomposition: no path at computed width");

        s.surplus[path.front()] -= best;
        s.deficit[path.back()] -= best;
        for (size_t i = 0; i + 1 < path.size(); ++i) {
            for (auto& [v, flow] : s.remaining[path[i]])
                if (v == path[i + 1] && flow >= best) {
                    flow -= best;
                    break;
                }
        }
        std::vector<std::string> named;
        named.reserve(path.size());
        for (int v : path) named.push_back(s.nodes[v]);
        paths.push_back({std::move(named), best});
    }
    return paths;
}

RouteAllocation allocate_routes(const std::string& source, const FlowPlan& plan) {
    bool known = false;
    for (const auto& a : plan.arcs)
        if (a.from == source || a.to == source) known = true;
    if (!known) throw input_error("route allocation: plan does not contain '" + source + "'");

    RouteAllocation allocation;
    allocation.source = source;
    long long routed = plan.net_outflow(source);
    if (routed <= 0) return allocation;  // nothing left this source

    auto arc_difficulty = [&](const std::string& from, const std::string& to) {
        const ArcFlow* arc = plan.find(from, to);
        if (!arc) throw solve_error("route allocation: missing arc " + from + " -> " + to);
        return arc->difficulty;
    };

    double priority_total = 0;
    for (const auto& [path, persons] : decompose_flow(plan)) {
        if (path.front() != source) continue;
        Route route;
        route.path = path;
        double difficulty = 0;
        for (size_t i = 0; i + 1 < path.size(); ++i)
            difficulty += arc_difficulty(path[i], path[i + 1]);
        if (!(difficulty > 0))
            throw input_error("route allocation: nonpositive path difficulty");
        route.priority = 1.0 / difficulty;
        priority_total += route.priority;
        allocation.routes.push_back(std::move(route));
    }
    if (allocation.routes.empty())
        throw solve_error("route allocation: '" + source + "' has outflow but no routes");

    // fractions, then whole people by largest remainder
    long long assigned = 0;
    std::vector<double> remainders(allocation.routes.size());
    for (size_t i = 0; i < allocation.routes.size(); ++i) {
        Route& route = allocation.routes[i];
        route.fraction = route.priority / priority_total;
        double quota = route.fraction * static_cast<double>(routed);
        route.persons = static_cast<long long>(std::floor(quota));
        remainders[i] = quota - std::floor(quota);
        assigned += route.persons;
    }
    std::vector<size_t> order(allocation.routes.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (remainders[a] != remainders[b]) return remainders[a] > remainders[b];
        return a < b;
    });
    for (size_t i = 0; assigned < routed && i < order.size(); ++i, ++assigned)
        ++allocation.routes[order[i]].persons;
    return allocation;
}

std::vector<RouteAllocation> allocate_all_routes(const FlowPlan& plan) {
    std::set<std::string> sources;
    for (const auto& a : plan.arcs)
        if (a.flow > 0) sources.insert(a.from);
    std::vector<RouteAllocation> allocations;
    for (const auto& source : sources) {
        if (plan.net_outflow(source) <= 0) continue;
        allocations.push_back(allocate_routes(source, plan));
    }
    return allocations;
}

}  // namespace migrana
