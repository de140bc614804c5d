#include "migrana/network.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "migrana/csv.hpp"
#include "migrana/errors.hpp"

namespace migrana {

std::string_view role_name(NodeRole role) {
    switch (role) {
        case NodeRole::Exporter: return "exporter";
        case NodeRole::Importer: return "importer";
        case NodeRole::Transit: return "transit";
    }
    return "unknown";
}

const MigrationNode* MigrationNetwork::find_node(std::string_view country) const {
    for (const auto& n : nodes)
        if (n.country == country) return &n;
    return nullptr;
}

MigrationNode* MigrationNetwork::find_node(std::string_view country) {
    for (auto& n : nodes)
        if (n.country == country) return &n;
    return nullptr;
}

const MigrationEdge* MigrationNetwork::find_edge(std::string_view from,
                                                 std::string_view to) const {
    for (const auto& e : edges)
        if (e.from == from && e.to == to) return &e;
    return nullptr;
}

MigrationEdge* MigrationNetwork::find_edge(std::string_view from, std::string_view to) {
    for (auto& e : edges)
        if (e.from == from && e.to == to) return &e;
    return nullptr;
}

long long MigrationNetwork::total_supply() const {
    long long total = 0;
    for (const auto& n : nodes) total += n.supply;
    return total;
}

long long MigrationNetwork::total_capacity() const {
    long long total = 0;
    for (const auto& n : nodes) total += n.capacity;
    return total;
}

std::map<std::string, NodeRole> classify_roles(std::span<const DistributionScore> scores,
                                               double threshold) {
    if (threshold < 0) throw input_error("classification threshold must be nonnegative");
    std::map<std::string, NodeRole> roles;
    for (const auto& s : scores) {
        if (!std::isfinite(s.f))
            throw input_error("score for '" + s.country + "' is not finite");
        NodeRole role = NodeRole::Transit;
        if (s.f < -threshold) role = NodeRole::Exporter;
        else if (s.f > threshold) role = NodeRole::Importer;
        roles[s.country] = role;
    }
    return roles;
}

long long acceptance_capacity(long long n_real, double f) {
    if (n_real < 0) throw input_error("acceptance capacity: refugee count must be nonnegative");
    if (f >= 1.0)
        throw input_error("acceptance capacity undefined for score >= 1 (f=" +
                          csv::format_number(f) + ")");
    if (f <= 0.0) return 0;
    return static_cast<long long>(std::floor(n_real * f / (1.0 - f) + 0.5));
}

double edge_difficulty(EdgeKind kind, long long t_i, long long t_next, long long r_i,
                       long long r_next) {
    switch (kind) {
        case EdgeKind::ExporterToImporter:
            if (r_next <= 0) throw input_error("edge difficulty: downstream capacity is zero");
            return static_cast<double>(t_i) / static_cast<double>(r_next);
        case EdgeKind::ExporterToExporter:
            if (t_i <= 0) throw input_error("edge difficulty: upstream supply is zero");
            return static_cast<double>(t_next) / static_cast<double>(t_i);
        case EdgeKind::ImporterToImporter:
            if (r_next <= 0) throw input_error("edge difficulty: downstream capacity is zero");
            return static_cast<double>(r_i) / static_cast<double>(r_next);
    }
    throw input_error("edge difficulty: unknown edge kind");
}

std::vector<TopologyEdge> load_topology(std::istream& in) {
    csv::Table raw = csv::read(in);
    if (raw.header.size() < 2 || raw.header[0] != "from" || raw.header[1] != "to")
        throw input_error("topology file: expected header from,to[,difficulty,capacity]");
    std::vector<TopologyEdge> edges;
    for (size_t i = 0; i < raw.rows.size(); ++i) {
        const auto& cells = raw.rows[i];
        if (cells.size() < 2)
            throw input_error("topology row " + std::to_string(i + 1) + ": expected >= 2 cells");
        TopologyEdge edge;
        edge.from = cells[0];
        edge.to = cells[1];
        if (cells.size() > 2 && !cells[2].empty()) edge.difficulty = csv::parse_number(cells[2]);
        if (cells.size() > 3 && !cells[3].empty())
            edge.capacity = static_cast<long long>(csv::parse_number(cells[3]));
        edges.push_back(std::move(edge));
    }
    return edges;
}

std::vector<TopologyEdge> load_topology_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open file: " + path);
    return load_topology(in);
}

std::map<std::string, long long> load_supplies(std::istream& in) {
    csv::Table raw = csv::read(in);
    if (raw.header.size() < 2 || raw.header[0] != "country" || raw.header[1] != "supply")
        throw input_error("supply file: expected header country,supply");
    std::map<std::string, long long> supplies;
    for (const auto& cells : raw.rows) {
        if (cells.size() < 2) throw input_error("supply file: expected 2 cells per row");
        supplies[cells[0]] = static_cast<long long>(csv::parse_number(cells[1]));
    }
    return supplies;
}

std::map<std::string, long long> load_supplies_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open file: " + path);
    return load_supplies(in);
}

MigrationNetwork build_network(const CountryTable& table,
                               std::span<const DistributionScore> scores,
                               std::span<const TopologyEdge> topology,
                               const BuildOptions& options) {
    auto roles = classify_roles(scores, options.classification_threshold);

    MigrationNetwork network;
    for (const auto& s : scores) {
        MigrationNode node;
        node.country = s.country;
        node.score = s.f;
        node.role = roles.at(s.country);
        const CountryRecord* record = table.find(s.country);
        if (node.role == NodeRole::Exporter) {
            auto it = options.supply_overrides.find(s.country);
            if (it != options.supply_overrides.end()) {
                node.supply = it->second;
            } else if (record) {
                node.supply = static_cast<long long>(std::llround(record->factor(6)));
            } else {
                throw input_error("exporter '" + s.country +
                                  "' has no refugee count and no supply override");
            }
            if (node.supply <= 0)
                throw input_error("exporter '" + s.country + "' has nonpositive supply");
        } else if (node.role == NodeRole::Importer) {
            if (!record)
                throw input_error("importer '" + s.country + "' missing from the country table");
            node.capacity =
                acceptance_capacity(static_cast<long long>(std::llround(record->factor(6))), s.f);
        }
        network.nodes.push_back(std::move(node));
    }

    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& t : topology) {
        if (t.from == t.to) throw input_error("topology: self-loop at '" + t.from + "'");
        if (!seen.insert({t.from, t.to}).second)
            throw input_error("topology: duplicate edge " + t.from + " -> " + t.to);
        const MigrationNode* from = network.find_node(t.from);
        const MigrationNode* to = network.find_node(t.to);
        if (!from) throw input_error("topology references unknown country '" + t.from + "'");
        if (!to) throw input_error("topology references unknown country '" + t.to + "'");

        MigrationEdge edge;
        edge.from = t.from;
        edge.to = t.to;

        if (t.difficulty) {
            if (!(*t.difficulty > 0))
                throw input_error("topology edge " + t.from + " -> " + t.to +
                                  ": difficulty override must be positive");
            edge.difficulty = *t.difficulty;
        } else {
            std::optional<EdgeKind> kind;
            if (from->role == NodeRole::Exporter && to->role == NodeRole::Importer)
                kind = EdgeKind::ExporterToImporter;
            else if (from->role == NodeRole::Exporter && to->role == NodeRole::Exporter)
                kind = EdgeKind::ExporterToExporter;
            else if (from->role == NodeRole::Importer && to->role == NodeRole::Importer)
                kind = EdgeKind::ImporterToImporter;
            if (!kind)
                throw input_error("topology edge " + t.from + " -> " + t.to + " (" +
                                  std::string(role_name(from->role)) + " -> " +
                                  std::string(role_name(to->role)) +
                                  ") has no difficulty formula; give an explicit override");
            try {
                edge.difficulty =
                    edge_difficulty(*kind, from->supply, to->supply, from->capacity, to->capacity);
            } catch (const Error& e) {
                throw input_error("topology edge " + t.from + " -> " + t.to + ": " + e.what());
            }
            if (!(edge.difficulty > 0))
                throw input_error("topology edge " + t.from + " -> " + t.to +
                                  ": computed difficulty is not positive");
        }

        if (t.capacity) {
            if (*t.capacity < 0)
                throw input_error("topology edge " + t.from + " -> " + t.to +
                                  ": negative capacity override");
            edge.capacity = *t.capacity;
        } else if (to->role == NodeRole::Importer) {
            edge.capacity = to->capacity;  // road holds what the next country can settle
        }  // else unbounded: corridors into exporters/transit have no intake figure

        network.edges.push_back(std::move(edge));
    }
    return network;
}

}  // namespace migrana
