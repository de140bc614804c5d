#include "migrana/report.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "migrana/csv.hpp"
#include "migrana/errors.hpp"
#include "migrana/scoring.hpp"

namespace migrana {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    return hash;
}

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return fnv1a64(buffer.str());
}

static std::string quote_dot(const std::string& name) {
    std::string out = "\"";
    for (char c : name) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

std::string export_graph(const FlowPlan& plan, const MigrationNetwork& network) {
    std::ostringstream out;
    out << "digraph migration {\n";
    out << "  rankdir=LR;\n";
    for (const auto& node : network.nodes) {
        out << "  " << quote_dot(node.country) << " [label=" << quote_dot([&] {
            std::ostringstream label;
            label << node.country << "\\n" << role_name(node.role);
            if (node.role == NodeRole::Exporter) label << " supply=" << node.supply;
            if (node.role == NodeRole::Importer) label << " capacity=" << node.capacity;
            return label.str();
        }()) << "];\n";
    }
    for (const auto& arc : plan.arcs) {
        out << "  " << quote_dot(arc.from) << " -> " << quote_dot(arc.to) << " [label="
            << quote_dot(std::to_string(arc.flow) + "/" + std::to_string(arc.capacity) + " @ " +
                         csv::format_number(arc.difficulty))
            << "];\n";
    }
    out << "}\n";
    return out.str();
}

std::string scores_csv(std::span<const DistributionScore> scores) {
    std::ostringstream out;
    csv::write_row(out, {"country", "score"});
    for (const auto& s : scores) csv::write_row(out, {s.country, csv::format_number(s.f)});
    return out.str();
}

std::string nodes_csv(const MigrationNetwork& network) {
    std::ostringstream out;
    csv::write_row(out, {"country", "role", "score", "supply", "capacity"});
    for (const auto& n : network.nodes)
        csv::write_row(out, {n.country, std::string(role_name(n.role)), csv::format_number(n.score),
                             std::to_string(n.supply), std::to_string(n.capacity)});
    return out.str();
}

std::string flow_plan_csv(const FlowPlan& plan, const MigrationNetwork& network) {
    std::ostringstream out;
    csv::write_row(out, {"from", "to", "difficulty", "capacity", "flow", "cost", "velocity"});
    for (const auto& arc : plan.arcs) {
        const MigrationNode* from = network.find_node(arc.from);
        const MigrationNode* to = network.find_node(arc.to);
        double velocity = 0;
        if (from && to) velocity = edge_velocity(to->score - from->score, arc.difficulty);
        csv::write_row(out, {arc.from, arc.to, csv::format_number(arc.difficulty),
                             std::to_string(arc.capacity), std::to_string(arc.flow),
                             csv::format_number(static_cast<double>(arc.flow) * arc.difficulty),
                             csv::format_number(velocity)});
    }
    return out.str();
}

std::string routes_csv(std::span<const RouteAllocation> allocations) {
    std::ostringstream out;
    csv::write_row(out, {"source", "path", "priority", "fraction", "persons"});
    for (const auto& allocation : allocations) {
        for (const auto& route : allocation.routes) {
            std::string path;
            for (size_t i = 0; i < route.path.size(); ++i) {
                if (i) path += "->";
                path += route.path[i];
            }
            csv::write_row(out, {allocation.source, path, csv::format_number(route.priority),
                                 csv::format_number(route.fraction),
                                 std::to_string(route.persons)});
        }
    }
    return out.str();
}

std::map<std::string, std::string> ReportBundle::files() const {
    std::map<std::string, std::string> out;
    out["scores.csv"] = scores;
    out["nodes.csv"] = nodes;
    out["flow_plan.csv"] = flow_plan;
    out["routes.csv"] = routes;
    out["graph.dot"] = graph;
    out["manifest.json"] = manifest;
    if (event_summary) out["event_summary.csv"] = *event_summary;
    if (event_diffs) out["event_diffs.csv"] = *event_diffs;
    return out;
}

void ReportBundle::write_to(const std::string& directory) const {
    std::filesystem::path dir(directory);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw input_error("cannot create output directory: " + directory);
    for (const auto& [name, content] : files()) {
        std::ofstream out(dir / name, std::ios::binary);
        if (!out) throw input_error("cannot write output file: " + (dir / name).string());
        out << content;
    }
}

}  // namespace migrana
