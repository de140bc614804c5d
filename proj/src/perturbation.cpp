#include "migrana/perturbation.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "migrana/errors.hpp"

namespace migrana {

double external_difficulty(double out_factor, double t_i, double r_next) {
    if (!(out_factor > 0)) throw input_error("external difficulty: out factor must be positive");
    return out_factor * (t_i - r_next);
}

double clamp_difficulty(double raw, double floor_value) {
    if (!(floor_value > 0)) throw input_error("difficulty floor must be positive");
    return std::max(raw, floor_value);
}

// People sitting on a node from the edit formula's point of view: what an
// exporter still has to move, or what an importer can still take.
static double node_mass(const MigrationNode& node) {
    return node.role == NodeRole::Exporter ? static_cast<double>(node.supply)
                                           : static_cast<double>(node.capacity);
}

MigrationNetwork apply_event(const MigrationNetwork& network, const ScenarioEvent& event) {
    MigrationNetwork result = network;

    for (const auto& edit : event.difficulty_edits) {
        MigrationEdge* edge = result.find_edge(edit.from, edit.to);
        if (!edge)
            throw input_error("event '" + event.name + "': no edge " + edit.from + " -> " +
                              edit.to);
        switch (edit.mode) {
            case DifficultyEdit::Mode::Set:
                if (!(edit.value > 0))
                    throw input_error("event '" + event.name + "': difficulty must be positive");
                edge->difficulty = edit.value;
                break;
            case DifficultyEdit::Mode::Remove:
                result.edges.erase(result.edges.begin() + (edge - result.edges.data()));
                break;
            case DifficultyEdit::Mode::External: {
                const MigrationNode* tail = result.find_node(edit.from);
                const MigrationNode* head = result.find_node(edit.to);
                if (!tail || !head)
                    throw input_error("event '" + event.name + "': edge endpoint missing");
                edge->difficulty = clamp_difficulty(
                    external_difficulty(event.external_out_factor, node_mass(*tail),
                                        node_mass(*head)));
                break;
            }
        }
    }

    for (const auto& edit : event.capacity_edits) {
        MigrationEdge* edge = result.find_edge(edit.from, edit.to);
        if (!edge)
            throw input_error("event '" + event.name + "': no edge " + edit.from + " -> " +
                              edit.to);
        if (edit.capacity && *edit.capacity < 0)
            throw input_error("event '" + event.name + "': negative capacity");
        edge->capacity = edit.capacity;
    }

    for (const auto& insertion : event.node_insertions)
        result = insert_ngo_node(result, insertion);

    return result;
}

MigrationNetwork insert_ngo_node(const MigrationNetwork& network, const NgoInsertion& insertion) {
    if (insertion.between_from == insertion.between_to)
        throw input_error("ngo insertion: endpoints must differ");
    if (network.find_node(insertion.ngo_name))
        throw input_error("ngo insertion: name '" + insertion.ngo_name + "' already in use");
    if (!network.find_node(insertion.between_from))
        throw input_error("ngo insertion: unknown country '" + insertion.between_from + "'");
    if (!network.find_node(insertion.between_to))
        throw input_error("ngo insertion: unknown country '" + insertion.between_to + "'");
    if (!(insertion.in_arc.difficulty > 0) || !(insertion.out_arc.difficulty > 0))
        throw input_error("ngo insertion: arc difficulties must be positive");

    MigrationNetwork result = network;
    MigrationNode relay;
    relay.country = insertion.ngo_name;
    relay.role = NodeRole::Transit;
    result.nodes.push_back(std::move(relay));

    if (!insertion.keep_direct) {
        auto it = std::remove_if(result.edges.begin(), result.edges.end(),
                                 [&](const MigrationEdge& e) {
                                     return e.from == insertion.between_from &&
                                            e.to == insertion.between_to;
                                 });
        result.edges.erase(it, result.edges.end());
    }
    result.edges.push_back({insertion.between_from, insertion.ngo_name,
                            insertion.in_arc.difficulty, insertion.in_arc.capacity});
    result.edges.push_back({insertion.ngo_name, insertion.between_to,
                            insertion.out_arc.difficulty, insertion.out_arc.capacity});
    return result;
}

namespace {

std::optional<long long> capacity_from_json(const nlohmann::json& body, const char* key) {
    if (!body.contains(key) || body.at(key).is_null()) return std::nullopt;
    return body.at(key).get<long long>();
}

ArcSpec arc_from_json(const nlohmann::json& body) {
    ArcSpec arc;
    arc.difficulty = body.at("difficulty").get<double>();
    arc.capacity = capacity_from_json(body, "capacity");
    return arc;
}

}  // namespace

std::vector<ScenarioEvent> load_scenario(std::istream& in) {
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("scenario file: ") + e.what());
    }
    if (!doc.contains("events") || !doc.at("events").is_array())
        throw input_error("scenario file: expected an 'events' array");

    std::vector<ScenarioEvent> events;
    for (const auto& body : doc.at("events")) {
        ScenarioEvent event;
        event.name = body.value("name", "event-" + std::to_string(events.size() + 1));
        event.external_out_factor = body.value("out_factor", 1.0);
        for (const auto& e : body.value("difficulty_edits", nlohmann::json::array())) {
            DifficultyEdit edit;
            edit.from = e.at("from").get<std::string>();
            edit.to = e.at("to").get<std::string>();
            if (e.value("remove", false)) {
                edit.mode = DifficultyEdit::Mode::Remove;
            } else if (e.value("external", false)) {
                edit.mode = DifficultyEdit::Mode::External;
            } else {
                edit.mode = DifficultyEdit::Mode::Set;
                edit.value = e.at("set").get<double>();
            }
            event.difficulty_edits.push_back(std::move(edit));
        }
        for (const auto& e : body.value("capacity_edits", nlohmann::json::array())) {
            CapacityEdit edit;
            edit.from = e.at("from").get<std::string>();
            edit.to = e.at("to").get<std::string>();
            edit.capacity = capacity_from_json(e, "capacity");
            event.capacity_edits.push_back(std::move(edit));
        }
        for (const auto& e : body.value("insertions", nlohmann::json::array())) {
            NgoInsertion insertion;
            insertion.ngo_name = e.at("name").get<std::string>();
            insertion.between_from = e.at("between").at(0).get<std::string>();
            insertion.between_to = e.at("between").at(1).get<std::string>();
            insertion.in_arc = arc_from_json(e.at("in"));
            insertion.out_arc = arc_from_json(e.at("out"));
            insertion.keep_direct = e.value("keep_direct", true);
            event.node_insertions.push_back(std::move(insertion));
        }
        events.push_back(std::move(event));
    }
    return events;
}

std::vector<ScenarioEvent> load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open file: " + path);
    return load_scenario(in);
}

}  // namespace migrana
