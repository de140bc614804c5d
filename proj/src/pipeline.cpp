#include "migrana/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "migrana/country_data.hpp"
#include "migrana/csv.hpp"
#include "migrana/errors.hpp"
#include "migrana/log.hpp"
#include "migrana/scoring.hpp"

namespace migrana {

namespace {

template <typename Fn>
auto stage(const char* name, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        throw Error(e.kind(), std::string(name) + ": " + e.what());
    }
}

void require_exists(const std::string& label, const std::string& path) {
    if (!std::filesystem::exists(path))
        throw input_error(label + " file does not exist: " + path);
}

std::string manifest_json(const PipelineConfig& config, const PipelineResult& result) {
    nlohmann::ordered_json doc;
    doc["tool"] = {{"name", "migrana"}, {"version", "0.1.0"}};

    auto hash_entry = [](const std::string& path) {
        std::ostringstream hex;
        hex << "0x" << std::hex << fnv1a64_file(path);
        return nlohmann::ordered_json{{"path", path}, {"fnv1a64", hex.str()}};
    };
    nlohmann::ordered_json inputs;
    inputs["data"] = hash_entry(config.data_path);
    inputs["topology"] = hash_entry(config.topology_path);
    if (config.scores_path) inputs["scores"] = hash_entry(*config.scores_path);
    if (config.supplies_path) inputs["supplies"] = hash_entry(*config.supplies_path);
    if (config.scenario_path) inputs["scenario"] = hash_entry(*config.scenario_path);
    if (config.presets_path) inputs["presets"] = hash_entry(*config.presets_path);
    doc["inputs"] = inputs;

    doc["options"] = {{"preset", config.preset},
                      {"threshold", config.threshold},
                      {"enter_p", config.enter_p},
                      {"exit_p", config.exit_p},
                      {"seed", config.seed},
                      {"impute_missing", config.impute_missing},
                      {"scores_fixed", config.scores_path.has_value()}};
    doc["summary"] = {{"total_flow", result.plan.total_flow},
                      {"total_cost", result.plan.total_cost},
                      {"unrouted", result.plan.unrouted},
                      {"augmentations", result.plan.augmentations},
                      {"events", result.events.size()}};
    return doc.dump(2) + "\n";
}

std::string event_summary_csv(const FlowPlan& baseline, std::span<const EventOutcome> events) {
    std::ostringstream out;
    csv::write_row(out, {"stage", "event", "total_flow", "total_cost", "delta_cost"});
    csv::write_row(out, {"0", "baseline", std::to_string(baseline.total_flow),
                         csv::format_number(baseline.total_cost), csv::format_number(0.0)});
    for (size_t i = 0; i < events.size(); ++i) {
        const auto& e = events[i];
        csv::write_row(out, {std::to_string(i + 1), e.event_name,
                             std::to_string(e.plan.total_flow),
                             csv::format_number(e.plan.total_cost),
                             csv::format_number(e.delta_cost)});
    }
    return out.str();
}

std::string event_diffs_csv(const FlowPlan& baseline, std::span<const EventOutcome> events) {
    std::ostringstream out;
    csv::write_row(out, {"stage", "event", "from", "to", "flow_before", "flow_after"});
    const FlowPlan* previous = &baseline;
    for (size_t i = 0; i < events.size(); ++i) {
        const FlowPlan& current = events[i].plan;
        std::set<std::pair<std::string, std::string>> keys;
        for (const auto& a : previous->arcs) keys.insert({a.from, a.to});
        for (const auto& a : current.arcs) keys.insert({a.from, a.to});
        for (const auto& [from, to] : keys) {
            long long before = previous->flow(from, to);
            long long after = current.flow(from, to);
            if (before == after) continue;
            csv::write_row(out, {std::to_string(i + 1), events[i].event_name, from, to,
                                 std::to_string(before), std::to_string(after)});
        }
        previous = &current;
    }
    return out.str();
}

}  // namespace

void PipelineConfig::validate() const {
    if (data_path.empty()) throw input_error("config: data path is required");
    if (topology_path.empty()) throw input_error("config: topology path is required");
    require_exists("data", data_path);
    require_exists("topology", topology_path);
    if (scores_path) require_exists("scores", *scores_path);
    if (supplies_path) require_exists("supplies", *supplies_path);
    if (scenario_path) require_exists("scenario", *scenario_path);
    if (presets_path) require_exists("presets", *presets_path);
    if (threshold < 0) throw input_error("config: threshold must be nonnegative");
    if (!(enter_p > 0) || !(exit_p > 0) || enter_p > exit_p)
        throw input_error("config: need 0 < enter_p <= exit_p");
}

PipelineConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open config: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("config file: ") + e.what());
    }
    PipelineConfig config;
    config.data_path = doc.value("data", "");
    config.topology_path = doc.value("topology", "");
    if (doc.contains("scores")) config.scores_path = doc.at("scores").get<std::string>();
    if (doc.contains("supplies")) config.supplies_path = doc.at("supplies").get<std::string>();
    if (doc.contains("scenario")) config.scenario_path = doc.at("scenario").get<std::string>();
    if (doc.contains("presets")) config.presets_path = doc.at("presets").get<std::string>();
    config.preset = doc.value("preset", config.preset);
    config.threshold = doc.value("threshold", config.threshold);
    config.enter_p = doc.value("enter_p", config.enter_p);
    config.exit_p = doc.value("exit_p", config.exit_p);
    config.out_dir = doc.value("out", config.out_dir);
    config.seed = doc.value("seed", config.seed);
    config.impute_missing = doc.value("impute_missing", config.impute_missing);
    return config;
}

PipelineResult run_pipeline(const PipelineConfig& config) {
    stage("config", [&] { config.validate(); return 0; });

    PipelineResult result;

    CountryTable table = stage("ingest", [&] {
        IngestOptions options;
        options.impute_missing_with_column_mean = config.impute_missing;
        return load_country_table_file(config.data_path, options);
    });

    stage("validate", [&] {
        ValidationReport report = validate_table(table);
        if (!report.ok()) throw input_error("country table invalid: " + report.summary());
        return 0;
    });

    result.scores = stage("score", [&] {
        if (config.scores_path) return load_scores_file(*config.scores_path);
        CoefficientPreset preset =
            resolve_preset(config.preset, config.presets_path.value_or(""));
        return score_table(standardize(table), preset);
    });

    result.network = stage("build-network", [&] {
        BuildOptions options;
        options.classification_threshold = config.threshold;
        if (config.supplies_path) options.supply_overrides = load_supplies_file(*config.supplies_path);
        auto topology = load_topology_file(config.topology_path);
        return build_network(table, result.scores, topology, options);
    });

    result.plan = stage("solve", [&] { return solve_min_cost_flow(result.network); });

    result.allocations = stage("allocate", [&] { return allocate_all_routes(result.plan); });

    if (config.scenario_path) {
        stage("events", [&] {
            auto events = load_scenario_file(*config.scenario_path);
            MigrationNetwork current = result.network;
            const FlowPlan* previous = &result.plan;
            for (const auto& event : events) {
                current = apply_event(current, event);
                EventOutcome outcome;
                outcome.event_name = event.name;
                outcome.plan = solve_min_cost_flow(current);
                outcome.delta_cost = outcome.plan.total_cost - previous->total_cost;
                result.events.push_back(std::move(outcome));
                previous = &result.events.back().plan;
            }
            return 0;
        });
    }

    stage("report", [&] {
        result.bundle.scores = scores_csv(result.scores);
        result.bundle.nodes = nodes_csv(result.network);
        result.bundle.flow_plan = flow_plan_csv(result.plan, result.network);
        result.bundle.routes = routes_csv(result.allocations);
        result.bundle.graph = export_graph(result.plan, result.network);
        result.bundle.manifest = manifest_json(config, result);
        if (!result.events.empty()) {
            result.bundle.event_summary = event_summary_csv(result.plan, result.events);
            result.bundle.event_diffs = event_diffs_csv(result.plan, result.events);
        }
        return 0;
    });

    log::info("pipeline: routed ", result.plan.total_flow, " people at cost ",
              result.plan.total_cost, " (", result.plan.unrouted, " unrouted)");
    return result;
}

}  // namespace migrana
