#include "migrana/scoring.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <json.hpp>

#include "migrana/csv.hpp"
#include "migrana/errors.hpp"

namespace migrana {

const CoefficientPreset& full_preset() {
    static const CoefficientPreset preset{
        "FULL",
        0.0089,
        {{1, 0.0698}, {2, -0.0586}, {3, 1.013}, {4, 0.128}, {5, -0.0698}, {6, -0.6288}}};
    return preset;
}

const CoefficientPreset& reduced_preset() {
    static const CoefficientPreset preset{
        "REDUCED", 0.0062, {{3, 0.9936}, {4, -0.0879}, {6, -0.53}}};
    return preset;
}

std::vector<CoefficientPreset> load_presets(std::istream& in) {
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("preset file: ") + e.what());
    }
    if (!doc.is_object()) throw input_error("preset file: expected a top-level object");
    std::vector<CoefficientPreset> presets;
    std::set<std::string> names;
    for (auto& [name, body] : doc.items()) {
        if (!names.insert(name).second)
            throw input_error("preset file: duplicate preset '" + name + "'");
        CoefficientPreset preset;
        preset.name = name;
        preset.intercept = body.at("intercept").get<double>();
        for (auto& [key, value] : body.at("weights").items()) {
            int index = std::stoi(key);
            if (index < 1 || index > kFactorCount)
                throw input_error("preset '" + name + "': factor index " + key +
                                  " outside 1..6");
            preset.weights[index] = value.get<double>();
        }
        presets.push_back(std::move(preset));
    }
    return presets;
}

std::vector<CoefficientPreset> load_presets_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open file: " + path);
    return load_presets(in);
}

CoefficientPreset resolve_preset(std::string_view name, const std::string& presets_path) {
    if (!presets_path.empty()) {
        for (const auto& p : load_presets_file(presets_path))
            if (p.name == name) return p;
    }
    if (name == full_preset().name) return full_preset();
    if (name == reduced_preset().name) return reduced_preset();
    throw input_error("unknown preset '" + std::string(name) + "'");
}

DistributionScore distribution_score(const StandardizedRow& row,
                                     const CoefficientPreset& preset) {
    double f = preset.intercept;
    for (const auto& [index, weight] : preset.weights) {
        if (index < 1 || index > kFactorCount)
            throw input_error("preset '" + preset.name + "' references factor index " +
                              std::to_string(index) + " absent from the record");
        f += weight * row.factors[index - 1];
    }
    if (!std::isfinite(f))
        throw input_error("score for '" + row.name + "' is not finite");
    return {row.name, f};
}

std::vector<DistributionScore> score_table(const StandardizedTable& table,
                                           const CoefficientPreset& preset) {
    std::vector<DistributionScore> scores;
    scores.reserve(table.rows.size());
    for (const auto& row : table.rows) scores.push_back(distribution_score(row, preset));
    return scores;
}

std::vector<DistributionScore> load_scores(std::istream& in) {
    csv::Table raw = csv::read(in);
    if (raw.header.size() != 2 || raw.header[0] != "country" || raw.header[1] != "score")
        throw input_error("score file: expected header country,score");
    std::vector<DistributionScore> scores;
    std::set<std::string> seen;
    for (size_t i = 0; i < raw.rows.size(); ++i) {
        if (raw.rows[i].size() != 2)
            throw input_error("score file row " + std::to_string(i + 1) + ": expected 2 cells");
        DistributionScore score;
        score.country = raw.rows[i][0];
        if (!seen.insert(score.country).second)
            throw input_error("score file: duplicate country '" + score.country + "'");
        score.f = csv::parse_number(raw.rows[i][1]);
        scores.push_back(std::move(score));
    }
    if (scores.empty()) throw input_error("score file: no data rows");
    return scores;
}

std::vector<DistributionScore> load_scores_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open file: " + path);
    return load_scores(in);
}

double edge_velocity(double score_difference, double difficulty) {
    if (!(difficulty > 0)) throw input_error("edge velocity: difficulty must be positive");
    if (score_difference < 0) return 0.0;  // flow does not run uphill
    return std::sqrt(score_difference / difficulty);
}

}  // namespace migrana
