#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "migrana/country_data.hpp"

namespace migrana {

// Linear scoring ruleset: f = intercept + sum_j weight_j * x^_j over the
// preset's factor indices (1..6). The two built-in presets are FULL (all
// six factors) and REDUCED (x3, x4, x6 after stepwise screening).
struct CoefficientPreset {
    std::string name;
    double intercept = 0;
    std::map<int, double> weights;
};

const CoefficientPreset& full_preset();
const CoefficientPreset& reduced_preset();

// JSON: { "NAME": { "intercept": ..., "weights": { "3": 0.9936, ... } } }
std::vector<CoefficientPreset> load_presets(std::istream& in);
std::vector<CoefficientPreset> load_presets_file(const std::string& path);

// Built-in presets plus any loaded from path (loaded names shadow built-ins).
CoefficientPreset resolve_preset(std::string_view name, const std::string& presets_path = "");

struct DistributionScore {
    std::string country;
    double f = 0;
};

// Applies a preset to one standardized factor vector.
DistributionScore distribution_score(const StandardizedRow& row, const CoefficientPreset& preset);
std::vector<DistributionScore> score_table(const StandardizedTable& table,
                                           const CoefficientPreset& preset);

// CSV with header country,score.
std::vector<DistributionScore> load_scores(std::istream& in);
std::vector<DistributionScore> load_scores_file(const std::string& path);

// Flow speed across a line: V = sqrt(ch / diff) for a nonnegative score
// gradient ch, zero when the gradient points uphill. diff must be positive.
double edge_velocity(double score_difference, double difficulty);

}  // namespace migrana
