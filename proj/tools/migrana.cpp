// migrana - migration network analysis CLI
//
// Subcommands: solve (full pipeline), fit (regression), dynamics (population
// evolution), events (scenario fold), assign (overflow dispatch), export
// (DOT graph only). Exit codes: 0 ok, 1 input error, 2 solve failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "migrana/assignment.hpp"
#include "migrana/country_data.hpp"
#include "migrana/csv.hpp"
#include "migrana/dynamics.hpp"
#include "migrana/errors.hpp"
#include "migrana/pipeline.hpp"
#include "migrana/regression.hpp"
#include "migrana/scoring.hpp"
#include "migrana/stats.hpp"

namespace {

using namespace migrana;

struct PipelineFlags {
    std::string config_path;
    std::string data, topology, scores, supplies, scenario, presets, preset, out;
    double threshold = -1, enter_p = -1, exit_p = -1;
    std::int64_t seed = -1;
    bool impute = false;
};

void add_pipeline_flags(CLI::App* cmd, PipelineFlags& flags) {
    cmd->add_option("--config", flags.config_path, "JSON config file; flags override it");
    cmd->add_option("--data", flags.data, "country indicator table (CSV)");
    cmd->add_option("--topology", flags.topology, "directed route list (CSV)");
    cmd->add_option("--scores", flags.scores, "fixed distribution scores (CSV)");
    cmd->add_option("--supplies", flags.supplies, "exporter supply overrides (CSV)");
    cmd->add_option("--scenario", flags.scenario, "scenario events (JSON)");
    cmd->add_option("--presets", flags.presets, "extra coefficient presets (JSON)");
    cmd->add_option("--preset", flags.preset, "scoring preset name (FULL or REDUCED)");
    cmd->add_option("--threshold", flags.threshold, "classification threshold");
    cmd->add_option("--enter-p", flags.enter_p, "stepwise entry p-value");
    cmd->add_option("--exit-p", flags.exit_p, "stepwise exit p-value");
    cmd->add_option("--out", flags.out, "output directory");
    cmd->add_option("--seed", flags.seed, "random seed recorded in the manifest");
    cmd->add_flag("--impute", flags.impute, "impute missing cells with column means");
}

PipelineConfig resolve_config(const PipelineFlags& flags) {
    PipelineConfig config;
    if (!flags.config_path.empty()) config = load_config_file(flags.config_path);
    if (!flags.data.empty()) config.data_path = flags.data;
    if (!flags.topology.empty()) config.topology_path = flags.topology;
    if (!flags.scores.empty()) config.scores_path = flags.scores;
    if (!flags.supplies.empty()) config.supplies_path = flags.supplies;
    if (!flags.scenario.empty()) config.scenario_path = flags.scenario;
    if (!flags.presets.empty()) config.presets_path = flags.presets;
    if (!flags.preset.empty()) config.preset = flags.preset;
    if (flags.threshold >= 0) config.threshold = flags.threshold;
    if (flags.enter_p >= 0) config.enter_p = flags.enter_p;
    if (flags.exit_p >= 0) config.exit_p = flags.exit_p;
    if (!flags.out.empty()) config.out_dir = flags.out;
    if (flags.seed >= 0) config.seed = static_cast<std::uint64_t>(flags.seed);
    if (flags.impute) config.impute_missing = true;
    return config;
}

int run_solve(const PipelineFlags& flags) {
    PipelineConfig config = resolve_config(flags);
    PipelineResult result = run_pipeline(config);
    result.bundle.write_to(config.out_dir);
    std::cout << "routed " << result.plan.total_flow << " people at total cost "
              << csv::format_number(result.plan.total_cost) << " (" << result.plan.unrouted
              << " unrouted) -> " << config.out_dir << "\n";
    return 0;
}

int run_export(const PipelineFlags& flags, const std::string& dot_path) {
    PipelineConfig config = resolve_config(flags);
    PipelineResult result = run_pipeline(config);
    if (dot_path.empty()) {
        std::cout << result.bundle.graph;
    } else {
        std::ofstream out(dot_path, std::ios::binary);
        if (!out) throw input_error("cannot write " + dot_path);
        out << result.bundle.graph;
    }
    return 0;
}

int run_fit(const std::string& data_path, const std::string& response,
            std::vector<std::string> predictors, bool stepwise, double enter_p, double exit_p) {
    csv::Table raw = csv::read_file(data_path);
    auto column = [&](const std::string& name) {
        for (size_t j = 0; j < raw.header.size(); ++j)
            if (raw.header[j] == name) return j;
        throw input_error("no column named '" + name + "' in " + data_path);
    };
    size_t response_col = column(response);
    if (predictors.empty()) {
        for (const auto& name : raw.header)
            if (name != response) predictors.push_back(name);
    }
    int n = static_cast<int>(raw.rows.size());
    Eigen::MatrixXd x(n, predictors.size());
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        y(i) = csv::parse_number(raw.rows[i][response_col]);
        for (size_t j = 0; j < predictors.size(); ++j)
            x(i, static_cast<int>(j)) = csv::parse_number(raw.rows[i][column(predictors[j])]);
    }
    DesignMatrix design = DesignMatrix::with_intercept(x, y);
    RegressionModel model =
        stepwise ? stepwise_select(design, enter_p, exit_p) : ols_fit(design);
    FitDiagnostics diag = diagnostics(model, design);

    std::cout << "term,coefficient,t,p\n";
    std::cout << "intercept," << csv::format_number(model.coefficients(0)) << ","
              << csv::format_number(diag.t_statistics(0)) << ","
              << csv::format_number(diag.t_p_values(0)) << "\n";
    for (size_t i = 0; i < model.included.size(); ++i) {
        int j = model.included[i];
        std::cout << predictors[j - 1] << ","
                  << csv::format_number(model.coefficients(static_cast<int>(i) + 1)) << ","
                  << csv::format_number(diag.t_statistics(static_cast<int>(i) + 1)) << ","
                  << csv::format_number(diag.t_p_values(static_cast<int>(i) + 1)) << "\n";
    }
    std::cout << "# F=" << csv::format_number(diag.f_statistic)
              << " p=" << csv::format_number(diag.f_p_value)
              << " R2=" << csv::format_number(diag.r_squared)
              << " adjR2=" << csv::format_number(diag.adjusted_r_squared)
              << " RSS=" << csv::format_number(model.residual_sum_squares) << "\n";
    return 0;
}

TransitionMatrix parse_matrix(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::stringstream stream(text);
    std::string row_text;
    while (std::getline(stream, row_text, ';')) {
        std::vector<double> row;
        std::stringstream row_stream(row_text);
        std::string cell;
        while (std::getline(row_stream, cell, ',')) row.push_back(csv::parse_number(cell));
        rows.push_back(std::move(row));
    }
    if (rows.size() != 2 || rows[0].size() != 2 || rows[1].size() != 2)
        throw input_error("expected a 2x2 matrix as 'a11,a12;a21,a22'");
    return TransitionMatrix::from_rows({{rows[0][0], rows[0][1]}, {rows[1][0], rows[1][1]}});
}

int run_dynamics(const std::string& matrix_text, const std::string& x0_text, int steps,
                 bool steady, double tol, const std::string& out_path) {
    TransitionMatrix a = parse_matrix(matrix_text);
    PopulationState x0{0.5, 0.5};
    if (!x0_text.empty()) {
        auto comma = x0_text.find(',');
        if (comma == std::string::npos) throw input_error("expected --x0 as 'x_a,x_b'");
        x0 = {csv::parse_number(x0_text.substr(0, comma)),
              csv::parse_number(x0_text.substr(comma + 1))};
    }
    if (steady) {
        SteadyStateResult result = steady_state(a, tol, x0);
        std::cout << "steady state: citizens=" << csv::format_number(result.state.citizen_fraction)
                  << " refugees=" << csv::format_number(result.state.refugee_fraction)
                  << " iterations=" << result.iterations << "\n";
        return 0;
    }
    auto trajectory = evolve_population(a, x0, steps);
    std::ostringstream out;
    csv::write_row(out, {"step", "x_a", "x_b"});
    for (size_t k = 0; k < trajectory.size(); ++k)
        csv::write_row(out, {std::to_string(k), csv::format_number(trajectory[k].citizen_fraction),
                             csv::format_number(trajectory[k].refugee_fraction)});
    if (out_path.empty()) {
        std::cout << out.str();
    } else {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) throw input_error("cannot write " + out_path);
        file << out.str();
    }
    return 0;
}

int run_assign(const std::string& matrix_path, const std::string& objective_name,
               const std::string& out_path) {
    CostMatrix matrix = load_cost_matrix_file(matrix_path);
    Objective objective;
    if (objective_name == "min") objective = Objective::Minimize;
    else if (objective_name == "max") objective = Objective::Maximize;
    else throw input_error("--objective must be 'min' or 'max'");
    Assignment assignment = solve_assignment(matrix, objective);

    std::ostringstream out;
    csv::write_row(out, {"origin", "destination", "cost"});
    for (size_t i = 0; i < assignment.pairs.size(); ++i) {
        int c = assignment.pairs[i];
        if (c < 0) {
            csv::write_row(out, {matrix.row_labels[i], "(unassigned)", ""});
        } else {
            csv::write_row(out, {matrix.row_labels[i], matrix.col_labels[c],
                                 csv::format_number(matrix.at(i, c))});
        }
    }
    if (!out_path.empty()) {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) throw input_error("cannot write " + out_path);
        file << out.str();
    }
    std::cout << out.str();
    std::cout << "# total=" << csv::format_number(assignment.total) << " objective="
              << (objective == Objective::Minimize ? "min" : "max") << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"migration network analysis"};
    app.require_subcommand(1);

    PipelineFlags solve_flags;
    CLI::App* solve_cmd = app.add_subcommand("solve", "run the full pipeline");
    add_pipeline_flags(solve_cmd, solve_flags);

    PipelineFlags events_flags;
    CLI::App* events_cmd = app.add_subcommand("events", "fold scenario events and re-solve");
    add_pipeline_flags(events_cmd, events_flags);

    PipelineFlags export_flags;
    std::string export_dot;
    CLI::App* export_cmd = app.add_subcommand("export", "emit the flow graph as DOT");
    add_pipeline_flags(export_cmd, export_flags);
    export_cmd->add_option("--dot", export_dot, "DOT output path (default stdout)");

    std::string fit_data, fit_response;
    std::vector<std::string> fit_predictors;
    bool fit_stepwise = false;
    double fit_enter = 0.05, fit_exit = 0.10;
    CLI::App* fit_cmd = app.add_subcommand("fit", "least-squares fit with diagnostics");
    fit_cmd->add_option("--data", fit_data, "CSV with named columns")->required();
    fit_cmd->add_option("--response", fit_response, "response column name")->required();
    fit_cmd->add_option("--predictor", fit_predictors, "predictor column (repeatable)");
    fit_cmd->add_flag("--stepwise", fit_stepwise, "forward/backward variable selection");
    fit_cmd->add_option("--enter-p", fit_enter, "stepwise entry p-value");
    fit_cmd->add_option("--exit-p", fit_exit, "stepwise exit p-value");

    std::string dyn_matrix, dyn_x0, dyn_out;
    int dyn_steps = 10;
    bool dyn_steady = false;
    double dyn_tol = 1e-10;
    CLI::App* dyn_cmd = app.add_subcommand("dynamics", "population evolution and steady state");
    dyn_cmd->add_option("--matrix", dyn_matrix, "2x2 transition matrix 'a11,a12;a21,a22'")
        ->required();
    dyn_cmd->add_option("--x0", dyn_x0, "starting fractions 'x_a,x_b' (default 0.5,0.5)");
    dyn_cmd->add_option("--steps", dyn_steps, "evolution steps");
    dyn_cmd->add_flag("--steady", dyn_steady, "iterate to the steady state instead");
    dyn_cmd->add_option("--tol", dyn_tol, "steady-state tolerance");
    dyn_cmd->add_option("--out", dyn_out, "trajectory CSV path (default stdout)");

    std::string assign_matrix, assign_objective = "min", assign_out;
    CLI::App* assign_cmd = app.add_subcommand("assign", "optimal overflow dispatch");
    assign_cmd->add_option("--matrix", assign_matrix, "labeled cost matrix (CSV)")->required();
    assign_cmd->add_option("--objective", assign_objective, "min or max");
    assign_cmd->add_option("--out", assign_out, "pairing CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "error: usage: " << e.what() << "\n";
        return 1;
    }

    try {
        if (solve_cmd->parsed()) return run_solve(solve_flags);
        if (events_cmd->parsed()) {
            if (events_flags.scenario.empty() && events_flags.config_path.empty())
                throw migrana::input_error("events: --scenario (or a config with one) is required");
            return run_solve(events_flags);
        }
        if (export_cmd->parsed()) return run_export(export_flags, export_dot);
        if (fit_cmd->parsed())
            return run_fit(fit_data, fit_response, fit_predictors, fit_stepwise, fit_enter,
                           fit_exit);
        if (dyn_cmd->parsed())
            return run_dynamics(dyn_matrix, dyn_x0, dyn_steps, dyn_steady, dyn_tol, dyn_out);
        if (assign_cmd->parsed()) return run_assign(assign_matrix, assign_objective, assign_out);
    } catch (const migrana::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == migrana::ErrorKind::Input ? 1 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
