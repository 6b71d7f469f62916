// Command-line front end: solve one instance, sweep a parameter axis, or
// print the brute-force ground truth for a graph.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qidp/harness.hpp"

namespace {

std::vector<double> parse_value_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        try {
            values.push_back(std::stod(token));
        } catch (const std::exception&) {
            throw qidp::InputError("bad value in --values: '" + token + "'");
        }
    }
    if (values.empty()) throw qidp::InputError("--values must not be empty");
    return values;
}

// "1..5" or "1,2,3"
std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    const auto range_pos = text.find("..");
    try {
        if (range_pos != std::string::npos) {
            const std::uint64_t lo = std::stoull(text.substr(0, range_pos));
            const std::uint64_t hi = std::stoull(text.substr(range_pos + 2));
            if (hi < lo) throw qidp::InputError("--seeds range is empty: " + text);
            for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
        } else {
            std::stringstream ss(text);
            std::string token;
            while (std::getline(ss, token, ',')) seeds.push_back(std::stoull(token));
        }
    } catch (const qidp::InputError&) {
        throw;
    } catch (const std::exception&) {
        throw qidp::InputError("bad seed list: '" + text + "'");
    }
    if (seeds.empty()) throw qidp::InputError("--seeds must not be empty");
    return seeds;
}

void print_vertex_set(const qidp::VertexSet& s) {
    std::cout << "{";
    for (std::size_t i = 0; i < s.size(); ++i) std::cout << (i ? "," : "") << s[i];
    std::cout << "}";
}

void add_run_options(CLI::App* cmd, qidp::RunConfig& cfg) {
    cmd->add_option("--graph", cfg.graph_path, "edge-list graph file")->required();
    cmd->add_option("--layers", cfg.layers, "ansatz layer count");
    cmd->add_option("--alpha", cfg.alpha, "CVaR tail fraction in (0, 1]");
    cmd->add_option("--penalty", cfg.penalty, "penalty coefficient (default 0.75 * |V|)");
    cmd->add_option("--max-iters", cfg.max_iterations, "objective evaluation budget");
    cmd->add_option("--shots", cfg.shots, "samples per evaluation (0 = exact probabilities)");
    cmd->add_option("--seed", cfg.seed, "base random seed");
    cmd->add_option("--ramp-scale", cfg.ramp_scale, "scale of the linear parameter ramp");
    cmd->add_option("--tolerance", cfg.function_tolerance, "optimizer function tolerance");
    cmd->add_option("--initial-step", cfg.initial_step, "initial simplex step");
    cmd->add_option("--qubit-budget", cfg.qubit_budget, "max qubits for dense simulation");
}

int run_solve_command(const qidp::RunConfig& cfg, const std::string& dump_qubo_path) {
    if (!dump_qubo_path.empty()) {
        const qidp::Graph g = qidp::parse_graph(qidp::read_file(cfg.graph_path));
        const double penalty = cfg.penalty > 0.0 ? cfg.penalty : qidp::default_penalty(g);
        qidp::write_file(dump_qubo_path, qidp::export_qubo(qidp::build_qubo(g, penalty)));
    }
    const qidp::RunReport report = qidp::run_solve(cfg);

    std::cout << "graph: " << cfg.graph_path << " (" << report.vertex_count << " vertices, "
              << report.qubit_count << " qubits)\n";
    std::cout << "penalty: " << qidp::format_double(report.penalty) << "\n";
    std::cout << "best cost: " << qidp::format_double(report.optimization.best_cost) << " after "
              << report.optimization.evaluations << " evaluations ("
              << (report.optimization.terminated_by == qidp::Termination::tolerance
                      ? "tolerance"
                      : "max iterations")
              << ")\n";
    std::cout << "correct probability: " << qidp::format_double(report.score.correct_probability)
              << "\n";
    std::cout << "optimal probability: " << qidp::format_double(report.score.optimal_probability)
              << "\n";
    const std::size_t top = std::min<std::size_t>(4, report.score.top_strings.size());
    for (std::size_t i = 0; i < top; ++i) {
        const auto& [bits, mass] = report.score.top_strings[i];
        std::cout << "  top " << (i + 1) << ": " << bits << "  p=" << qidp::format_double(mass)
                  << "\n";
    }
    std::cout << "decoded set: ";
    print_vertex_set(report.decoded_best);
    std::cout << "\nreport: " << cfg.output_path << "\n";
    std::cout << "trace:  " << qidp::trace_csv_path(cfg.output_path) << "\n";
    return 0;
}

int run_sweep_command(const qidp::RunConfig& base, const std::string& axis_name,
                      const std::string& values_text, const std::string& seeds_text,
                      const std::string& out_prefix) {
    const qidp::SweepAxis axis = qidp::parse_sweep_axis(axis_name);
    const auto values = parse_value_list(values_text);
    const auto seeds = parse_seed_list(seeds_text);

    const auto cells = qidp::run_sweep(base, axis, values, seeds);
    qidp::write_file(out_prefix + ".csv", qidp::sweep_csv(axis, cells));
    qidp::write_file(out_prefix + ".json", qidp::sweep_to_json(axis, cells).dump(2) + "\n");

    std::cout << qidp::sweep_axis_name(axis) << ",seed,correct,optimal\n";
    for (const auto& cell : cells) {
        if (cell.error.empty()) {
            std::cout << qidp::format_double(cell.value) << "," << cell.seed << ","
                      << qidp::format_double(cell.correct_probability) << ","
                      << qidp::format_double(cell.optimal_probability) << "\n";
        } else {
            std::cout << qidp::format_double(cell.value) << "," << cell.seed
                      << ",error: " << cell.error << "\n";
        }
    }
    std::cout << "wrote " << out_prefix << ".csv and " << out_prefix << ".json\n";
    return 0;
}

int run_oracle_command(const std::string& graph_path) {
    const qidp::Graph g = qidp::parse_graph(qidp::read_file(graph_path));
    const qidp::IdsCatalog catalog = qidp::brute_force_ids(g);
    std::cout << "vertices: " << g.vertex_count << ", edges: " << g.edges.size() << "\n";
    std::cout << "minimum IDS size: " << catalog.minimum_size << "\n";
    std::cout << "optimal sets (" << catalog.optimal_sets.size() << "):\n";
    for (const auto& s : catalog.optimal_sets) {
        std::cout << "  ";
        print_vertex_set(s);
        std::cout << "\n";
    }
    std::cout << "independent dominating sets in total: " << catalog.all_ids.size() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"QAOA-based solver for minimum independent dominating sets"};
    app.require_subcommand(1);

    qidp::RunConfig solve_cfg;
    std::string dump_qubo_path;
    CLI::App* solve_cmd = app.add_subcommand("solve", "optimize one instance and write a report");
    add_run_options(solve_cmd, solve_cfg);
    solve_cmd->add_option("--out", solve_cfg.output_path, "report JSON path");
    solve_cmd->add_option("--dump-qubo", dump_qubo_path, "also export the QUBO as text");

    qidp::RunConfig sweep_cfg;
    std::string axis_name, values_text, seeds_text, sweep_out = "sweep";
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep with common seeds");
    add_run_options(sweep_cmd, sweep_cfg);
    sweep_cmd->add_option("--axis", axis_name, "layers | alpha | penalty | max-iters")->required();
    sweep_cmd->add_option("--values", values_text, "comma-separated axis values")->required();
    sweep_cmd->add_option("--seeds", seeds_text, "seed list: 1..5 or 1,2,3")->required();
    sweep_cmd->add_option("--out", sweep_out, "output prefix for .csv/.json");

    std::string oracle_graph;
    CLI::App* oracle_cmd = app.add_subcommand("oracle", "print brute-force ground truth");
    oracle_cmd->add_option("--graph", oracle_graph, "edge-list graph file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*solve_cmd) return run_solve_command(solve_cfg, dump_qubo_path);
        if (*sweep_cmd)
            return run_sweep_command(sweep_cfg, axis_name, values_text, seeds_text, sweep_out);
        if (*oracle_cmd) return run_oracle_command(oracle_graph);
    } catch (const qidp::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
