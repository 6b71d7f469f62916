#pragma once

#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "qidp/oracle.hpp"
#include "qidp/variational.hpp"

namespace qidp {

using ordered_json = nlohmann::ordered_json;

struct RunConfig {
    std::string graph_path;
    int layers = 15;
    double alpha = 0.3;
    double penalty = 0.0;  // <= 0 means default 0.75 * |V|
    long long max_iterations = 10000;
    long long shots = 10000;  // 0 = exact-probability mode
    std::uint64_t seed = 7;
    double ramp_scale = 0.3;
    double function_tolerance = 1e-8;
    double initial_step = 0.1;
    SeedMode seed_mode = SeedMode::common_random_numbers;
    CvarBoundary cvar_boundary = CvarBoundary::fractional;
    int qubit_budget = 24;
    std::string output_path = "report.json";
};

struct RunReport {
    RunConfig config;
    double penalty = 0.0;  // resolved value
    int vertex_count = 0;
    int qubit_count = 0;
    IdsCatalog catalog;
    OptResult optimization;
    SampleDistribution distribution;
    ScoreReport score;
    VertexSet decoded_best;
    double wall_time_seconds = 0.0;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write file: " + path);
    out << content;
}

// {i : z_i = '1', i < vertex_count} under the positional printing convention.
inline VertexSet decode_bitstring(const std::string& z, int vertex_count) {
    if (static_cast<int>(z.size()) < vertex_count)
        throw InputError("bit string shorter than vertex count");
    VertexSet members;
    for (int i = 0; i < vertex_count; ++i) {
        const char c = z[static_cast<std::size_t>(i)];
        if (c != '0' && c != '1') throw InputError("bit string contains non-binary character");
        if (c == '1') members.push_back(i);
    }
    return members;
}

namespace detail {

template <typename F>
auto run_step(const char* name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const InputError& e) {
        throw InputError(std::string("step ") + name + ": " + e.what());
    } catch (const NumericalError& e) {
        throw NumericalError(std::string("step ") + name + ": " + e.what());
    } catch (const std::exception& e) {
        throw NumericalError(std::string("step ") + name + ": " + e.what());
    }
}

}  // namespace detail

inline void validate_config(const RunConfig& cfg) {
    if (cfg.layers < 1) throw InputError("layers must be at least 1");
    if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0)) throw InputError("alpha must lie in (0, 1]");
    if (cfg.max_iterations < 1) throw InputError("max-iters must be positive");
    if (cfg.shots < 0) throw InputError("shots must be nonnegative");
    if (cfg.ramp_scale <= 0.0) throw InputError("ramp-scale must be positive");
    if (cfg.function_tolerance <= 0.0) throw InputError("tolerance must be positive");
    if (cfg.initial_step <= 0.0) throw InputError("initial-step must be positive");
}

// Full pipeline on an already-parsed graph: QUBO -> Ising -> energy table ->
// ramp init -> derivative-free CVaR minimization -> final sampling -> scoring.
inline RunReport solve_graph(const RunConfig& cfg, const Graph& g) {
    validate_config(cfg);
    const auto start = std::chrono::steady_clock::now();

    RunReport report;
    report.config = cfg;
    report.vertex_count = g.vertex_count;
    report.penalty = cfg.penalty > 0.0 ? cfg.penalty : default_penalty(g);
    report.config.penalty = report.penalty;

    const QuboModel model =
        detail::run_step("build_qubo", [&] { return build_qubo(g, report.penalty); });
    report.qubit_count = model.variable_count;
    const IsingHamiltonian hamiltonian =
        detail::run_step("qubo_to_ising", [&] { return qubo_to_ising(model); });
    const EnergyTable table =
        detail::run_step("energy_table", [&] { return energy_table(hamiltonian, cfg.qubit_budget); });
    report.catalog = detail::run_step("brute_force_ids",
                                      [&] { return brute_force_ids(g, cfg.qubit_budget); });

    const AnsatzParams init = detail::run_step(
        "initial_params", [&] { return initial_params(cfg.layers, cfg.ramp_scale); });
    const Objective objective = detail::run_step("qaoa_objective", [&] {
        return qaoa_objective(table, cfg.layers, cfg.shots, cfg.alpha,
                              SeedPolicy{cfg.seed, cfg.seed_mode}, cfg.cvar_boundary);
    });
    OptimizerConfig opt_cfg;
    opt_cfg.max_iterations = cfg.max_iterations;
    opt_cfg.function_tolerance = cfg.function_tolerance;
    opt_cfg.initial_step = cfg.initial_step;
    report.optimization =
        detail::run_step("minimize", [&] { return minimize(objective, init, opt_cfg); });

    const Statevector final_state = detail::run_step(
        "evolve", [&] { return evolve(table, report.optimization.best_params, cfg.qubit_budget); });
    report.distribution =
        detail::run_step("sample", [&] { return sample(final_state, cfg.shots, cfg.seed); });
    report.score = detail::run_step(
        "score_distribution", [&] { return score_distribution(report.distribution, g, report.catalog); });
    if (!report.score.top_strings.empty())
        report.decoded_best = decode_bitstring(report.score.top_strings.front().first, g.vertex_count);

    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

inline RunReport solve(const RunConfig& cfg) {
    const Graph g = detail::run_step("parse_graph", [&] {
        return parse_graph(read_file(cfg.graph_path));
    });
    return solve_graph(cfg, g);
}

inline ordered_json report_to_json(const RunReport& r) {
    ordered_json j;
    j["config"] = {{"graph_path", r.config.graph_path},
                   {"layers", r.config.layers},
                   {"alpha", r.config.alpha},
                   {"penalty", r.penalty},
                   {"max_iterations", r.config.max_iterations},
                   {"shots", r.config.shots},
                   {"seed", r.config.seed},
                   {"ramp_scale", r.config.ramp_scale},
                   {"function_tolerance", r.config.function_tolerance},
                   {"initial_step", r.config.initial_step},
                   {"seed_mode", r.config.seed_mode == SeedMode::common_random_numbers
                                     ? "common_random_numbers"
                                     : "per_evaluation"},
                   {"cvar_boundary",
                    r.config.cvar_boundary == CvarBoundary::fractional ? "fractional" : "whole"},
                   {"vertex_count", r.vertex_count},
                   {"qubit_count", r.qubit_count}};

    ordered_json optimal_sets = ordered_json::array();
    for (const auto& s : r.catalog.optimal_sets) optimal_sets.push_back(s);
    j["catalog"] = {{"minimum_size", r.catalog.minimum_size},
                    {"ids_count", r.catalog.all_ids.size()},
                    {"optimal_sets", optimal_sets}};

    j["optimization"] = {
        {"best_cost", r.optimization.best_cost},
        {"evaluations", r.optimization.evaluations},
        {"terminated_by", r.optimization.terminated_by == Termination::tolerance
                              ? "tolerance"
                              : "max_iterations"},
        {"best_params",
         {{"gammas", r.optimization.best_params.gammas},
          {"betas", r.optimization.best_params.betas}}}};

    ordered_json full = ordered_json::object();
    for (const auto& [index, mass] : r.distribution.weights)
        full[to_bitstring(index, r.distribution.qubit_count)] = mass;
    ordered_json marginal = ordered_json::object();
    {
        auto ranked = r.score.top_strings;
        std::sort(ranked.begin(), ranked.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (const auto& [bits, mass] : ranked) marginal[bits] = mass;
    }
    j["distribution"] = {{"total_shots", r.distribution.total_shots},
                         {"full", full},
                         {"vertex_marginal", marginal}};

    ordered_json top = ordered_json::array();
    for (const auto& [bits, mass] : r.score.top_strings) top.push_back({bits, mass});
    j["score"] = {{"correct_probability", r.score.correct_probability},
                  {"optimal_probability", r.score.optimal_probability},
                  {"top_strings", top}};

    ordered_json trace = ordered_json::array();
    double best_so_far = 0.0;
    for (std::size_t i = 0; i < r.optimization.cost_trace.size(); ++i) {
        const auto& point = r.optimization.cost_trace[i];
        best_so_far = i == 0 ? point.value : std::min(best_so_far, point.value);
        trace.push_back({point.evaluation, point.value, best_so_far});
    }
    j["cost_trace"] = trace;
    j["decoded_best"] = r.decoded_best;
    j["wall_time_seconds"] = r.wall_time_seconds;
    return j;
}

// Identical configs (seed included) must reproduce reports byte-for-byte
// except for timing; compare with this.
inline std::string report_replay_bytes(const RunReport& r) {
    ordered_json j = report_to_json(r);
    j.erase("wall_time_seconds");
    return j.dump(2);
}

inline std::string trace_csv(const OptResult& opt) {
    std::string out = "iteration,objective,best_so_far\n";
    double best_so_far = 0.0;
    for (std::size_t i = 0; i < opt.cost_trace.size(); ++i) {
        const auto& point = opt.cost_trace[i];
        best_so_far = i == 0 ? point.value : std::min(best_so_far, point.value);
        out += std::to_string(point.evaluation) + "," + format_double(point.value) + "," +
               format_double(best_so_far) + "\n";
    }
    return out;
}

inline std::string trace_csv_path(const std::string& report_path) {
    const std::string suffix = ".json";
    if (report_path.size() > suffix.size() &&
        report_path.compare(report_path.size() - suffix.size(), suffix.size(), suffix) == 0)
        return report_path.substr(0, report_path.size() - suffix.size()) + ".trace.csv";
    return report_path + ".trace.csv";
}

// solve + write the JSON report and the CSV cost trace next to it.
inline RunReport run_solve(const RunConfig& cfg) {
    RunReport report = solve(cfg);
    write_file(cfg.output_path, report_to_json(report).dump(2) + "\n");
    write_file(trace_csv_path(cfg.output_path), trace_csv(report.optimization));
    return report;
}

enum class SweepAxis { layers, alpha, penalty, max_iterations };

inline SweepAxis parse_sweep_axis(const std::string& name) {
    if (name == "layers") return SweepAxis::layers;
    if (name == "alpha") return SweepAxis::alpha;
    if (name == "penalty") return SweepAxis::penalty;
    if (name == "max-iters" || name == "max_iterations") return SweepAxis::max_iterations;
    throw InputError("unknown sweep axis: " + name +
                     " (expected layers, alpha, penalty, or max-iters)");
}

inline std::string sweep_axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::layers: return "layers";
        case SweepAxis::alpha: return "alpha";
        case SweepAxis::penalty: return "penalty";
        case SweepAxis::max_iterations: return "max-iters";
    }
    return "?";
}

struct SweepCell {
    double value = 0.0;
    std::uint64_t seed = 0;
    double correct_probability = 0.0;
    double optimal_probability = 0.0;
    std::string error;  // empty on success
};

inline RunConfig apply_sweep_axis(RunConfig cfg, SweepAxis axis, double value) {
    switch (axis) {
        case SweepAxis::layers: cfg.layers = static_cast<int>(value); break;
        case SweepAxis::alpha: cfg.alpha = value; break;
        case SweepAxis::penalty: cfg.penalty = value; break;
        case SweepAxis::max_iterations: cfg.max_iterations = static_cast<long long>(value); break;
    }
    return cfg;
}

// Cartesian product of values x seeds, seeds common across axis values so
// cells stay comparable. Cells run in parallel; failures are recorded in the
// cell rather than aborting the sweep.
inline std::vector<SweepCell> run_sweep(const RunConfig& base, SweepAxis axis,
                                        const std::vector<double>& values,
                                        const std::vector<std::uint64_t>& seeds,
                                        unsigned max_workers = 0) {
    const Graph g = detail::run_step("parse_graph", [&] {
        return parse_graph(read_file(base.graph_path));
    });

    std::vector<SweepCell> cells;
    for (double value : values)
        for (std::uint64_t seed : seeds) cells.push_back({value, seed, 0.0, 0.0, ""});

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < cells.size();) {
            SweepCell& cell = cells[i];
            try {
                RunConfig cfg = apply_sweep_axis(base, axis, cell.value);
                cfg.seed = cell.seed;
                const RunReport report = solve_graph(cfg, g);
                cell.correct_probability = report.score.correct_probability;
                cell.optimal_probability = report.score.optimal_probability;
            } catch (const std::exception& e) {
                cell.error = e.what();
            }
        }
    };

    unsigned workers = max_workers ? max_workers : std::thread::hardware_concurrency();
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(cells.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return cells;
}

inline std::string sweep_csv(SweepAxis axis, const std::vector<SweepCell>& cells) {
    std::string out = "axis,value,seed,correct_probability,optimal_probability,status\n";
    for (const auto& cell : cells) {
        std::string status = cell.error.empty() ? "ok" : cell.error;
        std::replace(status.begin(), status.end(), ',', ';');
        out += sweep_axis_name(axis) + "," + format_double(cell.value) + "," +
               std::to_string(cell.seed) + "," + format_double(cell.correct_probability) + "," +
               format_double(cell.optimal_probability) + "," + status + "\n";
    }
    return out;
}

inline ordered_json sweep_to_json(SweepAxis axis, const std::vector<SweepCell>& cells) {
    ordered_json j;
    j["axis"] = sweep_axis_name(axis);
    ordered_json rows = ordered_json::array();
    for (const auto& cell : cells) {
        ordered_json row = {{"value", cell.value},
                            {"seed", cell.seed},
                            {"correct_probability", cell.correct_probability},
                            {"optimal_probability", cell.optimal_probability}};
        if (!cell.error.empty()) row["error"] = cell.error;
        rows.push_back(row);
    }
    j["cells"] = rows;
    return j;
}

}  // namespace qidp
