#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numeric>
#include <vector>

#include "qidp/statevector.hpp"

namespace qidp {

enum class CvarBoundary {
    fractional,  // boundary outcome weighted so exactly alpha mass is covered
    whole        // boundary outcome included in full
};

// Mean energy of the lowest-energy alpha tail of the distribution. Outcomes
// are sorted by energy (ties by basis index); with fractional weighting the
// result is continuous in alpha and equals the plain expectation at alpha = 1.
inline double cvar(const SampleDistribution& dist, const EnergyTable& table, double alpha,
                   CvarBoundary boundary = CvarBoundary::fractional) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw InputError("alpha must lie in (0, 1]");
    if (dist.weights.empty()) throw InputError("empty distribution");

    std::vector<std::pair<std::uint64_t, double>> outcomes;
    outcomes.reserve(dist.weights.size());
    for (const auto& [index, mass] : dist.weights) {
        if (index >= table.energies.size())
            throw InputError("distribution index outside energy table");
        outcomes.emplace_back(index, mass);
    }
    std::sort(outcomes.begin(), outcomes.end(), [&](const auto& a, const auto& b) {
        double ea = table.energies[a.first];
        double eb = table.energies[b.first];
        return ea != eb ? ea < eb : a.first < b.first;
    });

    if (boundary == CvarBoundary::fractional) {
        double remaining = alpha;
        double acc = 0.0;
        for (const auto& [index, mass] : outcomes) {
            const double take = std::min(mass, remaining);
            acc += take * table.energies[index];
            remaining -= take;
            if (remaining <= 0.0) break;
        }
        return acc / alpha;
    }
    double covered = 0.0;
    double acc = 0.0;
    for (const auto& [index, mass] : outcomes) {
        covered += mass;
        acc += mass * table.energies[index];
        if (covered >= alpha) break;
    }
    return acc / covered;
}

// Annealing-style linear ramp: gamma_k = (k/q) * scale rising from ~0, beta_k
// = (k/q - 1) * scale rising from -scale to 0. The beta ramp must be negative
// here: the mixer is applied as e^{-i beta X} per qubit while the start state
// is the top eigenstate of the mixer sum, so a Trotterized anneal needs mixer
// angles of the opposite sign to the phase angles. Both ramps positive runs
// the anneal backwards and strands the search far above the baseline cost.
inline AnsatzParams initial_params(int layers, double ramp_scale) {
    if (layers < 1) throw InputError("layer count must be at least 1");
    if (ramp_scale <= 0.0) throw InputError("ramp scale must be positive");
    AnsatzParams p;
    p.gammas.reserve(static_cast<std::size_t>(layers));
    p.betas.reserve(static_cast<std::size_t>(layers));
    for (int k = 1; k <= layers; ++k) {
        const double frac = static_cast<double>(k) / layers;
        p.gammas.push_back(frac * ramp_scale);
        p.betas.push_back((frac - 1.0) * ramp_scale);
    }
    return p;
}

struct OptimizerConfig {
    long long max_iterations = 10000;  // objective evaluation budget
    double function_tolerance = 1e-8;
    double initial_step = 0.1;         // initial simplex edge length
};

enum class Termination { max_iterations, tolerance };

struct CostPoint {
    long long evaluation = 0;  // 1-based
    double value = 0.0;
};

struct OptResult {
    AnsatzParams best_params;
    double best_cost = 0.0;
    std::vector<CostPoint> cost_trace;
    long long evaluations = 0;
    Termination terminated_by = Termination::max_iterations;
};

using Objective = std::function<double(const std::vector<double>&)>;

inline std::vector<double> flatten_params(const AnsatzParams& p) {
    std::vector<double> x = p.gammas;
    x.insert(x.end(), p.betas.begin(), p.betas.end());
    return x;
}

inline AnsatzParams unflatten_params(const std::vector<double>& x) {
    AnsatzParams p;
    const std::size_t q = x.size() / 2;
    p.gammas.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(q));
    p.betas.assign(x.begin() + static_cast<std::ptrdiff_t>(q), x.end());
    return p;
}

namespace detail {

struct BudgetExhausted {};

// Counts evaluations against the budget, records the trace, and tracks the
// best point seen. Throws BudgetExhausted instead of starting an evaluation
// past the budget, so the caller never overspends.
class EvalRecorder {
public:
    EvalRecorder(const Objective& objective, long long budget)
        : objective_(objective), budget_(budget) {}

    double operator()(const std::vector<double>& x) {
        if (count_ == budget_) throw BudgetExhausted{};
        const double value = objective_(x);
        ++count_;
        if (!std::isfinite(value)) {
            std::string msg = "objective returned non-finite value at parameters [";
            for (std::size_t i = 0; i < x.size(); ++i)
                msg += (i ? ", " : "") + format_double(x[i]);
            throw NumericalError(msg + "]");
        }
        trace_.push_back({count_, value});
        if (count_ == 1 || value < best_value_) {
            best_value_ = value;
            best_point_ = x;
        }
        return value;
    }

    long long count() const { return count_; }
    const std::vector<CostPoint>& trace() const { return trace_; }
    double best_value() const { return best_value_; }
    const std::vector<double>& best_point() const { return best_point_; }

private:
    const Objective& objective_;
    long long budget_;
    long long count_ = 0;
    std::vector<CostPoint> trace_;
    double best_value_ = 0.0;
    std::vector<double> best_point_;
};

}  // namespace detail

// Derivative-free simplex search (Nelder-Mead with the dimension-adaptive
// coefficients). Stops when the evaluation budget is spent or when both the
// simplex extent and the value spread fall below function_tolerance. Always
// returns the best parameters ever evaluated.
inline OptResult minimize(const Objective& objective, const AnsatzParams& init,
                          const OptimizerConfig& cfg) {
    if (cfg.max_iterations < 1) throw InputError("max_iterations must be positive");
    if (cfg.function_tolerance <= 0.0) throw InputError("function_tolerance must be positive");
    if (cfg.initial_step <= 0.0) throw InputError("initial_step must be positive");
    layer_count(init);  // enforces equal schedule lengths

    const std::vector<double> x0 = flatten_params(init);
    const std::size_t dims = x0.size();
    detail::EvalRecorder eval(objective, cfg.max_iterations);
    Termination terminated = Termination::max_iterations;

    try {
        if (dims == 0) {
            eval(x0);
            terminated = Termination::tolerance;
        } else {
            const double n = static_cast<double>(dims);
            const double refl = 1.0;
            const double expa = 1.0 + 2.0 / n;
            const double contr = 0.75 - 0.5 / n;
            const double shrink = 1.0 - 1.0 / n;

            std::vector<std::vector<double>> pts(dims + 1, x0);
            std::vector<double> vals(dims + 1);
            vals[0] = eval(pts[0]);
            for (std::size_t i = 1; i <= dims; ++i) {
                pts[i][i - 1] += cfg.initial_step;
                vals[i] = eval(pts[i]);
            }

            std::vector<std::size_t> order(dims + 1);
            while (true) {
                std::iota(order.begin(), order.end(), std::size_t{0});
                std::stable_sort(order.begin(), order.end(),
                                 [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
                const std::size_t best = order.front();
                const std::size_t worst = order.back();
                const std::size_t second_worst = order[dims - 1];

                double extent = 0.0;
                for (std::size_t i = 0; i <= dims; ++i)
                    for (std::size_t j = 0; j < dims; ++j)
                        extent = std::max(extent, std::abs(pts[i][j] - pts[best][j]));
                if (vals[worst] - vals[best] <= cfg.function_tolerance &&
                    extent <= cfg.function_tolerance) {
                    terminated = Termination::tolerance;
                    break;
                }

                std::vector<double> centroid(dims, 0.0);
                for (std::size_t i = 0; i <= dims; ++i) {
                    if (i == worst) continue;
                    for (std::size_t j = 0; j < dims; ++j) centroid[j] += pts[i][j];
                }
                for (double& c : centroid) c /= n;

                auto blend = [&](double t) {
                    std::vector<double> x(dims);
                    for (std::size_t j = 0; j < dims; ++j)
                        x[j] = centroid[j] + t * (centroid[j] - pts[worst][j]);
                    return x;
                };

                std::vector<double> reflected = blend(refl);
                const double f_reflected = eval(reflected);

                if (f_reflected < vals[best]) {
                    std::vector<double> expanded = blend(expa);
                    const double f_expanded = eval(expanded);
                    if (f_expanded < f_reflected) {
                        pts[worst] = std::move(expanded);
                        vals[worst] = f_expanded;
                    } else {
                        pts[worst] = std::move(reflected);
                        vals[worst] = f_reflected;
                    }
                    continue;
                }
                if (f_reflected < vals[second_worst]) {
                    pts[worst] = std::move(reflected);
                    vals[worst] = f_reflected;
                    continue;
                }
                if (f_reflected < vals[worst]) {
                    std::vector<double> contracted = blend(contr);
                    const double f_contracted = eval(contracted);
                    if (f_contracted <= f_reflected) {
                        pts[worst] = std::move(contracted);
                        vals[worst] = f_contracted;
                        continue;
                    }
                } else {
                    std::vector<double> contracted = blend(-contr);
                    const double f_contracted = eval(contracted);
                    if (f_contracted < vals[worst]) {
                        pts[worst] = std::move(contracted);
                        vals[worst] = f_contracted;
                        continue;
                    }
                }

                for (std::size_t i = 0; i <= dims; ++i) {
                    if (i == best) continue;
                    for (std::size_t j = 0; j < dims; ++j)
                        pts[i][j] = pts[best][j] + shrink * (pts[i][j] - pts[best][j]);
                    vals[i] = eval(pts[i]);
                }
            }
        }
    } catch (const detail::BudgetExhausted&) {
        terminated = Termination::max_iterations;
    }

    OptResult result;
    result.best_params = unflatten_params(eval.best_point());
    result.best_cost = eval.best_value();
    result.cost_trace = eval.trace();
    result.evaluations = eval.count();
    result.terminated_by = terminated;
    return result;
}

enum class SeedMode {
    common_random_numbers,  // same sampling seed on every evaluation
    per_evaluation          // seed advanced with the evaluation index
};

struct SeedPolicy {
    std::uint64_t base_seed = 0;
    SeedMode mode = SeedMode::common_random_numbers;
};

// Binds ansatz evolution, sampling, and CVaR into a single objective over the
// flattened (gammas..., betas...) vector. shots == 0 selects exact mode.
inline Objective qaoa_objective(const EnergyTable& table, int layers, long long shots,
                                double alpha, SeedPolicy seed_policy,
                                CvarBoundary boundary = CvarBoundary::fractional) {
    if (layers < 1) throw InputError("layer count must be at least 1");
    if (shots < 0) throw InputError("shot count must be nonnegative");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw InputError("alpha must lie in (0, 1]");

    auto shared_table = std::make_shared<EnergyTable>(table);
    auto counter = std::make_shared<std::uint64_t>(0);
    return [shared_table, layers, shots, alpha, seed_policy, boundary,
            counter](const std::vector<double>& x) {
        if (static_cast<int>(x.size()) != 2 * layers)
            throw InputError("parameter vector length must be 2 * layers");
        const Statevector state = evolve(*shared_table, unflatten_params(x));
        std::uint64_t seed = seed_policy.base_seed;
        if (shots > 0 && seed_policy.mode == SeedMode::per_evaluation)
            seed = derive_seed(seed_policy.base_seed, ++*counter);
        const SampleDistribution dist = sample(state, shots, seed);
        return cvar(dist, *shared_table, alpha, boundary);
    };
}

}  // namespace qidp
