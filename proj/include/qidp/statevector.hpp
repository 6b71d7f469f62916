#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "qidp/ising.hpp"

namespace qidp {

using Amplitude = std::complex<double>;

// Dense 2^n-amplitude state. The cost Hamiltonian is diagonal, so the phase
// layer is a pointwise multiply against the precomputed energy table and the
// mixer is an exact per-qubit X rotation; no general gate machinery is needed.
struct Statevector {
    int qubit_count = 0;
    std::vector<Amplitude> amplitudes;
};

inline double norm_squared(const Statevector& s) {
    double total = 0.0;
    for (const auto& a : s.amplitudes) total += std::norm(a);
    return total;
}

inline Statevector uniform_state(int qubit_count, int qubit_budget = 24) {
    if (qubit_count < 1) throw InputError("state needs at least one qubit");
    if (qubit_count > qubit_budget)
        throw BudgetError("statevector would need 2^" + std::to_string(qubit_count) +
                          " amplitudes, budget is 2^" + std::to_string(qubit_budget));
    Statevector s;
    s.qubit_count = qubit_count;
    const std::uint64_t dim = 1ull << qubit_count;
    s.amplitudes.assign(dim, Amplitude(std::pow(2.0, -qubit_count / 2.0), 0.0));
    return s;
}

// amplitude[k] *= exp(-i * gamma * E_k)
inline void apply_phase_layer(Statevector& s, const EnergyTable& table, double gamma) {
    if (s.qubit_count != table.qubit_count)
        throw InputError("state and energy table dimensions differ");
    const std::uint64_t dim = s.amplitudes.size();
    for (std::uint64_t k = 0; k < dim; ++k)
        s.amplitudes[k] *= std::polar(1.0, -gamma * table.energies[k]);
}

// exp(-i * beta * X) on every qubit: (a, b) -> (cos b * a - i sin b * b, ...)
inline void apply_mixer_layer(Statevector& s, double beta) {
    const double c = std::cos(beta);
    const Amplitude is(0.0, -std::sin(beta));
    const std::uint64_t dim = s.amplitudes.size();
    for (int q = 0; q < s.qubit_count; ++q) {
        const std::uint64_t stride = 1ull << (s.qubit_count - 1 - q);
        for (std::uint64_t base = 0; base < dim; base += 2 * stride) {
            for (std::uint64_t off = 0; off < stride; ++off) {
                Amplitude& a = s.amplitudes[base + off];
                Amplitude& b = s.amplitudes[base + off + stride];
                const Amplitude a0 = a;
                a = c * a0 + is * b;
                b = is * a0 + c * b;
            }
        }
    }
}

// Per-layer phase/mixer angles. Layer k uses gammas[k] then betas[k].
struct AnsatzParams {
    std::vector<double> gammas;
    std::vector<double> betas;
};

inline int layer_count(const AnsatzParams& p) {
    if (p.gammas.size() != p.betas.size())
        throw InputError("gamma and beta schedules must have equal length");
    return static_cast<int>(p.gammas.size());
}

// Uniform superposition, then alternating phase/mixer layers, phase first.
inline Statevector evolve(const EnergyTable& table, const AnsatzParams& params,
                          int qubit_budget = 24) {
    const int q = layer_count(params);
    Statevector s = uniform_state(table.qubit_count, qubit_budget);
    for (int layer = 0; layer < q; ++layer) {
        apply_phase_layer(s, table, params.gammas[static_cast<std::size_t>(layer)]);
        apply_mixer_layer(s, params.betas[static_cast<std::size_t>(layer)]);
    }
    return s;
}

inline double expectation(const Statevector& s, const EnergyTable& table) {
    if (s.qubit_count != table.qubit_count)
        throw InputError("state and energy table dimensions differ");
    double value = 0.0;
    const std::uint64_t dim = s.amplitudes.size();
    for (std::uint64_t k = 0; k < dim; ++k)
        value += std::norm(s.amplitudes[k]) * table.energies[k];
    return value;
}

// Measurement outcome weights keyed by basis index. total_shots == 0 marks
// exact-probability mode.
struct SampleDistribution {
    int qubit_count = 0;
    long long total_shots = 0;
    std::map<std::uint64_t, double> weights;
};

// shots > 0: multinomial draw via inverse CDF with the seeded counter-based
// generator; shots == 0: exact weights |amplitude|^2.
inline SampleDistribution sample(const Statevector& s, long long shots, std::uint64_t seed) {
    if (shots < 0) throw InputError("shot count must be nonnegative");
    SampleDistribution dist;
    dist.qubit_count = s.qubit_count;
    dist.total_shots = shots;
    const std::uint64_t dim = s.amplitudes.size();

    if (shots == 0) {
        for (std::uint64_t k = 0; k < dim; ++k) {
            double p = std::norm(s.amplitudes[k]);
            if (p > 0.0) dist.weights[k] = p;
        }
        return dist;
    }

    std::vector<double> cumulative(dim);
    double acc = 0.0;
    for (std::uint64_t k = 0; k < dim; ++k) {
        acc += std::norm(s.amplitudes[k]);
        cumulative[k] = acc;
    }
    const double total = acc;

    SplitMix64 rng(seed);
    std::map<std::uint64_t, long long> counts;
    for (long long shot = 0; shot < shots; ++shot) {
        const double u = rng.uniform01() * total;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        std::uint64_t k = static_cast<std::uint64_t>(it - cumulative.begin());
        if (k >= dim) k = dim - 1;
        ++counts[k];
    }
    for (const auto& [k, c] : counts)
        dist.weights[k] = static_cast<double>(c) / static_cast<double>(shots);
    return dist;
}

}  // namespace qidp
