#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "qidp/qubo.hpp"

namespace qidp {

// Diagonal Hamiltonian: constant + sum_i linear_i Z_i + sum_{i<j} quad_ij Z_i Z_j.
// Defining invariant: energy(h, z) == evaluate_qubo(source model, z) for every
// basis bit string z. Bit convention: z_i = 1 means variable selected, realized
// as x_i = (1 - Z_i)/2 since Z|1> = -|1>; this keeps the sampled strings
// positional (string position i is vertex i).
struct IsingHamiltonian {
    int qubit_count = 0;
    double constant = 0.0;
    std::vector<double> linear;           // coefficient of Z_i
    std::map<QuadKey, double> quadratic;  // coefficient of Z_i Z_j
};

inline IsingHamiltonian qubo_to_ising(const QuboModel& m) {
    IsingHamiltonian h;
    h.qubit_count = m.variable_count;
    h.constant = m.constant;
    h.linear.assign(static_cast<std::size_t>(m.variable_count), 0.0);

    // x_i -> (1 - Z_i)/2
    for (int i = 0; i < m.variable_count; ++i) {
        double c = m.linear[static_cast<std::size_t>(i)];
        h.constant += c / 2.0;
        h.linear[static_cast<std::size_t>(i)] -= c / 2.0;
    }
    // x_i x_j -> (1 - Z_i - Z_j + Z_i Z_j)/4
    for (const auto& [key, c] : m.quadratic) {
        h.constant += c / 4.0;
        h.linear[static_cast<std::size_t>(key.first)] -= c / 4.0;
        h.linear[static_cast<std::size_t>(key.second)] -= c / 4.0;
        h.quadratic[key] += c / 4.0;
    }
    return h;
}

inline double spin(int bit) { return bit ? -1.0 : 1.0; }

inline double energy(const IsingHamiltonian& h, std::uint64_t basis_index) {
    double value = h.constant;
    for (int i = 0; i < h.qubit_count; ++i)
        value += h.linear[static_cast<std::size_t>(i)] * spin(index_bit(basis_index, i, h.qubit_count));
    for (const auto& [key, c] : h.quadratic)
        value += c * spin(index_bit(basis_index, key.first, h.qubit_count)) *
                 spin(index_bit(basis_index, key.second, h.qubit_count));
    return value;
}

inline double energy(const IsingHamiltonian& h, const std::vector<std::uint8_t>& bits) {
    if (static_cast<int>(bits.size()) != h.qubit_count)
        throw InputError("bit string length does not match qubit count");
    std::uint64_t index = 0;
    for (auto b : bits) index = (index << 1) | static_cast<std::uint64_t>(b & 1);
    return energy(h, index);
}

// All 2^n basis-state energies, indexed by basis index.
struct EnergyTable {
    int qubit_count = 0;
    std::vector<double> energies;
};

inline EnergyTable energy_table(const IsingHamiltonian& h, int qubit_budget = 24) {
    if (h.qubit_count > qubit_budget)
        throw BudgetError("energy table would need 2^" + std::to_string(h.qubit_count) +
                          " entries, budget is 2^" + std::to_string(qubit_budget));
    EnergyTable table;
    table.qubit_count = h.qubit_count;
    const std::uint64_t dim = 1ull << h.qubit_count;
    table.energies.assign(dim, h.constant);

    auto sign_mask = [&](int qubit) { return 1ull << (h.qubit_count - 1 - qubit); };
    for (int i = 0; i < h.qubit_count; ++i) {
        double c = h.linear[static_cast<std::size_t>(i)];
        if (c == 0.0) continue;
        std::uint64_t mask = sign_mask(i);
        for (std::uint64_t k = 0; k < dim; ++k)
            table.energies[k] += (k & mask) ? -c : c;
    }
    for (const auto& [key, c] : h.quadratic) {
        if (c == 0.0) continue;
        std::uint64_t mask_i = sign_mask(key.first);
        std::uint64_t mask_j = sign_mask(key.second);
        for (std::uint64_t k = 0; k < dim; ++k) {
            bool bi = (k & mask_i) != 0;
            bool bj = (k & mask_j) != 0;
            table.energies[k] += (bi == bj) ? c : -c;
        }
    }
    return table;
}

}  // namespace qidp
