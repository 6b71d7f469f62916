#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "qidp/qubo.hpp"
#include "qidp/statevector.hpp"

namespace qidp {

// Exhaustive ground truth for a graph: every independent dominating set,
// the minimum size, and the minimum-size sets.
struct IdsCatalog {
    int minimum_size = 0;
    std::vector<VertexSet> optimal_sets;
    std::vector<VertexSet> all_ids;
};

inline IdsCatalog brute_force_ids(const Graph& g, int vertex_budget = 24) {
    if (g.vertex_count > vertex_budget)
        throw BudgetError("brute-force enumeration capped at " + std::to_string(vertex_budget) +
                          " vertices");
    const int n = g.vertex_count;

    // bit i of a mask = vertex i
    std::vector<std::uint32_t> closed(static_cast<std::size_t>(n), 0);
    std::vector<std::uint32_t> open(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
        closed[static_cast<std::size_t>(v)] = 1u << v;
        for (int u : g.adjacency[static_cast<std::size_t>(v)]) {
            closed[static_cast<std::size_t>(v)] |= 1u << u;
            open[static_cast<std::size_t>(v)] |= 1u << u;
        }
    }

    IdsCatalog catalog;
    catalog.minimum_size = n + 1;
    const std::uint64_t subset_count = 1ull << n;
    for (std::uint64_t subset = 0; subset < subset_count; ++subset) {
        const auto mask = static_cast<std::uint32_t>(subset);
        bool ok = true;
        for (int v = 0; ok && v < n; ++v) {
            if ((closed[static_cast<std::size_t>(v)] & mask) == 0) ok = false;          // undominated
            else if ((mask >> v & 1u) && (open[static_cast<std::size_t>(v)] & mask)) ok = false;  // edge inside
        }
        if (!ok) continue;
        VertexSet members;
        for (int v = 0; v < n; ++v)
            if (mask >> v & 1u) members.push_back(v);
        catalog.minimum_size = std::min(catalog.minimum_size, static_cast<int>(members.size()));
        catalog.all_ids.push_back(std::move(members));
    }
    for (const auto& s : catalog.all_ids)
        if (static_cast<int>(s.size()) == catalog.minimum_size) catalog.optimal_sets.push_back(s);
    return catalog;
}

struct QuboMinimum {
    double min_value = 0.0;
    std::vector<Assignment> argmin;  // ascending basis-index order
};

// Exhaustive scan over all 2^variable_count assignments.
inline QuboMinimum brute_force_qubo_min(const QuboModel& m, int variable_budget = 24) {
    if (m.variable_count > variable_budget)
        throw BudgetError("brute-force scan capped at " + std::to_string(variable_budget) +
                          " variables");
    QuboMinimum result;
    const std::uint64_t count = 1ull << m.variable_count;
    constexpr double kTie = 1e-9;
    for (std::uint64_t index = 0; index < count; ++index) {
        const Assignment a = assignment_from_index(index, m.variable_count);
        const double value = evaluate_qubo(m, a);
        if (result.argmin.empty() || value < result.min_value - kTie) {
            result.min_value = value;
            result.argmin.assign(1, a);
        } else if (value <= result.min_value + kTie) {
            result.argmin.push_back(a);
        }
    }
    return result;
}

// Correct / optimal probabilities of a sampled distribution, judged on the
// vertex bits alone: slack positions are marginalized out before scoring.
struct ScoreReport {
    double correct_probability = 0.0;  // mass decoding to any IDS
    double optimal_probability = 0.0;  // mass decoding to a minimum IDS
    std::vector<std::pair<std::string, double>> top_strings;  // vertex strings by mass desc
};

inline ScoreReport score_distribution(const SampleDistribution& dist, const Graph& g,
                                      const IdsCatalog& catalog) {
    if (dist.qubit_count < g.vertex_count)
        throw InputError("distribution strings shorter than vertex count");
    const int slack_bits = dist.qubit_count - g.vertex_count;

    std::map<std::uint64_t, double> marginal;
    for (const auto& [index, mass] : dist.weights) marginal[index >> slack_bits] += mass;

    auto set_key = [&](const VertexSet& s) {
        std::uint64_t key = 0;
        for (int v : s) key |= 1ull << (g.vertex_count - 1 - v);
        return key;
    };
    std::unordered_set<std::uint64_t> ids_keys, optimal_keys;
    for (const auto& s : catalog.all_ids) ids_keys.insert(set_key(s));
    for (const auto& s : catalog.optimal_sets) optimal_keys.insert(set_key(s));

    ScoreReport report;
    for (const auto& [vertex_index, mass] : marginal) {
        if (ids_keys.count(vertex_index)) report.correct_probability += mass;
        if (optimal_keys.count(vertex_index)) report.optimal_probability += mass;
        report.top_strings.emplace_back(to_bitstring(vertex_index, g.vertex_count), mass);
    }
    std::sort(report.top_strings.begin(), report.top_strings.end(),
              [](const auto& a, const auto& b) {
                  return a.second != b.second ? a.second > b.second : a.first < b.first;
              });
    return report;
}

}  // namespace qidp
