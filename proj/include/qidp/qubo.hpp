#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qidp/graph.hpp"

namespace qidp {

// Binary encoding of an integer slack S in [0, n-1]: bit weights
// 2^0, 2^1, ..., 2^{bit_count-2} followed by the residual weight
// n - 1 - (2^{bit_count-1} - 1), where bit_count is the binary length of n-1.
// Every value in [0, n-1] is attainable (possibly in more than one way).
struct SlackEncoding {
    int bit_count = 0;
    std::vector<long long> coefficients;
    long long range_max = 0;
};

inline SlackEncoding slack_encoding(int n) {
    if (n < 3) throw InputError("slack encoding requires n >= 3");
    const long long range_max = n - 1;
    int bit_count = 0;
    for (long long v = range_max; v > 0; v >>= 1) ++bit_count;
    SlackEncoding enc;
    enc.bit_count = bit_count;
    enc.range_max = range_max;
    long long covered = 0;
    for (int i = 0; i + 1 < bit_count; ++i) {
        enc.coefficients.push_back(1ll << i);
        covered += 1ll << i;
    }
    enc.coefficients.push_back(range_max - covered);
    return enc;
}

using QuadKey = std::pair<int, int>;  // normalized a < b

inline QuadKey quad_key(int a, int b) {
    return a < b ? QuadKey{a, b} : QuadKey{b, a};
}

// Penalty QUBO over the vertex variables 0..|V|-1 followed by slack variables
// grouped by owning vertex constraint. Objective value of an assignment is
// constant + sum linear + sum quadratic; x^2 terms are always folded into the
// linear part.
struct QuboModel {
    struct SlackInfo {
        int vertex = 0;       // owning vertex constraint
        long long weight = 0; // bit weight inside that constraint's slack sum
    };

    int variable_count = 0;
    int vertex_count = 0;
    double penalty = 0.0;
    double constant = 0.0;
    std::vector<double> linear;                 // size variable_count
    std::map<QuadKey, double> quadratic;        // keys have distinct endpoints
    std::vector<SlackInfo> slack_registry;      // entry k describes variable vertex_count + k
};

inline double default_penalty(const Graph& g) { return 0.75 * g.vertex_count; }

// One covering constraint sum_{j in N[v]} x_j >= 1 as a quadratic penalty.
// Vanishes exactly on satisfying assignments (minimized over the slack bits)
// and is >= penalty otherwise.
struct PenaltyContribution {
    double constant = 0.0;
    std::map<int, double> linear;
    std::map<QuadKey, double> quadratic;
    std::vector<QuboModel::SlackInfo> slacks;  // new variables, first_slack_index upward
};

inline PenaltyContribution constraint_penalty(const Graph& g, int v, double penalty,
                                              int first_slack_index) {
    if (penalty <= 0.0) throw InputError("penalty coefficient must be positive");
    const VertexSet members = closed_neighborhood(g, v);
    const int n = static_cast<int>(members.size());
    PenaltyContribution out;

    if (n == 1) {
        // P * (x - 1)^2 = P * (1 - x)
        out.constant = penalty;
        out.linear[members[0]] = -penalty;
        return out;
    }
    if (n == 2) {
        // P * (1 - x_a - x_b + x_a x_b)
        out.constant = penalty;
        out.linear[members[0]] = -penalty;
        out.linear[members[1]] = -penalty;
        out.quadratic[quad_key(members[0], members[1])] = penalty;
        return out;
    }

    // n >= 3: square of sum_{j in N[v]} x_j - S - 1 with S binary-encoded.
    const SlackEncoding enc = slack_encoding(n);
    std::vector<std::pair<int, double>> terms;  // (variable, signed coefficient)
    terms.reserve(members.size() + enc.coefficients.size());
    for (int j : members) terms.emplace_back(j, 1.0);
    for (int k = 0; k < enc.bit_count; ++k) {
        terms.emplace_back(first_slack_index + k,
                           -static_cast<double>(enc.coefficients[static_cast<std::size_t>(k)]));
        out.slacks.push_back({v, enc.coefficients[static_cast<std::size_t>(k)]});
    }
    out.constant = penalty;  // (-1)^2
    for (const auto& [var, coeff] : terms) {
        // a^2 x^2 + 2*(-1)*a x, with x^2 = x
        out.linear[var] += penalty * coeff * (coeff - 2.0);
    }
    for (std::size_t i = 0; i < terms.size(); ++i) {
        for (std::size_t j = i + 1; j < terms.size(); ++j) {
            out.quadratic[quad_key(terms[i].first, terms[j].first)] +=
                2.0 * penalty * terms[i].second * terms[j].second;
        }
    }
    return out;
}

// Full model: sum_i x_i + covering penalties per vertex + P * x_i x_j per edge.
inline QuboModel build_qubo(const Graph& g, double penalty) {
    if (g.vertex_count < 1) throw InputError("graph must have at least one vertex");
    if (penalty <= 0.0) throw InputError("penalty coefficient must be positive");

    QuboModel m;
    m.vertex_count = g.vertex_count;
    m.penalty = penalty;

    int slack_total = 0;
    for (int v = 0; v < g.vertex_count; ++v) {
        int n = static_cast<int>(g.adjacency[static_cast<std::size_t>(v)].size()) + 1;
        if (n >= 3) slack_total += slack_encoding(n).bit_count;
    }
    m.variable_count = g.vertex_count + slack_total;
    m.linear.assign(static_cast<std::size_t>(m.variable_count), 0.0);

    for (int v = 0; v < g.vertex_count; ++v) m.linear[static_cast<std::size_t>(v)] += 1.0;

    int next_slack = g.vertex_count;
    for (int v = 0; v < g.vertex_count; ++v) {
        PenaltyContribution c = constraint_penalty(g, v, penalty, next_slack);
        m.constant += c.constant;
        for (const auto& [var, coeff] : c.linear) m.linear[static_cast<std::size_t>(var)] += coeff;
        for (const auto& [key, coeff] : c.quadratic) m.quadratic[key] += coeff;
        for (const auto& info : c.slacks) m.slack_registry.push_back(info);
        next_slack += static_cast<int>(c.slacks.size());
    }

    for (auto [u, v] : g.edges) m.quadratic[quad_key(u, v)] += penalty;
    return m;
}

using Assignment = std::vector<std::uint8_t>;  // one 0/1 value per variable

inline Assignment assignment_from_index(std::uint64_t index, int variable_count) {
    Assignment a(static_cast<std::size_t>(variable_count));
    for (int i = 0; i < variable_count; ++i)
        a[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(index_bit(index, i, variable_count));
    return a;
}

inline double evaluate_qubo(const QuboModel& m, const Assignment& a) {
    if (static_cast<int>(a.size()) != m.variable_count)
        throw InputError("assignment length does not match variable count");
    double value = m.constant;
    for (int i = 0; i < m.variable_count; ++i)
        if (a[static_cast<std::size_t>(i)]) value += m.linear[static_cast<std::size_t>(i)];
    for (const auto& [key, coeff] : m.quadratic)
        if (a[static_cast<std::size_t>(key.first)] && a[static_cast<std::size_t>(key.second)])
            value += coeff;
    return value;
}

// Text export: constant line, then "i coeff" linear lines, then "i j coeff"
// quadratic lines, ascending indices, zero terms skipped.
inline std::string export_qubo(const QuboModel& m) {
    std::string out = format_double(m.constant) + "\n";
    for (int i = 0; i < m.variable_count; ++i) {
        double c = m.linear[static_cast<std::size_t>(i)];
        if (c != 0.0) out += std::to_string(i) + " " + format_double(c) + "\n";
    }
    for (const auto& [key, coeff] : m.quadratic) {
        if (coeff != 0.0)
            out += std::to_string(key.first) + " " + std::to_string(key.second) + " " +
                   format_double(coeff) + "\n";
    }
    return out;
}

}  // namespace qidp
