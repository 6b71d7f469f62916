#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "qidp/oracle.hpp"
#include "qidp/qubo.hpp"
#include "test_util.hpp"

using namespace qidp;

namespace {

// Every weighted sum the slack bits can reach.
std::set<long long> attained_sums(const SlackEncoding& enc) {
    std::set<long long> sums;
    for (std::uint64_t bits = 0; bits < (1ull << enc.bit_count); ++bits) {
        long long s = 0;
        for (int k = 0; k < enc.bit_count; ++k)
            if (bits >> k & 1u) s += enc.coefficients[static_cast<std::size_t>(k)];
        sums.insert(s);
    }
    return sums;
}

double contribution_value(const PenaltyContribution& c, const std::map<int, int>& assignment) {
    double value = c.constant;
    for (const auto& [var, coeff] : c.linear)
        if (assignment.at(var)) value += coeff;
    for (const auto& [key, coeff] : c.quadratic)
        if (assignment.at(key.first) && assignment.at(key.second)) value += coeff;
    return value;
}

}  // namespace

TEST_CASE("slack_encoding matches the binary-length construction") {
    const SlackEncoding e4 = slack_encoding(4);
    CHECK(e4.bit_count == 2);
    CHECK(e4.coefficients == std::vector<long long>{1, 2});
    CHECK(e4.range_max == 3);

    const SlackEncoding e3 = slack_encoding(3);
    CHECK(e3.bit_count == 2);
    CHECK(e3.coefficients == std::vector<long long>{1, 1});
    CHECK(e3.range_max == 2);

    const SlackEncoding e5 = slack_encoding(5);
    CHECK(e5.bit_count == 3);
    CHECK(e5.coefficients == std::vector<long long>{1, 2, 1});
    CHECK(e5.range_max == 4);

    CHECK_THROWS_AS(slack_encoding(2), InputError);
    CHECK_THROWS_AS(slack_encoding(0), InputError);
}

TEST_CASE("slack sums cover the whole range") {
    for (int n = 3; n <= 20; ++n) {
        const SlackEncoding enc = slack_encoding(n);
        std::set<long long> expected;
        for (long long v = 0; v <= n - 1; ++v) expected.insert(v);
        CHECK(attained_sums(enc) == expected);
    }
}

TEST_CASE("constraint_penalty single-member form") {
    const Graph g = parse_graph("1 0");
    const PenaltyContribution c = constraint_penalty(g, 0, 2.0, 1);
    CHECK(c.slacks.empty());
    CHECK(contribution_value(c, {{0, 1}}) == doctest::Approx(0.0));
    CHECK(contribution_value(c, {{0, 0}}) == doctest::Approx(2.0));
}

TEST_CASE("constraint_penalty two-member form") {
    const Graph g = parse_graph("2 1\n0 1");
    const PenaltyContribution c = constraint_penalty(g, 0, 3.0, 2);
    CHECK(c.slacks.empty());
    CHECK(contribution_value(c, {{0, 0}, {1, 0}}) == doctest::Approx(3.0));
    CHECK(contribution_value(c, {{0, 1}, {1, 0}}) == doctest::Approx(0.0));
    CHECK(contribution_value(c, {{0, 0}, {1, 1}}) == doctest::Approx(0.0));
    CHECK(contribution_value(c, {{0, 1}, {1, 1}}) == doctest::Approx(0.0));
}

TEST_CASE("constraint_penalty slack form matches the reference expansion") {
    const Graph g = testutil::six_node_graph();
    const PenaltyContribution c = constraint_penalty(g, 2, 4.5, 6);

    testutil::TestPoly ref;
    ref.add_square({{2, 1.0}, {0, 1.0}, {4, 1.0}, {3, 1.0}, {6, -1.0}, {7, -2.0}}, -1.0, 4.5);

    CHECK(c.constant == doctest::Approx(ref.constant).epsilon(1e-12));
    CHECK(c.linear.size() == ref.linear.size());
    for (const auto& [var, coeff] : ref.linear)
        CHECK(c.linear.at(var) == doctest::Approx(coeff).epsilon(1e-12));
    CHECK(c.quadratic.size() == ref.quadratic.size());
    for (const auto& [key, coeff] : ref.quadratic)
        CHECK(c.quadratic.at(key) == doctest::Approx(coeff).epsilon(1e-12));

    REQUIRE(c.slacks.size() == 2);
    CHECK(c.slacks[0].vertex == 2);
    CHECK(c.slacks[0].weight == 1);
    CHECK(c.slacks[1].vertex == 2);
    CHECK(c.slacks[1].weight == 2);
}

TEST_CASE("build_qubo reproduces the six-node model term by term") {
    const Graph g = testutil::six_node_graph();
    const QuboModel m = build_qubo(g, 4.5);
    CHECK(m.variable_count == 10);
    CHECK(m.vertex_count == 6);

    REQUIRE(m.slack_registry.size() == 4);
    CHECK(m.slack_registry[0].vertex == 2);
    CHECK(m.slack_registry[1].vertex == 2);
    CHECK(m.slack_registry[2].vertex == 3);
    CHECK(m.slack_registry[3].vertex == 3);
    CHECK(m.slack_registry[0].weight == 1);
    CHECK(m.slack_registry[1].weight == 2);
    CHECK(m.slack_registry[2].weight == 1);
    CHECK(m.slack_registry[3].weight == 2);

    const testutil::TestPoly ref = testutil::six_node_reference_poly(4.5);
    CHECK(m.constant == doctest::Approx(ref.constant).epsilon(1e-12));
    for (int i = 0; i < m.variable_count; ++i) {
        const auto it = ref.linear.find(i);
        const double expected = it == ref.linear.end() ? 0.0 : it->second;
        CHECK(m.linear[static_cast<std::size_t>(i)] == doctest::Approx(expected).epsilon(1e-12));
    }
    CHECK(m.quadratic.size() == ref.quadratic.size());
    for (const auto& [key, coeff] : ref.quadratic)
        CHECK(m.quadratic.at(key) == doctest::Approx(coeff).epsilon(1e-12));
}

TEST_CASE("build_qubo on a single isolated vertex forces inclusion") {
    const Graph g = parse_graph("1 0");
    const QuboModel m = build_qubo(g, 5.0);
    CHECK(m.variable_count == 1);
    CHECK(m.constant == doctest::Approx(5.0));
    CHECK(m.linear[0] == doctest::Approx(1.0 - 5.0));
    CHECK(evaluate_qubo(m, {1}) == doctest::Approx(1.0));
    CHECK(evaluate_qubo(m, {0}) == doctest::Approx(5.0));
}

TEST_CASE("build_qubo on the triangle allocates two slack bits per vertex") {
    const QuboModel m = build_qubo(testutil::triangle_graph(), 3.0);
    CHECK(m.variable_count == 9);
    CHECK(m.slack_registry.size() == 6);
    const QuboMinimum min = brute_force_qubo_min(m);
    CHECK(min.min_value == doctest::Approx(1.0));
}

TEST_CASE("evaluate_qubo frozen values on the six-node model") {
    const QuboModel m = build_qubo(testutil::six_node_graph(), 4.5);
    CHECK(evaluate_qubo(m, {0, 1, 1, 0, 0, 1, 0, 0, 0, 1}) == doctest::Approx(3.0));
    CHECK(evaluate_qubo(m, Assignment(10, 0)) == doctest::Approx(27.0));
    // contains edge 0-2; value checked against the reference polynomial
    const Assignment infeasible = {1, 0, 1, 0, 0, 0, 0, 0, 0, 0};
    const testutil::TestPoly ref = testutil::six_node_reference_poly(4.5);
    CHECK(evaluate_qubo(m, infeasible) == doctest::Approx(ref.eval(infeasible)));
    CHECK(evaluate_qubo(m, infeasible) == doctest::Approx(20.0));

    CHECK_THROWS_AS(evaluate_qubo(m, {1, 0}), InputError);
}

TEST_CASE("build_qubo validates inputs") {
    CHECK_THROWS_AS(build_qubo(parse_graph("0 0"), 1.0), InputError);
    CHECK_THROWS_AS(build_qubo(testutil::triangle_graph(), 0.0), InputError);
    CHECK_THROWS_AS(build_qubo(testutil::triangle_graph(), -1.0), InputError);
}

TEST_CASE("feasible assignments reach exactly their set size; infeasible stay above") {
    for (const Graph& g : {testutil::six_node_graph(), testutil::triangle_graph(),
                           testutil::path_graph(4), testutil::path_graph(2)}) {
        const QuboModel m = build_qubo(g, default_penalty(g));
        REQUIRE(m.variable_count <= 12);
        const int slack_bits = m.variable_count - g.vertex_count;

        double min_feasible = 1e300;
        std::vector<double> best_by_vertex_part(1ull << g.vertex_count, 1e300);
        for (std::uint64_t idx = 0; idx < (1ull << m.variable_count); ++idx) {
            const Assignment a = assignment_from_index(idx, m.variable_count);
            const double value = evaluate_qubo(m, a);
            auto& slot = best_by_vertex_part[idx >> slack_bits];
            slot = std::min(slot, value);
        }
        for (std::uint64_t vp = 0; vp < (1ull << g.vertex_count); ++vp) {
            VertexSet members;
            for (int v = 0; v < g.vertex_count; ++v)
                if (index_bit(vp, v, g.vertex_count)) members.push_back(v);
            const IdsCheck check = is_independent_dominating_set(g, members);
            if (check.dominating && check.independent) {
                CHECK(best_by_vertex_part[vp] ==
                      doctest::Approx(static_cast<double>(members.size())).epsilon(1e-9));
                min_feasible = std::min(min_feasible, best_by_vertex_part[vp]);
            }
        }
        for (std::uint64_t vp = 0; vp < (1ull << g.vertex_count); ++vp) {
            VertexSet members;
            for (int v = 0; v < g.vertex_count; ++v)
                if (index_bit(vp, v, g.vertex_count)) members.push_back(v);
            const IdsCheck check = is_independent_dominating_set(g, members);
            if (!(check.dominating && check.independent))
                CHECK(best_by_vertex_part[vp] >= min_feasible - 1e-9);
        }
    }
}

TEST_CASE("no squared variable survives expansion") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Graph g = testutil::random_graph(seed);
        const QuboModel m = build_qubo(g, default_penalty(g));
        CHECK(static_cast<int>(m.linear.size()) == m.variable_count);
        for (const auto& [key, coeff] : m.quadratic) {
            CHECK(key.first < key.second);
            CHECK(std::isfinite(coeff));
        }
        CHECK(static_cast<int>(m.slack_registry.size()) == m.variable_count - g.vertex_count);
    }
}

TEST_CASE("export_qubo is deterministic and ordered") {
    const QuboModel m = build_qubo(parse_graph("2 1\n0 1"), 2.0);
    // objective x0 + x1; two pair penalties P(1 - x0 - x1 + x0 x1); edge 2 x0 x1
    CHECK(export_qubo(m) == "4\n0 -3\n1 -3\n0 1 6\n");
    CHECK(export_qubo(m) == export_qubo(build_qubo(parse_graph("2 1\n0 1"), 2.0)));
}
