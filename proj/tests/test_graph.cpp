#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "qidp/graph.hpp"
#include "test_util.hpp"

using namespace qidp;

TEST_CASE("parse_graph reads the edge-list format") {
    const Graph g = parse_graph("6 5\n0 2\n1 3\n2 3\n2 4\n3 5");
    CHECK(g.vertex_count == 6);
    CHECK(g.edges == std::vector<std::pair<int, int>>{{0, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 5}});

    const Graph single = parse_graph("1 0");
    CHECK(single.vertex_count == 1);
    CHECK(single.edges.empty());

    const Graph k3 = parse_graph("3 3\n0 1\n1 2\n0 2");
    CHECK(k3.vertex_count == 3);
    CHECK(k3.edges.size() == 3);
}

TEST_CASE("parse_graph accepts CRLF and loose whitespace") {
    const Graph g = parse_graph("6 5\r\n0 2\r\n1 3\r\n2 3\r\n2 4\r\n3 5\r\n");
    CHECK(g.edges.size() == 5);
    const Graph h = parse_graph("  2 1 \n 0\t1\n\n");
    CHECK(h.edges == std::vector<std::pair<int, int>>{{0, 1}});
}

TEST_CASE("parse_graph rejects malformed documents") {
    CHECK_THROWS_AS(parse_graph(""), ParseError);
    CHECK_THROWS_AS(parse_graph("6"), ParseError);
    CHECK_THROWS_AS(parse_graph("a b\n"), ParseError);
    CHECK_THROWS_AS(parse_graph("2 1\n0 5"), ParseError);       // out of range
    CHECK_THROWS_AS(parse_graph("2 1\n1 1"), ParseError);       // self-loop
    CHECK_THROWS_AS(parse_graph("3 2\n0 1\n1 0"), ParseError);  // duplicate
    CHECK_THROWS_AS(parse_graph("3 2\n0 1"), ParseError);       // missing edge line
    CHECK_THROWS_AS(parse_graph("3 1\n0 1\n1 2"), ParseError);  // trailing content
    CHECK_THROWS_AS(parse_graph("3 1\n0 1 2"), ParseError);     // malformed edge line
}

TEST_CASE("parse errors carry distinct causes") {
    auto message_of = [](const std::string& text) {
        try {
            parse_graph(text);
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message_of("oops").find("header") != std::string::npos);
    CHECK(message_of("2 1\n0 5").find("out of range") != std::string::npos);
    CHECK(message_of("2 1\n1 1").find("self-loop") != std::string::npos);
    CHECK(message_of("3 2\n0 1\n1 0").find("duplicate") != std::string::npos);
}

TEST_CASE("closed_neighborhood contains the vertex and its neighbours") {
    const Graph g = testutil::six_node_graph();
    CHECK(closed_neighborhood(g, 2) == VertexSet{0, 2, 3, 4});
    CHECK(closed_neighborhood(g, 3) == VertexSet{1, 2, 3, 5});

    const Graph isolated = parse_graph("3 0");
    CHECK(closed_neighborhood(isolated, 1) == VertexSet{1});

    CHECK(closed_neighborhood(testutil::triangle_graph(), 0) == VertexSet{0, 1, 2});
    CHECK_THROWS_AS(closed_neighborhood(g, 6), InputError);
    CHECK_THROWS_AS(closed_neighborhood(g, -1), InputError);
}

TEST_CASE("is_independent_dominating_set classifies the experiment instance") {
    const Graph g = testutil::six_node_graph();
    const IdsCheck ids = is_independent_dominating_set(g, {1, 2, 5});
    CHECK(ids.dominating);
    CHECK(ids.independent);

    const IdsCheck dom_only = is_independent_dominating_set(g, {2, 3});
    CHECK(dom_only.dominating);
    CHECK_FALSE(dom_only.independent);

    const IdsCheck empty = is_independent_dominating_set(g, {});
    CHECK_FALSE(empty.dominating);
    CHECK(empty.independent);

    CHECK_THROWS_AS(is_independent_dominating_set(g, {7}), InputError);
}

TEST_CASE("closed neighborhood properties hold on random graphs") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const Graph g = testutil::random_graph(seed);
        for (int v = 0; v < g.vertex_count; ++v) {
            const VertexSet nv = closed_neighborhood(g, v);
            CHECK(std::binary_search(nv.begin(), nv.end(), v));
            for (int u : nv) {
                const VertexSet nu = closed_neighborhood(g, u);
                CHECK(std::binary_search(nu.begin(), nu.end(), v));
            }
        }
        VertexSet all(static_cast<std::size_t>(g.vertex_count));
        std::iota(all.begin(), all.end(), 0);
        CHECK(is_independent_dominating_set(g, all).dominating);
    }
}
