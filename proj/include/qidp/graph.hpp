#pragma once

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qidp/common.hpp"

namespace qidp {

// Simple undirected graph over dense 0-based vertex indices. Immutable after
// construction; adjacency lists are kept sorted.
struct Graph {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges;     // normalized u < v, sorted
    std::vector<std::vector<int>> adjacency;    // per-vertex sorted neighbours
};

using VertexSet = std::vector<int>;  // sorted ascending

inline Graph make_graph(int vertex_count, const std::vector<std::pair<int, int>>& edges) {
    if (vertex_count < 0) throw InputError("vertex count must be nonnegative");
    Graph g;
    g.vertex_count = vertex_count;
    g.adjacency.resize(static_cast<std::size_t>(vertex_count));
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : edges) {
        if (u < 0 || u >= vertex_count || v < 0 || v >= vertex_count)
            throw InputError("edge endpoint out of range");
        if (u == v) throw InputError("self-loop");
        auto key = std::minmax(u, v);
        if (!seen.insert(key).second) throw InputError("duplicate edge");
        g.adjacency[static_cast<std::size_t>(u)].push_back(v);
        g.adjacency[static_cast<std::size_t>(v)].push_back(u);
    }
    g.edges.assign(seen.begin(), seen.end());
    for (auto& nbrs : g.adjacency) std::sort(nbrs.begin(), nbrs.end());
    return g;
}

// Edge-list text format: header "n m", then m lines "u v" (0-based,
// whitespace-separated, LF or CRLF). Duplicate edges are rejected rather than
// deduplicated: a repeated line usually means a corrupted instance and would
// otherwise double penalty terms downstream.
inline Graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    auto next_line = [&](std::string& out) {
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.find_first_not_of(" \t") == std::string::npos) continue;
            out = line;
            return true;
        }
        return false;
    };
    auto parse_int = [](const std::string& token, const char* what) {
        int value = 0;
        auto res = std::from_chars(token.data(), token.data() + token.size(), value);
        if (res.ec != std::errc() || res.ptr != token.data() + token.size())
            throw ParseError(std::string("malformed ") + what + ": '" + token + "'");
        return value;
    };
    auto split = [](const std::string& s) {
        std::vector<std::string> tokens;
        std::istringstream ts(s);
        std::string t;
        while (ts >> t) tokens.push_back(t);
        return tokens;
    };

    std::string header;
    if (!next_line(header)) throw ParseError("malformed header: empty document");
    auto head_tokens = split(header);
    if (head_tokens.size() != 2)
        throw ParseError("malformed header: expected 'n m', got '" + header + "'");
    int n = parse_int(head_tokens[0], "header vertex count");
    int m = parse_int(head_tokens[1], "header edge count");
    if (n < 0 || m < 0) throw ParseError("malformed header: negative count");

    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        std::string edge_line;
        if (!next_line(edge_line))
            throw ParseError("unexpected end of input: expected " + std::to_string(m) +
                             " edge lines, got " + std::to_string(i));
        auto tokens = split(edge_line);
        if (tokens.size() != 2)
            throw ParseError("malformed edge line: '" + edge_line + "'");
        edges.emplace_back(parse_int(tokens[0], "edge endpoint"),
                           parse_int(tokens[1], "edge endpoint"));
    }
    std::string extra;
    if (next_line(extra)) throw ParseError("trailing content after edge list: '" + extra + "'");

    try {
        return make_graph(n, edges);
    } catch (const ParseError&) {
        throw;
    } catch (const InputError& e) {
        throw ParseError(e.what());
    }
}

inline void check_vertex(const Graph& g, int v) {
    if (v < 0 || v >= g.vertex_count) throw InputError("vertex index out of range");
}

// N[v] = {v} together with all neighbours, sorted.
inline VertexSet closed_neighborhood(const Graph& g, int v) {
    check_vertex(g, v);
    VertexSet result = g.adjacency[static_cast<std::size_t>(v)];
    result.insert(std::lower_bound(result.begin(), result.end(), v), v);
    return result;
}

struct IdsCheck {
    bool dominating = false;
    bool independent = false;
};

// dominating  <=> every vertex has N[v] intersecting d
// independent <=> no edge has both endpoints in d
inline IdsCheck is_independent_dominating_set(const Graph& g, const VertexSet& d) {
    std::vector<char> member(static_cast<std::size_t>(g.vertex_count), 0);
    for (int v : d) {
        check_vertex(g, v);
        member[static_cast<std::size_t>(v)] = 1;
    }
    IdsCheck result;
    result.dominating = true;
    for (int v = 0; v < g.vertex_count; ++v) {
        bool covered = member[static_cast<std::size_t>(v)] != 0;
        for (int u : g.adjacency[static_cast<std::size_t>(v)]) {
            if (covered) break;
            covered = member[static_cast<std::size_t>(u)] != 0;
        }
        if (!covered) {
            result.dominating = false;
            break;
        }
    }
    result.independent = true;
    for (auto [u, v] : g.edges) {
        if (member[static_cast<std::size_t>(u)] && member[static_cast<std::size_t>(v)]) {
            result.independent = false;
            break;
        }
    }
    return result;
}

}  // namespace qidp
