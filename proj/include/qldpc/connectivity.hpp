#pragma once

#include <algorithm>
#include <cstddef>
#include <queue>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qldpc/errors.hpp"
#include "qldpc/region.hpp"
#include "qldpc/stabilizer_code.hpp"

namespace qldpc {

// Undirected simple graph over qubit/vertex indices. Stored both as
// adjacency lists (traversal) and a sorted edge census (equality tests);
// the two views always agree.
class ConnectivityGraph {
public:
    ConnectivityGraph() = default;
    explicit ConnectivityGraph(std::size_t n) : adj_(n) {}

    ConnectivityGraph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges)
        : adj_(n) {
        for (auto [u, v] : edges) add_edge(u, v);
    }

    std::size_t num_vertices() const { return adj_.size(); }
    std::size_t num_edges() const { return edges_.size(); }

    void add_edge(std::size_t u, std::size_t v) {
        if (u >= adj_.size() || v >= adj_.size())
            throw input_error("add_edge: vertex index out of range");
        if (u == v) return;  // connectivity graphs carry no self-loops
        auto e = std::minmax(u, v);
        auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(e.first, e.second));
        if (it != edges_.end() && *it == std::make_pair(e.first, e.second)) return;
        edges_.insert(it, {e.first, e.second});
        adj_[u].push_back(v);
        adj_[v].push_back(u);
        std::sort(adj_[u].begin(), adj_[u].end());
        std::sort(adj_[v].begin(), adj_[v].end());
    }

    bool has_edge(std::size_t u, std::size_t v) const {
        if (u == v) return false;
        auto e = std::minmax(u, v);
        return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(e.first, e.second));
    }

    const std::vector<std::size_t>& neighbors(std::size_t v) const { return adj_[v]; }
    const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }

    std::size_t degree(std::size_t v) const { return adj_[v].size(); }

    std::size_t max_degree() const {
        std::size_t d = 0;
        for (const auto& a : adj_) d = std::max(d, a.size());
        return d;
    }

    bool operator==(const ConnectivityGraph& o) const {
        return adj_.size() == o.adj_.size() && edges_ == o.edges_;
    }

    // Induced subgraph; vertex i of the result is keep[i].
    ConnectivityGraph induced(const std::vector<std::size_t>& keep) const {
        std::vector<std::size_t> pos(num_vertices(), static_cast<std::size_t>(-1));
        for (std::size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = i;
        ConnectivityGraph sub(keep.size());
        for (auto [u, v] : edges_)
            if (pos[u] != static_cast<std::size_t>(-1) && pos[v] != static_cast<std::size_t>(-1))
                sub.add_edge(pos[u], pos[v]);
        return sub;
    }

    std::vector<std::vector<std::size_t>> connected_components() const {
        std::vector<std::vector<std::size_t>> comps;
        std::vector<bool> seen(num_vertices(), false);
        for (std::size_t s = 0; s < num_vertices(); ++s) {
            if (seen[s]) continue;
            std::vector<std::size_t> comp;
            std::queue<std::size_t> q;
            q.push(s);
            seen[s] = true;
            while (!q.empty()) {
                std::size_t v = q.front();
                q.pop();
                comp.push_back(v);
                for (std::size_t w : adj_[v])
                    if (!seen[w]) {
                        seen[w] = true;
                        q.push(w);
                    }
            }
            std::sort(comp.begin(), comp.end());
            comps.push_back(std::move(comp));
        }
        return comps;
    }

    bool connected() const {
        return num_vertices() <= 1 || connected_components().size() == 1;
    }

private:
    std::vector<std::vector<std::size_t>> adj_;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

// Edge (u, v) present iff some generator's support contains both qubits.
inline ConnectivityGraph build_connectivity(const StabilizerCode& code) {
    ConnectivityGraph g(code.n);
    for (const auto& gen : code.generators) {
        auto sup = gen.support();
        for (std::size_t i = 0; i < sup.size(); ++i)
            for (std::size_t j = i + 1; j < sup.size(); ++j) g.add_edge(sup[i], sup[j]);
    }
    return g;
}

inline ConnectivityGraph build_connectivity(const ClassicalCode& code) {
    ConnectivityGraph g(code.n);
    for (std::size_t r = 0; r < code.parity_checks.rows(); ++r) {
        std::vector<std::size_t> sup;
        for (std::size_t c = 0; c < code.n; ++c)
            if (code.parity_checks.get(r, c)) sup.push_back(c);
        for (std::size_t i = 0; i < sup.size(); ++i)
            for (std::size_t j = i + 1; j < sup.size(); ++j) g.add_edge(sup[i], sup[j]);
    }
    return g;
}

// Neighborhood of U excluding U itself.
inline Region outer_boundary(const ConnectivityGraph& g, const Region& u) {
    std::vector<std::size_t> out;
    for (std::size_t v : u)
        for (std::size_t w : g.neighbors(v))
            if (!u.contains(w)) out.push_back(w);
    return Region(std::move(out));
}

inline Region inner_boundary(const ConnectivityGraph& g, const Region& u) {
    return outer_boundary(g, u.complement(g.num_vertices()));
}

// True iff no edge joins two distinct regions. Regions must be disjoint.
inline bool are_decoupled(const ConnectivityGraph& g, const std::vector<Region>& regions) {
    std::vector<int> owner(g.num_vertices(), -1);
    for (std::size_t i = 0; i < regions.size(); ++i)
        for (std::size_t v : regions[i]) {
            if (owner[v] != -1) throw input_error("are_decoupled: regions overlap");
            owner[v] = static_cast<int>(i);
        }
    for (auto [u, v] : g.edges())
        if (owner[u] != -1 && owner[v] != -1 && owner[u] != owner[v]) return false;
    return true;
}

// --- graph file format ---------------------------------------------------
//
// Text: "graph v1 n=<n>" then one "u v" edge per line, 0-indexed.
// JSON: {"n": <n>, "edges": [[u, v], ...]}.

inline ConnectivityGraph parse_graph(const std::string& text) {
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        try {
            auto j = nlohmann::json::parse(text);
            ConnectivityGraph g(j.at("n").get<std::size_t>());
            for (const auto& e : j.at("edges"))
                g.add_edge(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
            return g;
        } catch (const nlohmann::json::exception& e) {
            throw parse_error(std::string("invalid JSON graph file: ") + e.what());
        }
    }
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    ConnectivityGraph g;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = detail::strip_comment(line);
        if (s.empty()) continue;
        if (!have_header) {
            g = ConnectivityGraph(detail::parse_header(s, "graph", nullptr));
            have_header = true;
            continue;
        }
        std::istringstream es(s);
        std::size_t u, v;
        if (!(es >> u >> v))
            throw parse_error("line " + std::to_string(lineno) + ": expected 'u v' edge");
        if (u >= g.num_vertices() || v >= g.num_vertices())
            throw parse_error("line " + std::to_string(lineno) + ": vertex out of range");
        g.add_edge(u, v);
    }
    if (!have_header) throw parse_error("empty graph file (no 'graph v1' header)");
    return g;
}

inline std::string serialize_graph(const ConnectivityGraph& g) {
    std::ostringstream out;
    out << "graph v1 n=" << g.num_vertices() << "\n";
    for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
    return out.str();
}

inline std::string serialize_graph_json(const ConnectivityGraph& g) {
    nlohmann::ordered_json j;
    j["n"] = g.num_vertices();
    auto edges = nlohmann::ordered_json::array();
    for (auto [u, v] : g.edges()) edges.push_back({u, v});
    j["edges"] = std::move(edges);
    return j.dump();
}

}  // namespace qldpc
