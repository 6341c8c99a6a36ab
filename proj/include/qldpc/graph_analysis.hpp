#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qldpc/connectivity.hpp"
#include "qldpc/coords.hpp"
#include "qldpc/errors.hpp"
#include "qldpc/region.hpp"

namespace qldpc {

// --- balanced vertex separators -------------------------------------------

// A disjoint partition V = A | S | B with no edges between A and B and
// both |A|, |B| <= alpha * |V|. B (or A) may be empty; complete graphs
// force that case.
struct Separation {
    Region a;
    Region s;
    Region b;
    double alpha = 0.5;
};

enum class SeparatorStrategy { bfs_layering, spectral_bisection, geometric_cut };

inline std::string separator_strategy_name(SeparatorStrategy s) {
    switch (s) {
        case SeparatorStrategy::bfs_layering: return "bfs_layering";
        case SeparatorStrategy::spectral_bisection: return "spectral_bisection";
        case SeparatorStrategy::geometric_cut: return "geometric_cut";
    }
    return "?";
}

inline SeparatorStrategy separator_strategy_from_name(const std::string& s) {
    if (s == "bfs_layering") return SeparatorStrategy::bfs_layering;
    if (s == "spectral_bisection") return SeparatorStrategy::spectral_bisection;
    if (s == "geometric_cut") return SeparatorStrategy::geometric_cut;
    throw input_error("unknown separator strategy: " + s);
}

// Empty result means the separation is valid.
inline std::optional<std::string> check_separation(const ConnectivityGraph& g,
                                                   const Separation& sep) {
    const std::size_t n = g.num_vertices();
    std::vector<int> owner(n, -1);
    auto mark = [&](const Region& r, int id) -> std::optional<std::string> {
        for (std::size_t v : r) {
            if (v >= n) return "vertex index out of range";
            if (owner[v] != -1) return "vertex " + std::to_string(v) + " appears in two parts";
            owner[v] = id;
        }
        return std::nullopt;
    };
    if (auto e = mark(sep.a, 0)) return e;
    if (auto e = mark(sep.s, 1)) return e;
    if (auto e = mark(sep.b, 2)) return e;
    for (std::size_t v = 0; v < n; ++v)
        if (owner[v] == -1) return "vertex " + std::to_string(v) + " not covered";
    const double limit = sep.alpha * static_cast<double>(n) + 1e-9;
    if (static_cast<double>(sep.a.size()) > limit) return "|A| exceeds alpha * |V|";
    if (static_cast<double>(sep.b.size()) > limit) return "|B| exceeds alpha * |V|";
    for (auto [u, v] : g.edges())
        if ((owner[u] == 0 && owner[v] == 2) || (owner[u] == 2 && owner[v] == 0))
            return "edge between A and B";
    return std::nullopt;
}

namespace detail {

// Assigns component sizes to two sides, each side at most `limit`.
// Subset-sum DP with reconstruction; returns side flags or nullopt.
inline std::optional<std::vector<bool>> pack_two_sides(const std::vector<std::size_t>& sizes,
                                                       std::size_t limit) {
    std::size_t total = 0;
    for (std::size_t s : sizes) total += s;
    if (total > 2 * limit) return std::nullopt;
    for (std::size_t s : sizes)
        if (s > limit) return std::nullopt;

    const std::size_t words = total / 64 + 1;
    std::vector<std::vector<uint64_t>> reach(sizes.size() + 1, std::vector<uint64_t>(words, 0));
    reach[0][0] = 1;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const auto& prev = reach[i];
        auto& next = reach[i + 1];
        next = prev;
        const std::size_t sh = sizes[i];
        const std::size_t word_sh = sh / 64, bit_sh = sh % 64;
        for (std::size_t w = words; w-- > 0;) {
            if (w < word_sh) break;
            uint64_t v = prev[w - word_sh] << bit_sh;
            if (bit_sh && w > word_sh) v |= prev[w - word_sh - 1] >> (64 - bit_sh);
            next[w] |= v;
        }
    }
    // Side-A total must land in [total - limit, limit].
    std::size_t lo = (total > limit) ? total - limit : 0;
    std::size_t target = total + 1;
    for (std::size_t s = lo; s <= std::min(limit, total); ++s)
        if ((reach[sizes.size()][s / 64] >> (s % 64)) & 1) {
            target = s;
            break;
        }
    if (target > total) return std::nullopt;

    std::vector<bool> side_b(sizes.size(), true);
    std::size_t s = target;
    for (std::size_t i = sizes.size(); i-- > 0;) {
        if ((reach[i][s / 64] >> (s % 64)) & 1) continue;  // not used
        side_b[i] = false;
        s -= sizes[i];
    }
    return side_b;
}

// Components of g restricted to `alive`, as sorted vertex lists.
inline std::vector<std::vector<std::size_t>> components_within(const ConnectivityGraph& g,
                                                               const std::vector<bool>& alive) {
    std::vector<std::vector<std::size_t>> comps;
    std::vector<bool> seen(g.num_vertices(), false);
    for (std::size_t s = 0; s < g.num_vertices(); ++s) {
        if (!alive[s] || seen[s]) continue;
        std::vector<std::size_t> comp;
        std::queue<std::size_t> q;
        q.push(s);
        seen[s] = true;
        while (!q.empty()) {
            std::size_t v = q.front();
            q.pop();
            comp.push_back(v);
            for (std::size_t w : g.neighbors(v))
                if (alive[w] && !seen[w]) {
                    seen[w] = true;
                    q.push(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

// Builds a Separation from a separator set if the leftover components can
// be balanced under the limit.
inline std::optional<Separation> complete_separation(const ConnectivityGraph& g,
                                                     const std::vector<std::size_t>& separator,
                                                     double alpha) {
    const std::size_t n = g.num_vertices();
    const std::size_t limit =
        static_cast<std::size_t>(alpha * static_cast<double>(n) + 1e-9);
    std::vector<bool> alive(n, true);
    for (std::size_t v : separator) alive[v] = false;
    auto comps = components_within(g, alive);
    std::vector<std::size_t> sizes;
    sizes.reserve(comps.size());
    for (const auto& c : comps) sizes.push_back(c.size());
    auto side = pack_two_sides(sizes, limit);
    if (!side) return std::nullopt;
    Separation sep;
    sep.alpha = alpha;
    sep.s = Region(separator);
    std::vector<std::size_t> a_members, b_members;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        auto& dst = (*side)[i] ? b_members : a_members;
        dst.insert(dst.end(), comps[i].begin(), comps[i].end());
    }
    sep.a = Region(std::move(a_members));
    sep.b = Region(std::move(b_members));
    return sep;
}

}  // namespace detail

// Minimum-cardinality separator by exhausting all candidate sets in
// increasing size. Exponential; guarded by the vertex budget.
inline Separation exact_separator(const ConnectivityGraph& g, double alpha,
                                  std::size_t budget = 24) {
    const std::size_t n = g.num_vertices();
    if (n > budget || n > 24)
        throw budget_error("exact_separator: " + std::to_string(n) +
                           " vertices exceeds budget of " + std::to_string(std::min<std::size_t>(budget, 24)));
    if (n == 0) return Separation{{}, {}, {}, alpha};

    for (std::size_t k = 0; k <= n; ++k) {
        // Subsets of size k in lexicographic (Gosper) order.
        uint32_t mask = (k == 0) ? 0u : ((1u << k) - 1u);
        while (true) {
            std::vector<std::size_t> sep_vertices;
            for (std::size_t v = 0; v < n; ++v)
                if ((mask >> v) & 1u) sep_vertices.push_back(v);
            if (auto sep = detail::complete_separation(g, sep_vertices, alpha)) return *sep;
            if (k == 0) break;
            // Gosper's hack.
            uint32_t c = mask & (0u - mask);
            uint32_t r = mask + c;
            uint32_t next = (((r ^ mask) >> 2) / c) | r;
            if (next >= (1u << n)) break;
            mask = next;
        }
    }
    throw internal_error("exact_separator: no separation found (S = V must always work)");
}

namespace detail {

inline std::size_t bfs_farthest(const ConnectivityGraph& g, std::size_t root) {
    std::vector<int> dist(g.num_vertices(), -1);
    std::queue<std::size_t> q;
    q.push(root);
    dist[root] = 0;
    std::size_t far = root;
    while (!q.empty()) {
        std::size_t v = q.front();
        q.pop();
        if (dist[v] > dist[far]) far = v;
        for (std::size_t w : g.neighbors(v))
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                q.push(w);
            }
    }
    return far;
}

inline std::vector<std::vector<std::size_t>> bfs_layers(const ConnectivityGraph& g,
                                                        std::size_t root) {
    std::vector<int> dist(g.num_vertices(), -1);
    std::queue<std::size_t> q;
    q.push(root);
    dist[root] = 0;
    std::vector<std::vector<std::size_t>> layers;
    while (!q.empty()) {
        std::size_t v = q.front();
        q.pop();
        if (static_cast<std::size_t>(dist[v]) >= layers.size()) layers.resize(dist[v] + 1);
        layers[dist[v]].push_back(v);
        for (std::size_t w : g.neighbors(v))
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                q.push(w);
            }
    }
    return layers;
}

inline void consider(std::optional<Separation>& best, const std::optional<Separation>& cand) {
    if (!cand) return;
    if (!best || cand->s.size() < best->s.size()) best = cand;
}

inline std::optional<Separation> bfs_layering_separator(const ConnectivityGraph& g, double alpha,
                                                        uint64_t seed) {
    std::optional<Separation> best = detail::complete_separation(g, {}, alpha);
    if (best) return best;  // nothing beats an empty separator

    auto comps = g.connected_components();
    std::size_t largest = 0;
    for (std::size_t i = 1; i < comps.size(); ++i)
        if (comps[i].size() > comps[largest].size()) largest = i;
    const auto& comp = comps[largest];

    std::vector<std::size_t> roots;
    roots.push_back(bfs_farthest(g, comp[0]));  // peripheral root
    std::mt19937_64 rng(seed);
    for (int extra = 0; extra < 2; ++extra)
        roots.push_back(comp[rng() % comp.size()]);

    for (std::size_t root : roots) {
        auto layers = bfs_layers(g, root);
        for (const auto& layer : layers) {
            if (best && layer.size() >= best->s.size()) continue;
            consider(best, detail::complete_separation(g, layer, alpha));
        }
    }
    if (!best) {
        // Degenerate fallback: S = V is always a valid separation.
        std::vector<std::size_t> all(g.num_vertices());
        for (std::size_t v = 0; v < all.size(); ++v) all[v] = v;
        best = Separation{{}, Region(all), {}, alpha};
    }
    return best;
}

struct SpectralResult {
    double lambda2 = 0.0;
    std::vector<double> values;  // per vertex of the component
    bool converged = false;
};

// Second-smallest Laplacian eigenpair of a connected component, by power
// iteration on (c I - L) with the all-ones direction projected out.
// Tolerance 1e-8 on the eigenvalue residual, capped at 1e5 iterations.
inline SpectralResult fiedler_vector(const ConnectivityGraph& g,
                                     const std::vector<std::size_t>& comp, uint64_t seed) {
    const std::size_t m = comp.size();
    SpectralResult res;
    res.values.assign(m, 0.0);
    if (m <= 1) {
        res.converged = true;
        return res;
    }
    std::vector<std::size_t> pos(g.num_vertices(), static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < m; ++i) pos[comp[i]] = i;

    double maxdeg = 0;
    for (std::size_t v : comp) maxdeg = std::max(maxdeg, static_cast<double>(g.degree(v)));
    const double shift = 2.0 * maxdeg + 1.0;

    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 1);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> v(m), u(m);
    for (double& x : v) x = uni(rng);

    auto project_normalize = [&](std::vector<double>& x) {
        double mean = 0;
        for (double t : x) mean += t;
        mean /= static_cast<double>(m);
        double norm = 0;
        for (double& t : x) {
            t -= mean;
            norm += t * t;
        }
        norm = std::sqrt(norm);
        if (norm < 1e-300) {
            x[0] = 1.0;  // restart direction
            norm = 1.0;
        }
        for (double& t : x) t /= norm;
    };
    project_normalize(v);

    double theta = 0;
    for (std::size_t iter = 0; iter < 100000; ++iter) {
        for (std::size_t i = 0; i < m; ++i) {
            double acc = (shift - static_cast<double>(g.degree(comp[i]))) * v[i];
            for (std::size_t w : g.neighbors(comp[i])) acc += v[pos[w]];
            u[i] = acc;
        }
        theta = 0;
        for (std::size_t i = 0; i < m; ++i) theta += v[i] * u[i];
        double resid = 0;
        for (std::size_t i = 0; i < m; ++i) {
            double d = u[i] - theta * v[i];
            resid += d * d;
        }
        project_normalize(u);
        std::swap(u, v);
        if (std::sqrt(resid) <= 1e-8) {
            res.converged = true;
            break;
        }
    }
    res.lambda2 = shift - theta;
    res.values = v;
    return res;
}

inline std::optional<Separation> spectral_separator(const ConnectivityGraph& g, double alpha,
                                                    uint64_t seed) {
    std::optional<Separation> best = detail::complete_separation(g, {}, alpha);
    if (best) return best;

    auto comps = g.connected_components();
    std::size_t largest = 0;
    for (std::size_t i = 1; i < comps.size(); ++i)
        if (comps[i].size() > comps[largest].size()) largest = i;
    const auto& comp = comps[largest];

    auto spectral = fiedler_vector(g, comp, seed);
    std::vector<std::size_t> order(comp.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (spectral.values[x] != spectral.values[y]) return spectral.values[x] < spectral.values[y];
        return comp[x] < comp[y];
    });

    std::vector<bool> in_left(g.num_vertices(), false);
    for (std::size_t t = 1; t < order.size(); ++t) {
        in_left[comp[order[t - 1]]] = true;
        // Boundary vertices on either side of the sweep cut are separator
        // candidates; the leftover components get rebalanced afterwards.
        std::vector<std::size_t> s_right, s_left;
        for (std::size_t i = 0; i < comp.size(); ++i) {
            std::size_t vtx = comp[i];
            bool left = in_left[vtx];
            bool boundary = false;
            for (std::size_t w : g.neighbors(vtx))
                if (in_left[w] != left) {
                    boundary = true;
                    break;
                }
            if (!boundary) continue;
            (left ? s_left : s_right).push_back(vtx);
        }
        if (!best || s_right.size() < best->s.size())
            consider(best, detail::complete_separation(g, s_right, alpha));
        if (!best || s_left.size() < best->s.size())
            consider(best, detail::complete_separation(g, s_left, alpha));
    }
    for (std::size_t v : comp) in_left[v] = false;

    if (!best) best = bfs_layering_separator(g, alpha, seed);
    return best;
}

// Sweep of a straight cut locus through the embedding: the separator is
// the set of vertices within half an edge length of the locus, so no
// edge can jump across it.
inline std::optional<Separation> geometric_sweep_separator(const ConnectivityGraph& g,
                                                           const VertexEmbedding& emb,
                                                           double alpha) {
    const std::size_t n = g.num_vertices();
    if (emb.size() != n) throw input_error("geometric_cut: embedding size mismatch");
    std::optional<Separation> best = detail::complete_separation(g, {}, alpha);
    if (best) return best;

    double w = 0.0;
    for (auto [u, v] : g.edges()) w = std::max(w, metric_distance(emb, u, v));
    const double half = w / 2.0 + 1e-12;

    std::vector<std::vector<double>> axes;
    if (emb.model == CoordModel::poincare_disk) {
        const int n_angles = 16;
        for (int a = 0; a < n_angles; ++a) {
            double theta = M_PI * a / n_angles;
            std::vector<double> s(n);
            for (std::size_t v = 0; v < n; ++v) {
                auto xy = geom::disk_xy(emb.points[v]);
                s[v] = geom::poincare_signed_distance_to_diameter(xy[0], xy[1], theta);
            }
            axes.push_back(std::move(s));
        }
    } else {
        std::vector<std::vector<double>> dirs = {{1, 0, 0}, {0, 1, 0}};
        if (emb.model == CoordModel::euclidean3) dirs.push_back({0, 0, 1});
        dirs.push_back({M_SQRT1_2, M_SQRT1_2, 0});
        dirs.push_back({M_SQRT1_2, -M_SQRT1_2, 0});
        for (const auto& d : dirs) {
            std::vector<double> s(n);
            for (std::size_t v = 0; v < n; ++v)
                s[v] = d[0] * emb.points[v][0] + d[1] * emb.points[v][1] + d[2] * emb.points[v][2];
            axes.push_back(std::move(s));
        }
    }

    for (const auto& s : axes) {
        std::vector<double> sorted = s;
        std::sort(sorted.begin(), sorted.end());
        std::vector<double> cuts = sorted;
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        // Median-out order: balanced cuts succeed first, after which the
        // slab-size gate prunes almost everything else.
        std::vector<std::size_t> cut_order(cuts.size());
        for (std::size_t i = 0; i < cuts.size(); ++i) cut_order[i] = i;
        std::sort(cut_order.begin(), cut_order.end(), [&](std::size_t x, std::size_t y) {
            double median = sorted[sorted.size() / 2];
            double dx = std::abs(cuts[x] - median), dy = std::abs(cuts[y] - median);
            if (dx != dy) return dx < dy;
            return x < y;
        });
        for (std::size_t ci : cut_order) {
            double c = cuts[ci];
            auto lo = std::lower_bound(sorted.begin(), sorted.end(), c - half);
            auto hi = std::upper_bound(sorted.begin(), sorted.end(), c + half);
            std::size_t slab_size = static_cast<std::size_t>(hi - lo);
            if (best && slab_size >= best->s.size()) continue;
            std::vector<std::size_t> slab;
            slab.reserve(slab_size);
            for (std::size_t v = 0; v < n; ++v)
                if (std::abs(s[v] - c) <= half) slab.push_back(v);
            consider(best, detail::complete_separation(g, slab, alpha));
        }
    }
    return best;
}

}  // namespace detail

inline Separation heuristic_separator(const ConnectivityGraph& g, double alpha,
                                      SeparatorStrategy strategy, uint64_t seed,
                                      const VertexEmbedding* embedding = nullptr) {
    if (g.num_vertices() == 0) return Separation{{}, {}, {}, alpha};
    std::optional<Separation> sep;
    switch (strategy) {
        case SeparatorStrategy::bfs_layering:
            sep = detail::bfs_layering_separator(g, alpha, seed);
            break;
        case SeparatorStrategy::spectral_bisection:
            sep = detail::spectral_separator(g, alpha, seed);
            break;
        case SeparatorStrategy::geometric_cut:
            if (!embedding)
                throw input_error("geometric_cut strategy requires vertex coordinates");
            sep = detail::geometric_sweep_separator(g, *embedding, alpha);
            break;
    }
    if (!sep) {
        std::vector<std::size_t> all(g.num_vertices());
        for (std::size_t v = 0; v < all.size(); ++v) all[v] = v;
        sep = Separation{{}, Region(all), {}, alpha};
    }
    if (auto err = check_separation(g, *sep))
        throw internal_error("heuristic separator produced invalid separation: " + *err);
    return *sep;
}

// --- tree decompositions ---------------------------------------------------

struct TreeDecomposition {
    std::vector<Region> bags;
    std::vector<std::pair<std::size_t, std::size_t>> tree_edges;

    std::size_t width() const {
        std::size_t w = 0;
        for (const auto& b : bags) w = std::max(w, b.size());
        return w == 0 ? 0 : w - 1;
    }
};

struct TdViolation {
    int property = 0;  // 0: not a forest, 1..3: the three defining properties
    std::string detail;
};

// Checks the three defining properties plus acyclicity of the node graph.
// A forest is accepted (disconnected inputs decompose per component).
inline std::optional<TdViolation> validate_tree_decomposition(const ConnectivityGraph& g,
                                                              const TreeDecomposition& t) {
    const std::size_t nodes = t.bags.size();
    std::vector<std::size_t> parent(nodes);
    for (std::size_t i = 0; i < nodes; ++i) parent[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto [a, b] : t.tree_edges) {
        if (a >= nodes || b >= nodes) return TdViolation{0, "tree edge references missing node"};
        if (a == b) return TdViolation{0, "tree edge is a self-loop"};
        std::size_t ra = find(a), rb = find(b);
        if (ra == rb) return TdViolation{0, "tree edges contain a cycle"};
        parent[ra] = rb;
    }

    std::vector<bool> covered(g.num_vertices(), false);
    for (const auto& bag : t.bags)
        for (std::size_t v : bag) {
            if (v >= g.num_vertices()) return TdViolation{1, "bag contains unknown vertex"};
            covered[v] = true;
        }
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
        if (!covered[v])
            return TdViolation{1, "vertex " + std::to_string(v) + " is in no bag"};

    for (auto [u, v] : g.edges()) {
        bool found = false;
        for (const auto& bag : t.bags)
            if (bag.contains(u) && bag.contains(v)) {
                found = true;
                break;
            }
        if (!found)
            return TdViolation{2, "edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                      ") is in no bag"};
    }

    std::vector<std::vector<std::size_t>> node_adj(nodes);
    for (auto [a, b] : t.tree_edges) {
        node_adj[a].push_back(b);
        node_adj[b].push_back(a);
    }
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        std::vector<std::size_t> holding;
        for (std::size_t i = 0; i < nodes; ++i)
            if (t.bags[i].contains(v)) holding.push_back(i);
        if (holding.size() <= 1) continue;
        std::vector<bool> in_set(nodes, false);
        for (std::size_t i : holding) in_set[i] = true;
        std::vector<bool> seen(nodes, false);
        std::queue<std::size_t> q;
        q.push(holding[0]);
        seen[holding[0]] = true;
        std::size_t reached = 1;
        while (!q.empty()) {
            std::size_t x = q.front();
            q.pop();
            for (std::size_t y : node_adj[x])
                if (in_set[y] && !seen[y]) {
                    seen[y] = true;
                    ++reached;
                    q.push(y);
                }
        }
        if (reached != holding.size())
            return TdViolation{3, "bags containing vertex " + std::to_string(v) +
                                      " do not form a connected subtree"};
    }
    return std::nullopt;
}

enum class EliminationStrategy { min_degree, min_fill };

inline std::string elimination_strategy_name(EliminationStrategy s) {
    return s == EliminationStrategy::min_degree ? "min_degree" : "min_fill";
}

namespace detail {

// Greedy elimination order; ties break toward the smallest vertex index.
inline std::vector<std::size_t> elimination_order(const ConnectivityGraph& g,
                                                  EliminationStrategy strategy) {
    const std::size_t n = g.num_vertices();
    std::vector<std::set<std::size_t>> adj(n);
    for (auto [u, v] : g.edges()) {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    std::vector<bool> alive(n, true);
    std::vector<long> fill_cache(n, -1);

    auto fill_count = [&](std::size_t v) {
        long fills = 0;
        std::vector<std::size_t> nb(adj[v].begin(), adj[v].end());
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                if (!adj[nb[i]].count(nb[j])) ++fills;
        return fills;
    };

    std::vector<std::size_t> order;
    order.reserve(n);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t best = n;
        long best_key = std::numeric_limits<long>::max();
        for (std::size_t v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            long key;
            if (strategy == EliminationStrategy::min_degree) {
                key = static_cast<long>(adj[v].size());
            } else {
                if (fill_cache[v] < 0) fill_cache[v] = fill_count(v);
                key = fill_cache[v];
            }
            if (key < best_key) {
                best_key = key;
                best = v;
            }
        }
        order.push_back(best);
        alive[best] = false;
        std::vector<std::size_t> nb(adj[best].begin(), adj[best].end());
        for (std::size_t u : nb) adj[u].erase(best);
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                adj[nb[i]].insert(nb[j]);
                adj[nb[j]].insert(nb[i]);
            }
        // Fill counts are stale for the neighborhood and its surroundings.
        for (std::size_t u : nb) {
            fill_cache[u] = -1;
            for (std::size_t w : adj[u]) fill_cache[w] = -1;
        }
        adj[best].clear();
    }
    return order;
}

// Standard fill-in construction: bag(v) = {v} plus v's not-yet-eliminated
// neighbors at elimination time; each bag hangs off the bag of its
// earliest-eliminated later member.
inline TreeDecomposition decomposition_from_order(const ConnectivityGraph& g,
                                                  const std::vector<std::size_t>& order) {
    const std::size_t n = g.num_vertices();
    std::vector<std::set<std::size_t>> adj(n);
    for (auto [u, v] : g.edges()) {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    std::vector<std::size_t> position(n);
    for (std::size_t i = 0; i < n; ++i) position[order[i]] = i;

    TreeDecomposition td;
    td.bags.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t v = order[i];
        std::vector<std::size_t> bag{v};
        std::vector<std::size_t> later;
        for (std::size_t u : adj[v])
            if (position[u] > i) later.push_back(u);
        bag.insert(bag.end(), later.begin(), later.end());
        td.bags[i] = Region(bag);
        for (std::size_t a = 0; a < later.size(); ++a)
            for (std::size_t b = a + 1; b < later.size(); ++b) {
                adj[later[a]].insert(later[b]);
                adj[later[b]].insert(later[a]);
            }
        if (!later.empty()) {
            std::size_t parent_vertex = later[0];
            for (std::size_t u : later)
                if (position[u] < position[parent_vertex]) parent_vertex = u;
            td.tree_edges.push_back({i, position[parent_vertex]});
        } else if (i + 1 < n) {
            td.tree_edges.push_back({i, i + 1});
        }
    }
    if (n == 0) td.bags.clear();
    return td;
}

}  // namespace detail

// dec width >= tw(G); both strategy choices are exact on trees.
inline std::pair<std::size_t, TreeDecomposition> heuristic_treewidth_upper(
    const ConnectivityGraph& g, EliminationStrategy strategy = EliminationStrategy::min_fill) {
    auto td = detail::decomposition_from_order(g, detail::elimination_order(g, strategy));
    return {td.width(), td};
}

// Max over the degeneracy ordering of the minimum degree; a lower bound
// on the treewidth.
inline std::size_t treewidth_lower_bound_degeneracy(const ConnectivityGraph& g) {
    const std::size_t n = g.num_vertices();
    std::vector<std::set<std::size_t>> adj(n);
    for (auto [u, v] : g.edges()) {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    std::vector<bool> alive(n, true);
    std::size_t lb = 0;
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t best = n, best_deg = n + 1;
        for (std::size_t v = 0; v < n; ++v)
            if (alive[v] && adj[v].size() < best_deg) {
                best_deg = adj[v].size();
                best = v;
            }
        lb = std::max(lb, best_deg);
        alive[best] = false;
        for (std::size_t u : adj[best]) adj[u].erase(best);
        adj[best].clear();
    }
    return lb;
}

namespace detail {

struct TwSearch {
    std::size_t n = 0;
    std::vector<uint32_t> base_adj;
    std::size_t best = 0;
    std::vector<std::size_t> best_order;
    std::unordered_map<uint32_t, std::size_t> memo;  // eliminated set -> best cost seen

    std::size_t degeneracy_lb(const std::vector<uint32_t>& adj, uint32_t remaining) const {
        std::size_t lb = 0;
        uint32_t rem = remaining;
        while (rem) {
            std::size_t v_best = 0;
            int d_best = 33;
            for (std::size_t v = 0; v < n; ++v) {
                if (!((rem >> v) & 1u)) continue;
                int d = std::popcount(adj[v] & rem);
                if (d < d_best) {
                    d_best = d;
                    v_best = v;
                }
            }
            lb = std::max<std::size_t>(lb, d_best);
            rem &= ~(1u << v_best);
        }
        return lb;
    }

    void dfs(std::vector<uint32_t>& adj, uint32_t eliminated, std::size_t cost,
             std::vector<std::size_t>& order) {
        const uint32_t full = (n == 32) ? 0xffffffffu : ((1u << n) - 1u);
        uint32_t remaining = full & ~eliminated;
        if (!remaining) {
            if (cost < best) {
                best = cost;
                best_order = order;
            }
            return;
        }
        if (cost >= best) return;
        auto it = memo.find(eliminated);
        if (it != memo.end() && it->second <= cost) return;
        memo[eliminated] = cost;
        if (std::max(cost, degeneracy_lb(adj, remaining)) >= best) return;

        // A vertex whose live neighborhood is a clique can be eliminated
        // first without loss.
        std::size_t forced = n;
        for (std::size_t v = 0; v < n && forced == n; ++v) {
            if (!((remaining >> v) & 1u)) continue;
            uint32_t nb = adj[v] & remaining;
            bool clique = true;
            uint32_t probe = nb;
            while (probe && clique) {
                std::size_t u = std::countr_zero(probe);
                probe &= probe - 1;
                if ((nb & ~adj[u] & ~(1u << u)) != 0) clique = false;
            }
            if (clique) forced = v;
        }

        for (std::size_t v = 0; v < n; ++v) {
            if (!((remaining >> v) & 1u)) continue;
            if (forced != n && v != forced) continue;
            uint32_t nb = adj[v] & remaining;
            std::size_t deg = std::popcount(nb);
            std::size_t new_cost = std::max(cost, deg);
            if (new_cost >= best) continue;
            std::vector<uint32_t> next = adj;
            uint32_t probe = nb;
            while (probe) {
                std::size_t u = std::countr_zero(probe);
                probe &= probe - 1;
                next[u] |= nb & ~(1u << u);
            }
            order.push_back(v);
            dfs(next, eliminated | (1u << v), new_cost, order);
            order.pop_back();
        }
    }
};

}  // namespace detail

// Certified-exact treewidth by branch and bound over elimination orders,
// with degeneracy pruning. Guarded by the vertex budget.
inline std::pair<std::size_t, TreeDecomposition> exact_treewidth(const ConnectivityGraph& g,
                                                                 std::size_t budget = 20) {
    const std::size_t n = g.num_vertices();
    if (n > budget || n > 24)
        throw budget_error("exact_treewidth: " + std::to_string(n) +
                           " vertices exceeds budget of " +
                           std::to_string(std::min<std::size_t>(budget, 24)));
    if (n == 0) return {0, TreeDecomposition{}};

    auto [ub, ub_td] = heuristic_treewidth_upper(g, EliminationStrategy::min_fill);
    detail::TwSearch search;
    search.n = n;
    search.base_adj.assign(n, 0);
    for (auto [u, v] : g.edges()) {
        search.base_adj[u] |= 1u << v;
        search.base_adj[v] |= 1u << u;
    }
    search.best = ub + 1;  // strictly better orders only
    std::vector<std::size_t> scratch;
    std::vector<uint32_t> adj = search.base_adj;
    search.dfs(adj, 0, 0, scratch);

    if (search.best_order.empty()) return {ub, ub_td};  // heuristic was optimal
    auto td = detail::decomposition_from_order(g, search.best_order);
    return {search.best, td};
}

// --- separability profiling -------------------------------------------------

struct ProfileSample {
    std::size_t r = 0;           // subgraph size bound
    std::size_t s_observed = 0;  // max separator over sampled subgraphs
    uint64_t subgraph_seed = 0;  // seed reproducing the maximizing sample
};

// Empirical lower estimate of the separability profile: sampling connected
// subgraphs cannot certify the true maximum of Definition-style profiles.
struct SeparabilityProfile {
    std::vector<ProfileSample> samples;
    double fitted_c = 0.0;       // slope of log s against log r
    double fitted_c_band = 0.0;  // ~95% confidence half-width
};

namespace detail {

inline std::vector<std::size_t> grow_connected_subgraph(const ConnectivityGraph& g,
                                                        std::size_t root, std::size_t target,
                                                        std::mt19937_64& rng) {
    std::vector<std::size_t> picked;
    std::vector<bool> seen(g.num_vertices(), false);
    std::vector<std::size_t> frontier{root};
    seen[root] = true;
    while (!frontier.empty() && picked.size() < target) {
        std::size_t at = rng() % frontier.size();
        std::swap(frontier[at], frontier.back());
        std::size_t v = frontier.back();
        frontier.pop_back();
        picked.push_back(v);
        for (std::size_t w : g.neighbors(v))
            if (!seen[w]) {
                seen[w] = true;
                frontier.push_back(w);
            }
    }
    std::sort(picked.begin(), picked.end());
    return picked;
}

}  // namespace detail

inline SeparabilityProfile separability_profile(
    const ConnectivityGraph& g, double alpha, std::vector<std::size_t> r_grid,
    std::size_t samples_per_r, uint64_t seed,
    SeparatorStrategy strategy = SeparatorStrategy::bfs_layering) {
    const std::size_t n = g.num_vertices();
    SeparabilityProfile profile;
    if (n == 0) return profile;
    std::sort(r_grid.begin(), r_grid.end());
    r_grid.erase(std::unique(r_grid.begin(), r_grid.end()), r_grid.end());

    for (std::size_t r : r_grid) {
        if (r < 1 || r > n) throw input_error("separability_profile: r outside [1, |V|]");
        ProfileSample best{r, 0, seed};
        for (std::size_t s = 0; s < std::max<std::size_t>(samples_per_r, 1); ++s) {
            uint64_t sample_seed = seed ^ (0x9e3779b97f4a7c15ull * (r * 1315423911ull + s + 1));
            std::mt19937_64 rng(sample_seed);
            std::size_t root = rng() % n;
            auto verts = detail::grow_connected_subgraph(g, root, r, rng);
            std::size_t s_obs = 0;
            if (verts.size() > 1) {
                auto sub = g.induced(verts);
                s_obs = heuristic_separator(sub, alpha, strategy, sample_seed).s.size();
            }
            if (s_obs >= best.s_observed) {
                best.s_observed = s_obs;
                best.subgraph_seed = sample_seed;
            }
        }
        profile.samples.push_back(best);
    }

    // Log-log least squares for the growth exponent.
    std::vector<double> xs, ys;
    for (const auto& s : profile.samples) {
        xs.push_back(std::log(static_cast<double>(s.r)));
        ys.push_back(std::log(static_cast<double>(std::max<std::size_t>(s.s_observed, 1))));
    }
    const std::size_t m = xs.size();
    if (m >= 2) {
        double xbar = 0, ybar = 0;
        for (std::size_t i = 0; i < m; ++i) {
            xbar += xs[i];
            ybar += ys[i];
        }
        xbar /= m;
        ybar /= m;
        double sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < m; ++i) {
            sxx += (xs[i] - xbar) * (xs[i] - xbar);
            sxy += (xs[i] - xbar) * (ys[i] - ybar);
        }
        if (sxx > 0) {
            profile.fitted_c = sxy / sxx;
            if (m > 2) {
                double ss_res = 0;
                for (std::size_t i = 0; i < m; ++i) {
                    double pred = ybar + profile.fitted_c * (xs[i] - xbar);
                    ss_res += (ys[i] - pred) * (ys[i] - pred);
                }
                profile.fitted_c_band = 1.96 * std::sqrt(ss_res / (m - 2) / sxx);
            }
        }
    }
    return profile;
}

// --- expansion estimates ------------------------------------------------------

struct CheegerEstimate {
    double h_upper = 0.0;          // best sweep cut of the Fiedler vector
    double h_spectral_lower = 0.0; // lambda_2 / 2
    double lambda2 = 0.0;
};

// Edge-expansion estimate h(G) = min_{|A| <= n/2} |E(A, comp A)| / |A|,
// sandwiched by the discrete Cheeger inequality from below and the best
// Fiedler sweep cut from above. Disconnected graphs have h = 0 exactly.
inline CheegerEstimate cheeger_estimate(const ConnectivityGraph& g) {
    CheegerEstimate est;
    const std::size_t n = g.num_vertices();
    if (n <= 1) return est;
    auto comps = g.connected_components();
    if (comps.size() > 1) return est;  // h = 0, cut a whole component

    auto spectral = detail::fiedler_vector(g, comps[0], 1);
    est.lambda2 = spectral.lambda2;
    est.h_spectral_lower = spectral.lambda2 / 2.0;

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (spectral.values[x] != spectral.values[y]) return spectral.values[x] < spectral.values[y];
        return x < y;
    });

    std::vector<bool> in_a(n, false);
    double best = std::numeric_limits<double>::infinity();
    long cut = 0;
    for (std::size_t t = 1; t < n; ++t) {
        std::size_t v = order[t - 1];
        in_a[v] = true;
        for (std::size_t w : g.neighbors(v)) cut += in_a[w] ? -1 : 1;
        if (2 * t <= n) best = std::min(best, static_cast<double>(cut) / t);
        if (2 * (n - t) <= n) best = std::min(best, static_cast<double>(cut) / (n - t));
    }
    est.h_upper = best;
    return est;
}

}  // namespace qldpc
