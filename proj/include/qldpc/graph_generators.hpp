#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qldpc/connectivity.hpp"
#include "qldpc/coords.hpp"
#include "qldpc/errors.hpp"
#include "qldpc/graph_analysis.hpp"

namespace qldpc {

// A graph together with an embedding and its achieved locality witness:
// every edge has metric length <= w and every radius-2w ball centered at
// a vertex holds at most rho vertices.
struct EmbeddedGraph {
    ConnectivityGraph graph;
    VertexEmbedding embedding;
    double rho = 0.0;
    double w = 0.0;
};

// Empty result means the (rho, w) witness holds. Ball centers are sampled
// at every vertex.
inline std::optional<std::string> check_locality(const EmbeddedGraph& eg) {
    const std::size_t n = eg.graph.num_vertices();
    if (eg.embedding.size() != n) return "embedding size does not match vertex count";
    for (auto [u, v] : eg.graph.edges()) {
        double d = metric_distance(eg.embedding, u, v);
        if (d > eg.w + 1e-9)
            return "edge (" + std::to_string(u) + ", " + std::to_string(v) +
                   ") has length " + std::to_string(d) + " > w";
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t inside = 0;
        for (std::size_t v = 0; v < n; ++v)
            if (metric_distance(eg.embedding, c, v) <= 2.0 * eg.w + 1e-9) ++inside;
        if (static_cast<double>(inside) > eg.rho + 1e-9)
            return "ball of radius 2w at vertex " + std::to_string(c) + " holds " +
                   std::to_string(inside) + " vertices > rho";
    }
    return std::nullopt;
}

// Marks every vertex pair at metric distance <= w adjacent.
inline ConnectivityGraph nubg_augment(const EmbeddedGraph& eg) {
    ConnectivityGraph aug = eg.graph;
    const std::size_t n = aug.num_vertices();
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (metric_distance(eg.embedding, u, v) <= eg.w + 1e-12) aug.add_edge(u, v);
    return aug;
}

// First ball-graph condition: d < 2 sigma implies an edge. Exhaustive
// over vertex pairs; meant for small patches.
inline bool nubg_first_condition_holds(const ConnectivityGraph& g, const VertexEmbedding& emb,
                                       double sigma) {
    const std::size_t n = g.num_vertices();
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (metric_distance(emb, u, v) < 2.0 * sigma && !g.has_edge(u, v)) return false;
    return true;
}

// --- lattice graphs ----------------------------------------------------------

// D-dimensional grid with unit edges; w = 1 and rho is the lattice-ball
// count for radius 2 (5, 13, 33 for D = 1, 2, 3).
inline EmbeddedGraph make_grid(std::size_t dim, std::size_t side) {
    if (dim < 1 || dim > 3) throw input_error("make_grid: dimension must be 1, 2, or 3");
    if (side < 2) throw input_error("make_grid: side must be >= 2");
    double count = std::pow(static_cast<double>(side), static_cast<double>(dim));
    if (count > 1e7) throw input_error("make_grid: too many vertices");

    std::size_t n = 1;
    for (std::size_t d = 0; d < dim; ++d) n *= side;
    EmbeddedGraph eg;
    eg.graph = ConnectivityGraph(n);
    eg.embedding.model = (dim == 3) ? CoordModel::euclidean3 : CoordModel::euclidean2;
    eg.embedding.points.resize(n);
    eg.w = 1.0;
    eg.rho = (dim == 1) ? 5.0 : (dim == 2 ? 13.0 : 33.0);

    auto coords_of = [&](std::size_t v) {
        std::array<std::size_t, 3> c{0, 0, 0};
        for (std::size_t d = 0; d < dim; ++d) {
            c[d] = v % side;
            v /= side;
        }
        return c;
    };
    for (std::size_t v = 0; v < n; ++v) {
        auto c = coords_of(v);
        eg.embedding.points[v] = {static_cast<double>(c[0]), static_cast<double>(c[1]),
                                  static_cast<double>(c[2])};
        std::size_t stride = 1;
        for (std::size_t d = 0; d < dim; ++d) {
            if (c[d] + 1 < side) eg.graph.add_edge(v, v + stride);
            stride *= side;
        }
    }
    return eg;
}

// Rectangular 2D grid; used where an exact vertex count matters.
inline EmbeddedGraph make_grid_2d(std::size_t rows, std::size_t cols) {
    if (rows < 1 || cols < 1) throw input_error("make_grid_2d: empty grid");
    EmbeddedGraph eg;
    const std::size_t n = rows * cols;
    eg.graph = ConnectivityGraph(n);
    eg.embedding.model = CoordModel::euclidean2;
    eg.embedding.points.resize(n);
    eg.w = 1.0;
    eg.rho = 13.0;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            std::size_t v = r * cols + c;
            eg.embedding.points[v] = {static_cast<double>(c), static_cast<double>(r), 0.0};
            if (c + 1 < cols) eg.graph.add_edge(v, v + 1);
            if (r + 1 < rows) eg.graph.add_edge(v, v + cols);
        }
    return eg;
}

// --- hyperbolic {p, q} tiling patches ----------------------------------------

namespace detail {

struct DiskPoint {
    double x = 0, y = 0;
};

// Reflection across the geodesic through a and b (circle inversion, or a
// Euclidean mirror when the geodesic is a diameter).
inline DiskPoint reflect_across_geodesic(DiskPoint z, DiskPoint a, DiskPoint b) {
    double det = 2.0 * (a.x * b.y - a.y * b.x);
    if (std::abs(det) < 1e-12) {
        // Diameter: mirror across the line through the origin along (b - a).
        double dx = b.x - a.x, dy = b.y - a.y;
        double norm = std::sqrt(dx * dx + dy * dy);
        dx /= norm;
        dy /= norm;
        double dot = z.x * dx + z.y * dy;
        return {2 * dot * dx - z.x, 2 * dot * dy - z.y};
    }
    // Orthogonal circle through a and b: solve 2 a.c = 1 + |a|^2 etc.
    double ra = 1.0 + a.x * a.x + a.y * a.y;
    double rb = 1.0 + b.x * b.x + b.y * b.y;
    double cx = (ra * b.y - rb * a.y) / det;
    double cy = (rb * a.x - ra * b.x) / det;
    double r2 = cx * cx + cy * cy - 1.0;  // orthogonality: |c|^2 = R^2 + 1
    double dx = z.x - cx, dy = z.y - cy;
    double d2 = dx * dx + dy * dy;
    return {cx + r2 * dx / d2, cy + r2 * dy / d2};
}

// Coordinate hash with tolerance: quantized cell plus neighbor scan.
class PointIndex {
public:
    explicit PointIndex(double cell = 1e-6) : cell_(cell) {}

    std::optional<std::size_t> find(DiskPoint p) const {
        long long qx = quantize(p.x), qy = quantize(p.y);
        for (long long ax = qx - 1; ax <= qx + 1; ++ax)
            for (long long ay = qy - 1; ay <= qy + 1; ++ay) {
                auto it = cells_.find({ax, ay});
                if (it == cells_.end()) continue;
                for (std::size_t idx : it->second) {
                    double dx = points_[idx].x - p.x, dy = points_[idx].y - p.y;
                    if (dx * dx + dy * dy < cell_ * cell_) return idx;
                }
            }
        return std::nullopt;
    }

    std::size_t insert(DiskPoint p) {
        if (auto hit = find(p)) return *hit;
        std::size_t idx = points_.size();
        points_.push_back(p);
        cells_[{quantize(p.x), quantize(p.y)}].push_back(idx);
        return idx;
    }

    const std::vector<DiskPoint>& points() const { return points_; }

private:
    long long quantize(double v) const { return std::llround(v / cell_); }
    double cell_;
    std::vector<DiskPoint> points_;
    std::map<std::pair<long long, long long>, std::vector<std::size_t>> cells_;
};

}  // namespace detail

// Vertex graph of the {p, q} hyperbolic tiling, truncated to `rings`
// reflection layers of tiles around a central tile, with Poincare-disk
// coordinates. Requires (p-2)(q-2) > 4.
inline EmbeddedGraph make_hyperbolic_patch(std::size_t p, std::size_t q, std::size_t rings) {
    if (p < 3 || q < 3) throw input_error("make_hyperbolic_patch: need p, q >= 3");
    if ((p - 2) * (q - 2) <= 4)
        throw input_error("make_hyperbolic_patch: {" + std::to_string(p) + ", " +
                          std::to_string(q) + "} is not hyperbolic");
    if (rings < 1) throw input_error("make_hyperbolic_patch: rings must be >= 1");

    const double pi = std::acos(-1.0);
    // Circumradius of a tile: cosh(R) = cot(pi/p) * cot(pi/q).
    double cosh_r = 1.0 / (std::tan(pi / p) * std::tan(pi / q));
    double radius = std::acosh(cosh_r);
    double disk_r = std::tanh(radius / 2.0);

    using detail::DiskPoint;
    std::vector<DiskPoint> center_tile(p);
    for (std::size_t j = 0; j < p; ++j) {
        double theta = 2.0 * pi * j / p;
        center_tile[j] = {disk_r * std::cos(theta), disk_r * std::sin(theta)};
    }

    detail::PointIndex tile_centers(1e-6);
    detail::PointIndex vertices(1e-6);
    std::vector<std::vector<std::size_t>> tile_vertex_ids;
    std::vector<std::vector<DiskPoint>> frontier;

    auto register_tile = [&](const std::vector<DiskPoint>& poly) -> bool {
        DiskPoint center{0, 0};
        for (const auto& v : poly) {
            center.x += v.x;
            center.y += v.y;
        }
        center.x /= static_cast<double>(poly.size());
        center.y /= static_cast<double>(poly.size());
        if (tile_centers.find(center)) return false;
        tile_centers.insert(center);
        std::vector<std::size_t> ids;
        for (const auto& v : poly) ids.push_back(vertices.insert(v));
        tile_vertex_ids.push_back(std::move(ids));
        return true;
    };

    register_tile(center_tile);
    frontier.push_back(center_tile);
    // rings counts tile layers including the central one: rings = 1 is
    // the bare center tile.
    for (std::size_t ring = 1; ring < rings; ++ring) {
        std::vector<std::vector<DiskPoint>> next;
        for (const auto& tile : frontier) {
            for (std::size_t e = 0; e < p; ++e) {
                DiskPoint a = tile[e], b = tile[(e + 1) % p];
                std::vector<DiskPoint> image(p);
                for (std::size_t j = 0; j < p; ++j)
                    image[j] = detail::reflect_across_geodesic(tile[j], a, b);
                if (register_tile(image)) next.push_back(std::move(image));
            }
        }
        frontier = std::move(next);
    }

    EmbeddedGraph eg;
    const auto& pts = vertices.points();
    eg.graph = ConnectivityGraph(pts.size());
    eg.embedding.model = CoordModel::poincare_disk;
    eg.embedding.points.resize(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double r = std::sqrt(pts[i].x * pts[i].x + pts[i].y * pts[i].y);
        double theta = std::atan2(pts[i].y, pts[i].x);
        eg.embedding.points[i] = {r, theta, 0.0};
    }
    for (const auto& tile : tile_vertex_ids)
        for (std::size_t j = 0; j < p; ++j) eg.graph.add_edge(tile[j], tile[(j + 1) % p]);

    double max_edge = 0.0;
    for (auto [u, v] : eg.graph.edges())
        max_edge = std::max(max_edge, metric_distance(eg.embedding, u, v));
    eg.w = max_edge + 1e-9;
    // Ball census without acosh: d(z1, z2) <= 2w is equivalent to
    // |z1 - z2|^2 <= (cosh(2w) - 1)/2 * (1 - |z1|^2)(1 - |z2|^2).
    const double ball_factor = (std::cosh(2.0 * eg.w) - 1.0) / 2.0;
    std::vector<double> slack(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        slack[i] = 1.0 - (pts[i].x * pts[i].x + pts[i].y * pts[i].y);
    std::size_t rho = 0;
    for (std::size_t c = 0; c < pts.size(); ++c) {
        std::size_t inside = 0;
        for (std::size_t v = 0; v < pts.size(); ++v) {
            double dx = pts[c].x - pts[v].x, dy = pts[c].y - pts[v].y;
            if (dx * dx + dy * dy <= ball_factor * slack[c] * slack[v]) ++inside;
        }
        rho = std::max(rho, inside);
    }
    eg.rho = static_cast<double>(rho);
    return eg;
}

// --- random regular graphs ----------------------------------------------------

// Pairing model with whole-matching rejection of loops and multi-edges.
// Deterministic per seed.
inline ConnectivityGraph make_random_regular(std::size_t degree, std::size_t n, uint64_t seed) {
    if (degree < 3) throw input_error("make_random_regular: degree must be >= 3");
    if (degree >= n) throw input_error("make_random_regular: degree must be < n");
    if ((degree * n) % 2 != 0)
        throw input_error("make_random_regular: degree * n must be even");

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> stubs(degree * n);
    for (std::size_t i = 0; i < stubs.size(); ++i) stubs[i] = i / degree;

    for (int attempt = 0; attempt < 5000; ++attempt) {
        for (std::size_t i = stubs.size(); i > 1; --i)
            std::swap(stubs[i - 1], stubs[rng() % i]);
        ConnectivityGraph g(n);
        bool ok = true;
        for (std::size_t i = 0; i + 1 < stubs.size() && ok; i += 2) {
            std::size_t u = stubs[i], v = stubs[i + 1];
            if (u == v || g.has_edge(u, v))
                ok = false;
            else
                g.add_edge(u, v);
        }
        if (ok) return g;
    }
    throw input_error("make_random_regular: could not realize a simple graph");
}

// Sweep cut through the embedding; needs coordinates, exploits them.
inline Separation geometric_cut_separator(const EmbeddedGraph& eg, double alpha) {
    return heuristic_separator(eg.graph, alpha, SeparatorStrategy::geometric_cut, 0,
                               &eg.embedding);
}

}  // namespace qldpc
