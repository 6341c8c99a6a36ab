#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "qldpc/errors.hpp"

namespace qldpc {

enum class CoordModel { euclidean2, euclidean3, poincare_disk };

inline std::string coord_model_name(CoordModel m) {
    switch (m) {
        case CoordModel::euclidean2: return "euclidean";
        case CoordModel::euclidean3: return "euclidean3";
        case CoordModel::poincare_disk: return "poincare";
    }
    return "?";
}

// Per-vertex positions. Euclidean points are (x, y[, z]); Poincare-disk
// points are stored as (r, theta) with r < 1 the Euclidean disk radius.
struct VertexEmbedding {
    CoordModel model = CoordModel::euclidean2;
    std::vector<std::array<double, 3>> points;

    std::size_t size() const { return points.size(); }
};

namespace geom {

// Disk point from polar storage.
inline std::array<double, 2> disk_xy(const std::array<double, 3>& p) {
    return {p[0] * std::cos(p[1]), p[0] * std::sin(p[1])};
}

inline double poincare_distance_xy(double x1, double y1, double x2, double y2) {
    double dx = x1 - x2, dy = y1 - y2;
    double n1 = 1.0 - (x1 * x1 + y1 * y1);
    double n2 = 1.0 - (x2 * x2 + y2 * y2);
    double arg = 1.0 + 2.0 * (dx * dx + dy * dy) / (n1 * n2);
    return std::acosh(std::max(1.0, arg));
}

// Signed hyperbolic distance from a disk point to the diameter at angle
// theta, positive on the left side of the oriented diameter.
inline double poincare_signed_distance_to_diameter(double x, double y, double theta) {
    double c = std::cos(-theta), s = std::sin(-theta);
    double yr = s * x + c * y;  // Im(e^{-i theta} z)
    double denom = 1.0 - (x * x + y * y);
    return std::asinh(2.0 * yr / denom);
}

}  // namespace geom

inline double metric_distance(const VertexEmbedding& emb, std::size_t u, std::size_t v) {
    const auto& p = emb.points[u];
    const auto& q = emb.points[v];
    switch (emb.model) {
        case CoordModel::euclidean2: {
            double dx = p[0] - q[0], dy = p[1] - q[1];
            return std::sqrt(dx * dx + dy * dy);
        }
        case CoordModel::euclidean3: {
            double dx = p[0] - q[0], dy = p[1] - q[1], dz = p[2] - q[2];
            return std::sqrt(dx * dx + dy * dy + dz * dz);
        }
        case CoordModel::poincare_disk: {
            auto a = geom::disk_xy(p);
            auto b = geom::disk_xy(q);
            return geom::poincare_distance_xy(a[0], a[1], b[0], b[1]);
        }
    }
    return 0.0;
}

// --- coords sidecar format ----------------------------------------------
//
// "coords v1 model=<euclidean|euclidean3|poincare> n=<n>" then one line
// per vertex: "x y", "x y z", or "r theta".

inline std::string serialize_coords(const VertexEmbedding& emb) {
    std::ostringstream out;
    out.precision(17);
    out << "coords v1 model=" << coord_model_name(emb.model) << " n=" << emb.size() << "\n";
    for (const auto& p : emb.points) {
        out << p[0] << " " << p[1];
        if (emb.model == CoordModel::euclidean3) out << " " << p[2];
        out << "\n";
    }
    return out.str();
}

inline VertexEmbedding parse_coords(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    VertexEmbedding emb;
    bool have_header = false;
    std::size_t expect = 0;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        std::string s = (hash == std::string::npos) ? line : line.substr(0, hash);
        std::istringstream ls(s);
        if (!have_header) {
            std::string tag, version, field;
            if (!(ls >> tag)) continue;
            ls >> version;
            if (tag != "coords" || version != "v1")
                throw parse_error("expected 'coords v1' header");
            bool have_model = false, have_n = false;
            while (ls >> field) {
                if (field.rfind("model=", 0) == 0) {
                    std::string m = field.substr(6);
                    if (m == "euclidean") emb.model = CoordModel::euclidean2;
                    else if (m == "euclidean3") emb.model = CoordModel::euclidean3;
                    else if (m == "poincare") emb.model = CoordModel::poincare_disk;
                    else throw parse_error("unknown coordinate model: " + m);
                    have_model = true;
                } else if (field.rfind("n=", 0) == 0) {
                    expect = std::stoul(field.substr(2));
                    have_n = true;
                }
            }
            if (!have_model || !have_n)
                throw parse_error("coords header needs model= and n= fields");
            have_header = true;
            continue;
        }
        double a, b, c = 0.0;
        if (!(ls >> a >> b)) {
            std::string probe;
            std::istringstream check(s);
            if (!(check >> probe)) continue;  // blank line
            throw parse_error("line " + std::to_string(lineno) + ": expected coordinates");
        }
        if (emb.model == CoordModel::euclidean3 && !(ls >> c))
            throw parse_error("line " + std::to_string(lineno) + ": expected 3 coordinates");
        emb.points.push_back({a, b, c});
    }
    if (!have_header) throw parse_error("empty coords file (no 'coords v1' header)");
    if (emb.points.size() != expect)
        throw parse_error("coords file has " + std::to_string(emb.points.size()) +
                          " points, header says " + std::to_string(expect));
    return emb;
}

}  // namespace qldpc
