#pragma once

// Shared test utilities: an independent Gaussian-elimination oracle for
// GF(2) ranks and small deterministic graph/matrix generators.

#include <cstdint>
#include <random>
#include <vector>

#include "qldpc/connectivity.hpp"
#include "qldpc/gf2.hpp"

namespace test_util {

// Plain int-matrix Gaussian elimination, written independently of the
// bit-packed implementation it checks.
inline std::size_t naive_rank(std::vector<std::vector<int>> m) {
    if (m.empty()) return 0;
    std::size_t rows = m.size(), cols = m[0].size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[rank], m[pivot]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][c] == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) m[r][j] ^= m[rank][j];
        }
        ++rank;
    }
    return rank;
}

inline std::vector<std::vector<int>> to_ints(const qldpc::BinaryMatrix& m) {
    std::vector<std::vector<int>> out(m.rows(), std::vector<int>(m.cols(), 0));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m.get(r, c) ? 1 : 0;
    return out;
}

inline qldpc::BinaryMatrix random_matrix(std::size_t rows, std::size_t cols,
                                         std::mt19937_64& rng, double density = 0.5) {
    qldpc::BinaryMatrix m(rows, cols);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (uni(rng) < density) m.set(r, c, true);
    return m;
}

inline qldpc::ConnectivityGraph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
    qldpc::ConnectivityGraph g(n);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (uni(rng) < p) g.add_edge(u, v);
    return g;
}

inline qldpc::ConnectivityGraph path_graph(std::size_t n) {
    qldpc::ConnectivityGraph g(n);
    for (std::size_t v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

inline qldpc::ConnectivityGraph cycle_graph(std::size_t n) {
    auto g = path_graph(n);
    g.add_edge(n - 1, 0);
    return g;
}

inline qldpc::ConnectivityGraph complete_graph(std::size_t n) {
    qldpc::ConnectivityGraph g(n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

inline qldpc::ConnectivityGraph grid_graph(std::size_t rows, std::size_t cols) {
    qldpc::ConnectivityGraph g(rows * cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            std::size_t v = r * cols + c;
            if (c + 1 < cols) g.add_edge(v, v + 1);
            if (r + 1 < rows) g.add_edge(v, v + cols);
        }
    return g;
}

}  // namespace test_util
