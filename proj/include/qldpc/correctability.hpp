#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qldpc/errors.hpp"
#include "qldpc/gf2.hpp"
#include "qldpc/region.hpp"
#include "qldpc/stabilizer_code.hpp"

namespace qldpc {

namespace detail {

// Both symplectic columns (x and z) of each qubit in the region.
inline std::vector<std::size_t> qubit_columns(const Region& r, std::size_t n) {
    std::vector<std::size_t> cols;
    cols.reserve(2 * r.size());
    for (std::size_t q : r) {
        if (q >= n) throw input_error("region contains qubit index out of range");
        cols.push_back(q);
        cols.push_back(n + q);
    }
    return cols;
}

}  // namespace detail

// Rank criterion for erasure correctability:
//   2|E| <= rank(H) + rank(H_E) - rank(H_Ebar).
// Agrees with is_correctable_oracle on every region; this is the
// production path, the oracle is kept as a test oracle.
inline bool dz_correctable(const StabilizerCode& code, const Region& e) {
    BinaryMatrix h = code.check_matrix();
    Region ebar = e.complement(code.n);
    std::size_t rank_h = rank(h);
    std::size_t rank_e = rank(select_columns(h, detail::qubit_columns(e, code.n)));
    std::size_t rank_ebar = rank(select_columns(h, detail::qubit_columns(ebar, code.n)));
    // Evaluated in signed arithmetic: the right side can go negative.
    long lhs = 2 * static_cast<long>(e.size());
    long rhs = static_cast<long>(rank_h) + static_cast<long>(rank_e) - static_cast<long>(rank_ebar);
    return lhs <= rhs;
}

// Erasing E from a classical code is recoverable iff the parity checks
// restricted to E have full column rank.
inline bool classical_correctable(const ClassicalCode& code, const Region& e) {
    std::vector<std::size_t> cols(e.begin(), e.end());
    for (std::size_t c : cols)
        if (c >= code.n) throw input_error("region contains bit index out of range");
    return rank(select_columns(code.parity_checks, cols)) == e.size();
}

// Certificate that k <= |C| for a tripartition with correctable A and B.
struct TripartitionWitness {
    Region a;
    Region b;
    Region c;
    std::size_t k_bound = 0;
};

inline TripartitionWitness dimension_bound_from_tripartition(const StabilizerCode& code,
                                                             const Region& a, const Region& b) {
    if (!regions_disjoint(a, b))
        throw input_error("dimension_bound_from_tripartition: A and B overlap");
    if (!dz_correctable(code, a))
        throw input_error("dimension_bound_from_tripartition: A is not correctable");
    if (!dz_correctable(code, b))
        throw input_error("dimension_bound_from_tripartition: B is not correctable");
    TripartitionWitness w;
    w.a = a;
    w.b = b;
    w.c = region_difference(Region::full(code.n), region_union(a, b));
    w.k_bound = w.c.size();
    if (code.k() > w.k_bound)
        throw internal_error("tripartition bound violated: k = " + std::to_string(code.k()) +
                             " > |C| = " + std::to_string(w.k_bound));
    return w;
}

}  // namespace qldpc
