#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qldpc/bitvec.hpp"
#include "qldpc/errors.hpp"
#include "qldpc/gf2.hpp"

namespace qldpc {

// An n-qubit Pauli operator modulo phase, stored as the (x|z) pair of
// bit vectors. Phases are dropped throughout: supports and commutation,
// which is all the bounds need, do not depend on them.
struct SymplecticVector {
    std::size_t n = 0;
    BitVec x;
    BitVec z;

    SymplecticVector() = default;
    explicit SymplecticVector(std::size_t n_qubits)
        : n(n_qubits), x(n_qubits), z(n_qubits) {}

    static SymplecticVector from_pauli_string(const std::string& s) {
        SymplecticVector v(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            switch (s[i]) {
                case 'I': case 'i': break;
                case 'X': case 'x': v.x.set(i, true); break;
                case 'Z': case 'z': v.z.set(i, true); break;
                case 'Y': case 'y': v.x.set(i, true); v.z.set(i, true); break;
                default:
                    throw parse_error(std::string("invalid Pauli character '") + s[i] + "'");
            }
        }
        return v;
    }

    std::string to_pauli_string() const {
        std::string s(n, 'I');
        for (std::size_t i = 0; i < n; ++i) {
            bool xi = x.get(i), zi = z.get(i);
            if (xi && zi) s[i] = 'Y';
            else if (xi) s[i] = 'X';
            else if (zi) s[i] = 'Z';
        }
        return s;
    }

    std::vector<std::size_t> support() const {
        std::vector<std::size_t> sup;
        for (std::size_t i = 0; i < n; ++i)
            if (x.get(i) || z.get(i)) sup.push_back(i);
        return sup;
    }

    std::size_t weight() const {
        std::size_t w = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (x.get(i) || z.get(i)) ++w;
        return w;
    }

    bool is_identity() const { return x.none() && z.none(); }

    SymplecticVector& operator^=(const SymplecticVector& o) {
        x ^= o.x;
        z ^= o.z;
        return *this;
    }

    bool operator==(const SymplecticVector& o) const {
        return n == o.n && x == o.x && z == o.z;
    }

    // Flattened (x|z) form, the row layout of the check matrix.
    BitVec to_row() const {
        BitVec r(2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            if (x.get(i)) r.set(i, true);
            if (z.get(i)) r.set(n + i, true);
        }
        return r;
    }

    static SymplecticVector from_row(const BitVec& r) {
        SymplecticVector v(r.size() / 2);
        for (std::size_t i = 0; i < v.n; ++i) {
            if (r.get(i)) v.x.set(i, true);
            if (r.get(v.n + i)) v.z.set(i, true);
        }
        return v;
    }
};

// <u.x, v.z> + <u.z, v.x> mod 2; zero exactly when the operators commute.
inline int symplectic_product(const SymplecticVector& u, const SymplecticVector& v) {
    if (u.n != v.n) throw input_error("symplectic_product: qubit count mismatch");
    return dot_parity(u.x, v.z) ^ dot_parity(u.z, v.x);
}

}  // namespace qldpc
