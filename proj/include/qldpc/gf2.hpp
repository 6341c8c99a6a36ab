#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "qldpc/bitvec.hpp"
#include "qldpc/errors.hpp"

namespace qldpc {

// Matrix over GF(2) with bit-packed rows. Row/column indices are 0-based.
class BinaryMatrix {
public:
    BinaryMatrix() = default;
    BinaryMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows, BitVec(cols)) {}

    static BinaryMatrix identity(std::size_t n) {
        BinaryMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const { return data_[r].get(c); }
    void set(std::size_t r, std::size_t c, bool v) { data_[r].set(c, v); }

    const BitVec& row(std::size_t r) const { return data_[r]; }
    BitVec& row(std::size_t r) { return data_[r]; }

    void append_row(const BitVec& v) {
        data_.push_back(v);
        ++rows_;
    }

    bool operator==(const BinaryMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    BinaryMatrix transposed() const {
        BinaryMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (get(r, c)) t.set(c, r, true);
        return t;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BitVec> data_;
};

// Incrementally maintained reduced row basis of a GF(2) row space.
// Each stored row has a distinct pivot column and is reduced against
// the others, so membership tests are a single reduction pass.
class RowBasis {
public:
    RowBasis() = default;
    explicit RowBasis(std::size_t cols) : cols_(cols) {}
    explicit RowBasis(const BinaryMatrix& m) : cols_(m.cols()) {
        for (std::size_t r = 0; r < m.rows(); ++r) add(m.row(r));
    }

    std::size_t rank() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }

    // Reduces v against the basis; the residual is zero iff v is in the span.
    BitVec reduce(BitVec v) const {
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (v.get(pivots_[i])) v ^= rows_[i];
        return v;
    }

    bool contains(const BitVec& v) const { return reduce(v).none(); }

    // Inserts v if independent of the current span. Returns true if inserted.
    bool add(const BitVec& v) {
        BitVec r = reduce(v);
        std::size_t p = r.first_set();
        if (p == r.size()) return false;
        // Keep earlier rows reduced against the new pivot.
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (rows_[i].get(p)) rows_[i] ^= r;
        rows_.push_back(std::move(r));
        pivots_.push_back(p);
        return true;
    }

private:
    std::size_t cols_ = 0;
    std::vector<BitVec> rows_;
    std::vector<std::size_t> pivots_;
};

inline std::size_t rank(const BinaryMatrix& m) {
    RowBasis b(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) b.add(m.row(r));
    return b.rank();
}

inline BinaryMatrix select_columns(const BinaryMatrix& m, const std::vector<std::size_t>& cols) {
    for (std::size_t c : cols)
        if (c >= m.cols()) throw input_error("select_columns: column index out of range");
    std::vector<std::size_t> sorted = cols;
    std::sort(sorted.begin(), sorted.end());
    BinaryMatrix out(m.rows(), sorted.size());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t j = 0; j < sorted.size(); ++j)
            if (m.get(r, sorted[j])) out.set(r, j, true);
    return out;
}

// Basis of {v : Mv = 0}, one vector per non-pivot column of the RREF.
inline std::vector<BitVec> nullspace(const BinaryMatrix& m) {
    const std::size_t nc = m.cols();
    std::vector<BitVec> rows;
    rows.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));

    std::vector<std::size_t> pivot_col;
    std::size_t lead = 0;
    for (std::size_t c = 0; c < nc && lead < rows.size(); ++c) {
        std::size_t piv = lead;
        while (piv < rows.size() && !rows[piv].get(c)) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[lead], rows[piv]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != lead && rows[r].get(c)) rows[r] ^= rows[lead];
        pivot_col.push_back(c);
        ++lead;
    }

    std::vector<bool> is_pivot(nc, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;

    std::vector<BitVec> basis;
    for (std::size_t c = 0; c < nc; ++c) {
        if (is_pivot[c]) continue;
        BitVec v(nc);
        v.set(c, true);
        for (std::size_t i = 0; i < pivot_col.size(); ++i)
            if (rows[i].get(c)) v.set(pivot_col[i], true);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Solves a^T M = target for a coefficient vector a over the rows of M.
// Returns nullopt when target is outside the row space.
inline std::optional<BitVec> solve_row_combination(const BinaryMatrix& m, const BitVec& target) {
    if (target.size() != m.cols()) throw input_error("solve_row_combination: width mismatch");
    const std::size_t mr = m.rows();
    // Augment each row with the corresponding unit coefficient vector.
    std::vector<BitVec> rows;
    std::vector<BitVec> coef;
    std::vector<std::size_t> pivots;
    for (std::size_t r = 0; r < mr; ++r) {
        BitVec v = m.row(r);
        BitVec c(mr);
        c.set(r, true);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (v.get(pivots[i])) {
                v ^= rows[i];
                c ^= coef[i];
            }
        std::size_t p = v.first_set();
        if (p == v.size()) continue;
        rows.push_back(std::move(v));
        coef.push_back(std::move(c));
        pivots.push_back(p);
    }
    BitVec v = target;
    BitVec a(mr);
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (v.get(pivots[i])) {
            v ^= rows[i];
            a ^= coef[i];
        }
    if (v.any()) return std::nullopt;
    return a;
}

}  // namespace qldpc
