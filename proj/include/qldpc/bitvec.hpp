#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qldpc {

// Dense bit vector packed into 64-bit words. All GF(2) row/vector
// arithmetic in the library goes through this type.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n_bits)
        : n_(n_bits), words_((n_bits + 63) / 64, 0ull) {}

    std::size_t size() const { return n_; }

    bool get(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1ull;
    }
    void set(std::size_t i, bool v) {
        uint64_t mask = 1ull << (i & 63);
        if (v)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }
    void flip(std::size_t i) { words_[i >> 6] ^= 1ull << (i & 63); }

    BitVec& operator^=(const BitVec& o) {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
        return *this;
    }
    friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }

    bool any() const {
        for (uint64_t w : words_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    std::size_t count() const {
        std::size_t c = 0;
        for (uint64_t w : words_) c += std::popcount(w);
        return c;
    }

    // Index of the lowest set bit, or size() if none.
    std::size_t first_set() const {
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w]) return (w << 6) + std::countr_zero(words_[w]);
        return n_;
    }

    bool operator==(const BitVec& o) const { return n_ == o.n_ && words_ == o.words_; }
    bool operator!=(const BitVec& o) const { return !(*this == o); }

    // Lexicographic on the packed representation; only used for
    // deterministic tie-breaking.
    bool operator<(const BitVec& o) const { return words_ < o.words_; }

    const std::vector<uint64_t>& words() const { return words_; }

    std::string to_string() const {
        std::string s(n_, '0');
        for (std::size_t i = 0; i < n_; ++i)
            if (get(i)) s[i] = '1';
        return s;
    }

private:
    std::size_t n_ = 0;
    std::vector<uint64_t> words_;
};

// Parity of <a, b> over GF(2).
inline int dot_parity(const BitVec& a, const BitVec& b) {
    uint64_t acc = 0;
    const auto& wa = a.words();
    const auto& wb = b.words();
    for (std::size_t w = 0; w < wa.size(); ++w) acc ^= wa[w] & wb[w];
    return std::popcount(acc) & 1;
}

}  // namespace qldpc
