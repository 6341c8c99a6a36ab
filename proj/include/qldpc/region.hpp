#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "qldpc/errors.hpp"

namespace qldpc {

// A subset of vertex/qubit indices, kept sorted and duplicate-free.
class Region {
public:
    Region() = default;
    Region(std::initializer_list<std::size_t> init) : members_(init) { normalize(); }
    explicit Region(std::vector<std::size_t> members) : members_(std::move(members)) { normalize(); }

    static Region full(std::size_t n) {
        std::vector<std::size_t> m(n);
        for (std::size_t i = 0; i < n; ++i) m[i] = i;
        return Region(std::move(m));
    }

    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    bool contains(std::size_t v) const {
        return std::binary_search(members_.begin(), members_.end(), v);
    }

    const std::vector<std::size_t>& members() const { return members_; }
    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }

    void insert(std::size_t v) {
        auto it = std::lower_bound(members_.begin(), members_.end(), v);
        if (it == members_.end() || *it != v) members_.insert(it, v);
    }

    Region complement(std::size_t n) const {
        std::vector<std::size_t> out;
        out.reserve(n - members_.size());
        std::size_t j = 0;
        for (std::size_t v = 0; v < n; ++v) {
            if (j < members_.size() && members_[j] == v)
                ++j;
            else
                out.push_back(v);
        }
        return Region(std::move(out));
    }

    friend Region region_union(const Region& a, const Region& b) {
        std::vector<std::size_t> out;
        std::set_union(a.members_.begin(), a.members_.end(), b.members_.begin(),
                       b.members_.end(), std::back_inserter(out));
        return Region(std::move(out));
    }

    friend Region region_intersection(const Region& a, const Region& b) {
        std::vector<std::size_t> out;
        std::set_intersection(a.members_.begin(), a.members_.end(), b.members_.begin(),
                              b.members_.end(), std::back_inserter(out));
        return Region(std::move(out));
    }

    friend Region region_difference(const Region& a, const Region& b) {
        std::vector<std::size_t> out;
        std::set_difference(a.members_.begin(), a.members_.end(), b.members_.begin(),
                            b.members_.end(), std::back_inserter(out));
        return Region(std::move(out));
    }

    friend bool regions_disjoint(const Region& a, const Region& b) {
        return region_intersection(a, b).empty();
    }

    bool operator==(const Region& o) const { return members_ == o.members_; }

private:
    void normalize() {
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    }

    std::vector<std::size_t> members_;
};

}  // namespace qldpc
