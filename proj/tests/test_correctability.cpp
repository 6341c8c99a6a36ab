#include <doctest.h>

#include <bit>
#include <random>
#include <string>

#include "helpers.hpp"
#include "qldpc/correctability.hpp"
#include "qldpc/stabilizer_code.hpp"

using namespace qldpc;

namespace {

Region region_from_mask(uint32_t mask, std::size_t n) {
    std::vector<std::size_t> members;
    for (std::size_t v = 0; v < n; ++v)
        if ((mask >> v) & 1u) members.push_back(v);
    return Region(members);
}

}  // namespace

TEST_CASE("dz_correctable anchors") {
    auto steane = make_family("steane", 0);
    CHECK(dz_correctable(steane, Region{}));
    CHECK(dz_correctable(steane, Region{0, 1}));
    CHECK_FALSE(dz_correctable(make_family("repetition", 3), Region{0}));
}

TEST_CASE("dz_correctable agrees with the oracle on every region") {
    std::vector<StabilizerCode> codes = {
        make_family("repetition", 3), make_family("five_qubit", 0), make_family("steane", 0),
        make_family("surface", 2), make_family("toric", 2)};
    for (const auto& code : codes) {
        for (uint32_t mask = 0; mask < (1u << code.n); ++mask) {
            Region e = region_from_mask(mask, code.n);
            CHECK(dz_correctable(code, e) == is_correctable_oracle(code, e));
        }
    }
}

TEST_CASE("correctability is monotone under subsets") {
    std::mt19937_64 rng(41);
    for (const auto& name : {"steane", "toric"}) {
        auto code = make_family(name, name == std::string("toric") ? 2 : 0);
        for (int trial = 0; trial < 200; ++trial) {
            uint32_t mask = static_cast<uint32_t>(rng()) & ((1u << code.n) - 1);
            Region e = region_from_mask(mask, code.n);
            if (!dz_correctable(code, e)) continue;
            uint32_t sub = mask & static_cast<uint32_t>(rng());
            CHECK(dz_correctable(code, region_from_mask(sub, code.n)));
        }
    }
}

TEST_CASE("every region smaller than the distance is correctable") {
    struct Entry {
        StabilizerCode code;
        std::size_t d;
    };
    std::vector<Entry> entries;
    entries.push_back({make_family("steane", 0), 3});
    entries.push_back({make_family("five_qubit", 0), 3});
    entries.push_back({make_family("surface", 2), 2});
    entries.push_back({make_family("surface", 3), 3});
    for (const auto& [code, d] : entries) {
        for (uint32_t mask = 0; mask < (1u << code.n); ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) >= d) continue;
            CHECK(dz_correctable(code, region_from_mask(mask, code.n)));
        }
    }
}

TEST_CASE("dimension_bound_from_tripartition") {
    auto steane = make_family("steane", 0);
    auto witness = dimension_bound_from_tripartition(steane, Region{0, 1}, Region{2, 3});
    CHECK(witness.k_bound == 3);
    CHECK(witness.c == Region{4, 5, 6});
    CHECK(witness.k_bound >= steane.k());

    auto trivial = dimension_bound_from_tripartition(steane, Region{}, Region{});
    CHECK(trivial.k_bound == steane.n);

    CHECK_THROWS_AS(dimension_bound_from_tripartition(steane, Region{0, 1}, Region{1, 2}),
                    input_error);
    // Non-correctable side is reported by name.
    auto rep = make_family("repetition", 3);
    try {
        dimension_bound_from_tripartition(rep, Region{0}, Region{});
        FAIL("expected precondition error");
    } catch (const input_error& e) {
        CHECK(std::string(e.what()).find("A") != std::string::npos);
    }
    try {
        dimension_bound_from_tripartition(rep, Region{}, Region{1});
        FAIL("expected precondition error");
    } catch (const input_error& e) {
        CHECK(std::string(e.what()).find("B") != std::string::npos);
    }
}

TEST_CASE("dz_correctable agrees with the oracle on random codes") {
    std::mt19937_64 rng(97);
    for (int trial = 0; trial < 12; ++trial) {
        std::size_t n = 3 + rng() % 4;
        StabilizerCode code;
        code.n = n;
        code.name = "random";
        // Rejection-sample a commuting generator set.
        for (int attempt = 0; attempt < 200 && code.generators.size() < n - 1; ++attempt) {
            SymplecticVector v(n);
            for (std::size_t i = 0; i < n; ++i) {
                v.x.set(i, rng() % 2);
                v.z.set(i, rng() % 2);
            }
            if (v.is_identity()) continue;
            bool commutes = true;
            for (const auto& g : code.generators)
                if (symplectic_product(v, g) != 0) {
                    commutes = false;
                    break;
                }
            if (commutes) code.generators.push_back(v);
        }
        if (code.generators.empty()) continue;
        code.validate();
        for (uint32_t mask = 0; mask < (1u << n); ++mask) {
            Region e = region_from_mask(mask, n);
            CHECK(dz_correctable(code, e) == is_correctable_oracle(code, e));
        }
    }
}

TEST_CASE("classical_correctable") {
    // Classical repetition on 3 bits: any proper subset of bits is an
    // erasure the parity checks pin down; all 3 bits lose the codeword.
    auto code = parse_classical_code("cecc v1 n=3\n110\n011\n");
    CHECK(classical_correctable(code, Region{}));
    CHECK(classical_correctable(code, Region{0}));
    CHECK(classical_correctable(code, Region{0, 2}));
    CHECK_FALSE(classical_correctable(code, Region{0, 1, 2}));
}
