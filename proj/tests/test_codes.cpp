#include <doctest.h>

#include <bit>
#include <random>
#include <string>

#include "helpers.hpp"
#include "qldpc/connectivity.hpp"
#include "qldpc/stabilizer_code.hpp"

using namespace qldpc;

TEST_CASE("parse_code: text format") {
    auto code = parse_code("qecc v1 n=3\nZZI\nIZZ\n");
    CHECK(code.n == 3);
    CHECK(code.num_generators() == 2);
    CHECK(code.k() == 1);

    auto steane = make_family("steane", 0);
    auto reparsed = parse_code(serialize_code(steane));
    CHECK(reparsed.n == 7);
    CHECK(reparsed.num_generators() == 6);
    CHECK(reparsed.k() == 1);
    CHECK(serialize_code(reparsed) == serialize_code(steane));

    // Comments and blank lines are ignored.
    auto commented = parse_code("# repetition\nqecc v1 n=3\n\nZZI # first\nIZZ\n");
    CHECK(commented.num_generators() == 2);

    // Over-complete lists are kept verbatim; only ranks deduplicate.
    auto dup = parse_code("qecc v1 n=3\nZZI\nZZI\nIZZ\n");
    CHECK(dup.num_generators() == 3);
    CHECK(dup.k() == 1);
}

TEST_CASE("parse_code: errors name the offending line") {
    CHECK_THROWS_AS(parse_code(""), parse_error);
    CHECK_THROWS_AS(parse_code("qecc v2 n=3\nZZI\n"), parse_error);

    try {
        parse_code("qecc v1 n=2\nXX\nZI\n");
        FAIL("expected commutation error");
    } catch (const parse_error& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        CHECK(std::string(e.what()).find("commute") != std::string::npos);
    }
    try {
        parse_code("qecc v1 n=3\nZZI\nIZ\n");
        FAIL("expected length error");
    } catch (const parse_error& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    try {
        parse_code("qecc v1 n=3\nZQI\n");
        FAIL("expected bad character error");
    } catch (const parse_error& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("parse_code: JSON alternative") {
    auto code = parse_code(R"({"n": 3, "generators": ["ZZI", "IZZ"], "name": "rep"})");
    CHECK(code.n == 3);
    CHECK(code.k() == 1);
    CHECK(code.name == "rep");
    CHECK_THROWS_AS(parse_code(R"({"n": 3})"), parse_error);
    CHECK_THROWS_AS(parse_code(R"({"n": 3, "generators": ["ZZ"]})"), parse_error);
}

TEST_CASE("classical code format") {
    auto code = parse_classical_code("cecc v1 n=3\n110\n011\n");
    CHECK(code.n == 3);
    CHECK(code.k() == 1);
    CHECK(parse_classical_code(serialize_classical_code(code)).parity_checks ==
          code.parity_checks);
    CHECK_THROWS_AS(parse_classical_code("cecc v1 n=3\n1x0\n"), parse_error);

    auto d = brute_distance(code, 3);
    REQUIRE(d.distance.has_value());
    CHECK(*d.distance == 3);  // classical repetition: only codeword is 111
}

TEST_CASE("make_family: parameters and anchors") {
    auto rep = make_family("repetition", 3);
    CHECK(rep.n == 3);
    CHECK(rep.k() == 1);

    auto five = make_family("five_qubit", 0);
    CHECK(five.n == 5);
    CHECK(five.k() == 1);
    five.validate();

    auto toric = make_family("toric", 2);
    CHECK(toric.n == 8);
    CHECK(toric.num_generators() == 8);
    CHECK(toric.k() == 2);
    toric.validate();

    auto surface = make_family("surface", 3);
    CHECK(surface.n == 13);
    CHECK(surface.k() == 1);
    surface.validate();
    auto d = brute_distance(surface, 4);
    REQUIRE(d.distance.has_value());
    CHECK(*d.distance == 3);

    auto surface2 = make_family("surface", 2);
    CHECK(surface2.n == 5);
    CHECK(surface2.k() == 1);

    CHECK_THROWS_AS(make_family("color", 3), input_error);
    CHECK_THROWS_AS(make_family("repetition", 1), input_error);
    CHECK_THROWS_AS(make_family("surface", 1), input_error);
    CHECK_THROWS_AS(make_family("toric", 1), input_error);
}

TEST_CASE("make_family: deterministic generator lists") {
    for (const auto& [family, size] :
         std::vector<std::pair<std::string, std::size_t>>{
             {"repetition", 5}, {"five_qubit", 0}, {"steane", 0}, {"surface", 3}, {"toric", 2}}) {
        auto a = make_family(family, size);
        auto b = make_family(family, size);
        REQUIRE(a.generators.size() == b.generators.size());
        for (std::size_t i = 0; i < a.generators.size(); ++i)
            CHECK(a.generators[i] == b.generators[i]);
    }
}

TEST_CASE("logical_basis: representatives and invariants") {
    auto rep = make_family("repetition", 3);
    auto basis = logical_basis(rep);
    REQUIRE(basis.representatives.size() == 2);
    bool has_weight1_z = false, has_xxx = false;
    for (const auto& r : basis.representatives) {
        if (r.weight() == 1 && r.x.none()) has_weight1_z = true;
        if (r.to_pauli_string() == "XXX") has_xxx = true;
    }
    CHECK(has_weight1_z);
    CHECK(has_xxx);

    for (const auto& name : {"steane", "five_qubit"}) {
        auto code = make_family(name, 0);
        auto lb = logical_basis(code);
        REQUIRE(lb.representatives.size() == 2);
        BinaryMatrix h = code.check_matrix();
        RowBasis accum(h);
        for (const auto& r : lb.representatives) {
            CHECK(r.weight() >= 3);
            for (const auto& g : code.generators) CHECK(symplectic_product(r, g) == 0);
            // Independent modulo the stabilizer row space.
            CHECK(accum.add(r.to_row()));
        }
    }

    // k = 0: no logical classes.
    auto frozen = parse_code("qecc v1 n=2\nZI\nIZ\n");
    CHECK(frozen.k() == 0);
    CHECK(logical_basis(frozen).representatives.empty());
}

TEST_CASE("brute_distance anchors") {
    auto check_d = [](const StabilizerCode& code, std::size_t expect) {
        auto res = brute_distance(code, expect + 1);
        REQUIRE(res.distance.has_value());
        CHECK(*res.distance == expect);
        // The witness is a minimal-weight nontrivial logical.
        REQUIRE(res.witness.has_value());
        CHECK(res.witness->weight() == expect);
        for (const auto& g : code.generators) CHECK(symplectic_product(*res.witness, g) == 0);
        RowBasis stab(code.check_matrix());
        CHECK_FALSE(stab.contains(res.witness->to_row()));
    };
    check_d(make_family("repetition", 3), 1);
    check_d(make_family("steane", 0), 3);
    check_d(make_family("five_qubit", 0), 3);
    check_d(make_family("surface", 2), 2);

    // Cap exhaustion is an explicit value, not an error.
    auto res = brute_distance(make_family("steane", 0), 2);
    CHECK_FALSE(res.distance.has_value());
    CHECK_THROWS_AS(brute_distance(make_family("steane", 0), 0), input_error);
}

TEST_CASE("brute_distance is identical across thread budgets") {
    auto code = make_family("surface", 3);
    setenv("QLDPC_BOUNDS_THREADS", "1", 1);
    auto serial = brute_distance(code, 4);
    setenv("QLDPC_BOUNDS_THREADS", "7", 1);
    auto parallel = brute_distance(code, 4);
    unsetenv("QLDPC_BOUNDS_THREADS");
    REQUIRE(serial.distance.has_value());
    REQUIRE(parallel.distance.has_value());
    CHECK(*serial.distance == *parallel.distance);
    REQUIRE(serial.witness.has_value());
    REQUIRE(parallel.witness.has_value());
    CHECK(*serial.witness == *parallel.witness);
}

TEST_CASE("is_correctable_oracle") {
    auto steane = make_family("steane", 0);
    CHECK(is_correctable_oracle(steane, Region{}));
    CHECK(is_correctable_oracle(steane, Region{0}));
    CHECK_FALSE(is_correctable_oracle(make_family("repetition", 3), Region{0}));

    // Any region smaller than the distance is correctable.
    for (const auto& name : {"steane", "five_qubit"}) {
        auto code = make_family(name, 0);
        for (std::size_t u = 0; u < code.n; ++u)
            for (std::size_t v = u + 1; v < code.n; ++v)
                CHECK(is_correctable_oracle(code, Region{u, v}));
    }
}

TEST_CASE("verify_cleaning_lemma: branches and witnesses") {
    auto rep = make_family("repetition", 3);
    auto report = verify_cleaning_lemma(rep, Region{0});
    CHECK(report.branch == 1);
    REQUIRE(report.witnesses.size() == 1);
    CHECK(report.witnesses[0].weight() == 1);
    CHECK(report.witnesses[0].support() == std::vector<std::size_t>{0});

    auto steane = make_family("steane", 0);
    auto cleaned = verify_cleaning_lemma(steane, Region{0, 1});
    CHECK(cleaned.branch == 2);
    REQUIRE(cleaned.witnesses.size() == 2);
    for (const auto& w : cleaned.witnesses) {
        CHECK_FALSE(w.is_identity());
        bool touches_u = w.x.get(0) || w.z.get(0) || w.x.get(1) || w.z.get(1);
        CHECK_FALSE(touches_u);
        for (const auto& g : steane.generators) CHECK(symplectic_product(w, g) == 0);
    }

    CHECK(verify_cleaning_lemma(steane, Region::full(7)).branch == 1);
    CHECK(verify_cleaning_lemma(rep, Region::full(3)).branch == 1);
}

TEST_CASE("cleaning branch 2 holds exactly on correctable regions") {
    std::vector<StabilizerCode> codes = {make_family("repetition", 3),
                                         make_family("five_qubit", 0),
                                         make_family("steane", 0), make_family("toric", 2)};
    for (const auto& code : codes) {
        // All regions of size at most 4.
        std::vector<std::size_t> members;
        for (uint32_t mask = 0; mask < (1u << code.n); ++mask) {
            if (std::popcount(mask) > 4) continue;
            members.clear();
            for (std::size_t v = 0; v < code.n; ++v)
                if ((mask >> v) & 1u) members.push_back(v);
            Region u(members);
            bool correctable = is_correctable_oracle(code, u);
            auto report = verify_cleaning_lemma(code, u);
            CHECK((report.branch == 2) == correctable);
        }
    }
}

TEST_CASE("union lemma on decoupled correctable regions") {
    auto code = make_family("surface", 3);
    auto g = build_connectivity(code);
    std::mt19937_64 rng(5);
    int effective = 0;
    for (int trial = 0; trial < 200; ++trial) {
        Region u1{rng() % code.n};
        Region u2{rng() % code.n};
        if (!regions_disjoint(u1, u2)) continue;
        if (!are_decoupled(g, {u1, u2})) continue;
        if (!is_correctable_oracle(code, u1) || !is_correctable_oracle(code, u2)) continue;
        ++effective;
        CHECK(is_correctable_oracle(code, region_union(u1, u2)));
    }
    CHECK(effective >= 10);
}

TEST_CASE("expansion lemma on sampled regions") {
    std::mt19937_64 rng(9);
    int effective = 0;
    for (const auto& name : {"steane", "surface"}) {
        auto code = make_family(name, name == std::string("surface") ? 3 : 0);
        auto g = build_connectivity(code);
        for (int trial = 0; trial < 100; ++trial) {
            Region t{rng() % code.n};
            Region u = outer_boundary(g, t);
            // Optionally grow U beyond the boundary.
            if (rng() % 2) u.insert(rng() % code.n);
            if (!is_correctable_oracle(code, t)) continue;
            if (!is_correctable_oracle(code, u)) continue;
            ++effective;
            CHECK(is_correctable_oracle(code, region_union(t, u)));
        }
    }
    CHECK(effective >= 5);
}
