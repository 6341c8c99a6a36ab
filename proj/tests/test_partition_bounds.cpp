#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "qldpc/connectivity.hpp"
#include "qldpc/partition_bounds.hpp"
#include "qldpc/stabilizer_code.hpp"

using namespace qldpc;

TEST_CASE("eval_S_d: halt, hand anchor, edge cases") {
    auto sqrt_s = RecurrenceParams::from_power_law(1.0, 0.5);
    CHECK(eval_S_d(sqrt_s, 5, 4) == 0);  // halts below d
    CHECK(eval_S_d(sqrt_s, 4, 16) == 18);
    CHECK(eval_S_d(sqrt_s, 16, 16) == 4);  // single split, then both halves halt
    CHECK(eval_S_d(sqrt_s, 1, 0) == 0);
    CHECK_THROWS_AS(eval_S_d(sqrt_s, 0, 16), input_error);

    // Linear s with d = 1 unrolls to n (log2 n + 1): superlinear growth.
    auto linear = RecurrenceParams::from_power_law(1.0, 1.0);
    for (std::size_t t = 1; t <= 10; ++t) {
        std::size_t n = 1ull << t;
        CHECK(eval_S_d(linear, 1, n) == (t + 1) * n);
    }
}

TEST_CASE("eval_S_d: monotone nonincreasing in d") {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 40; ++trial) {
        double c = 0.3 + 0.6 * (rng() % 100) / 100.0;
        auto params = RecurrenceParams::from_power_law(1.0, c);
        std::size_t n = 16 + rng() % 5000;
        std::size_t d1 = 1 + rng() % 20, d2 = d1 + rng() % 20;
        CHECK(eval_S_d(params, d1, n) >= eval_S_d(params, d2, n));
    }
}

TEST_CASE("eval_S_d: tabulated s") {
    auto table = RecurrenceParams::from_table({{4, 2}, {8, 3}, {16, 4}});
    CHECK(table.s_of(3) == 0);
    CHECK(table.s_of(4) == 2);
    CHECK(table.s_of(10) == 3);
    CHECK(table.s_of(100) == 4);
    CHECK(eval_S_d(table, 4, 16) == 18);  // identical to the sqrt anchor on this range
    CHECK_THROWS_AS(RecurrenceParams::from_table({{4, 3}, {8, 2}}), input_error);
}

TEST_CASE("closed_form_check") {
    auto half = RecurrenceParams::from_power_law(1.0, 0.5);
    std::vector<std::size_t> sweep;
    for (std::size_t n = 16; n <= (1ull << 20) * 16; n *= 2) sweep.push_back(n);
    auto report = closed_form_check(half, 16, sweep);
    CHECK(report.max_ratio <= 8.0);
    CHECK(report.tail_bounded);

    // d = n halts after a single split: S_d(n) = s(n).
    for (std::size_t n : {16u, 64u, 256u}) {
        auto single = closed_form_check(half, n, {n});
        CHECK(eval_S_d(half, n, n) == half.s_of(n));
        CHECK(single.max_ratio > 0.0);
    }

    auto c8 = RecurrenceParams::from_power_law(1.0, 0.8);
    std::vector<std::size_t> sweep8;
    for (std::size_t n = 64; n <= (1ull << 20) * 64; n *= 2) sweep8.push_back(n);
    auto report8 = closed_form_check(c8, 64, sweep8);
    CHECK(report8.max_ratio <= 8.0);

    auto linear = RecurrenceParams::from_power_law(1.0, 1.0);
    CHECK_THROWS_AS(closed_form_check(linear, 4, {16}), input_error);
}

TEST_CASE("recursive_separation on a path") {
    auto path = test_util::path_graph(8);
    SeparationOptions opts;
    auto part = recursive_separation(path, 2, opts);
    CHECK(part.complement.size() <= 7);
    std::size_t covered = part.complement.size();
    for (const auto& block : part.blocks) {
        CHECK(block.size() == 1);
        covered += block.size();
    }
    CHECK(covered == 8);
    CHECK(are_decoupled(path, part.blocks));

    // The complement is within the recurrence bound for the envelope of
    // the separators actually used, and for any power law dominating it.
    auto envelope = envelope_from_splits(part.split_tree, opts.alpha);
    CHECK(partition_within_recurrence(part, envelope, 8));
    auto sqrt_s = RecurrenceParams::from_power_law(1.0, 0.5);
    CHECK(partition_within_recurrence(part, sqrt_s, 8));
}

TEST_CASE("recursive_separation edge cases") {
    auto path = test_util::path_graph(5);
    SeparationOptions opts;

    // d_target above |V|: nothing to split.
    auto whole = recursive_separation(path, 6, opts);
    REQUIRE(whole.blocks.size() == 1);
    CHECK(whole.blocks[0] == Region::full(5));
    CHECK(whole.complement.empty());
    CHECK(whole.split_tree.empty());

    // d_target = 1 forbids every nonempty block.
    auto degenerate = recursive_separation(path, 1, opts);
    CHECK(degenerate.blocks.empty());
    CHECK(degenerate.complement == Region::full(5));

    CHECK_THROWS_AS(recursive_separation(path, 0, opts), input_error);

    // Deterministic per seed.
    auto grid = test_util::grid_graph(6, 6);
    SeparationOptions sopts;
    sopts.seed = 17;
    auto a = recursive_separation(grid, 4, sopts);
    auto b = recursive_separation(grid, 4, sopts);
    CHECK(a.complement == b.complement);
    REQUIRE(a.blocks.size() == b.blocks.size());
    for (std::size_t i = 0; i < a.blocks.size(); ++i) CHECK(a.blocks[i] == b.blocks[i]);
}

TEST_CASE("recursive_separation on the surface code graph") {
    auto code = make_family("surface", 3);
    auto g = build_connectivity(code);
    SeparationOptions opts;
    opts.exact_below = 13;
    auto part = recursive_separation(g, 3, opts);
    for (const auto& block : part.blocks) CHECK(block.size() <= 2);
    CHECK(are_decoupled(g, part.blocks));
    std::size_t covered = part.complement.size();
    for (const auto& block : part.blocks) covered += block.size();
    CHECK(covered == 13);
}

TEST_CASE("distance_bound") {
    CHECK(distance_bound(2, 1) == 4);
    CHECK(distance_bound(4, 5) == 24);

    // End-to-end: brute distance respects the bound on the surface code.
    auto code = make_family("surface", 3);
    auto g = build_connectivity(code);
    auto [ub, td] = heuristic_treewidth_upper(g, EliminationStrategy::min_fill);
    auto d = brute_distance(code, 4);
    REQUIRE(d.distance.has_value());
    CHECK(*d.distance <= distance_bound(g.max_degree(), ub));
}

TEST_CASE("dimension_bound across the built-in families") {
    struct Entry {
        std::string family;
        std::size_t size;
        std::size_t d_lb;
    };
    std::vector<Entry> entries = {{"steane", 0, 3},   {"toric", 2, 2},  {"surface", 2, 2},
                                  {"surface", 3, 3},  {"five_qubit", 0, 3},
                                  {"repetition", 5, 1}};
    for (const auto& [family, size, d_lb] : entries) {
        auto code = make_family(family, size);
        auto g = build_connectivity(code);
        SeparationOptions opts;
        opts.exact_below = 12;
        auto result = dimension_bound(code, g, d_lb, opts);
        CHECK(result.k_upper >= code.k());
        CHECK(result.witness.k_bound == result.k_upper);
        for (const auto& block : result.first_partition.blocks)
            CHECK(dz_correctable(code, block));
        for (const auto& block : result.second_partition.blocks)
            CHECK(dz_correctable(code, block));
    }

    // Degenerate d_lb = 1: the pipeline stays total and returns k <= n.
    auto rep = make_family("repetition", 3);
    auto g = build_connectivity(rep);
    auto result = dimension_bound(rep, g, 1, SeparationOptions{});
    CHECK(result.k_upper == 3);

    // An invalid lower bound is detected through a non-correctable block.
    auto surface = make_family("surface", 2);  // d = 2
    auto sg = build_connectivity(surface);
    CHECK_THROWS_AS(dimension_bound(surface, sg, 6, SeparationOptions{}), input_error);
}

TEST_CASE("transversal_level_empirical") {
    auto code = make_family("surface", 3);
    auto g = build_connectivity(code);
    SeparationOptions opts;
    opts.exact_below = 13;
    auto result = transversal_level_empirical(code, g, 3, opts);
    REQUIRE(result.applicable);
    CHECK(result.r >= 1);
    CHECK(result.regions.size() == result.r + 1);
    Region all;
    for (const auto& region : result.regions) {
        CHECK(dz_correctable(code, region));
        CHECK(regions_disjoint(all, region));
        all = region_union(all, region);
    }
    CHECK(all == Region::full(code.n));
    if (result.recurrence_converged) CHECK(result.r <= result.recurrence_iterations);

    // d_lb < 2 is not applicable.
    CHECK_FALSE(transversal_level_empirical(code, g, 1, opts).applicable);

    // A whole graph smaller than d_lb is a single correctable region.
    auto frozen = parse_code("qecc v1 n=2\nZI\nIZ\n");
    auto fg = build_connectivity(frozen);
    auto small = transversal_level_empirical(frozen, fg, 3, SeparationOptions{});
    REQUIRE(small.applicable);
    CHECK(small.r == 0);
    REQUIRE(small.regions.size() == 1);
    CHECK(small.regions[0] == Region::full(2));
}

TEST_CASE("transversal_level_formula") {
    CHECK(transversal_level_formula(0.5, 0.5) == 2);
    CHECK(transversal_level_formula(0.5, 1.0 / 3.0) == 4);
    CHECK(transversal_level_formula(0.75, 0.5) == 4);
    CHECK_THROWS_AS(transversal_level_formula(1.0, 0.5), input_error);
    CHECK_THROWS_AS(transversal_level_formula(0.0, 0.5), input_error);
    CHECK_THROWS_AS(transversal_level_formula(0.5, 1.0), input_error);
    CHECK_THROWS_AS(transversal_level_formula(0.5, 0.0), input_error);
}

TEST_CASE("formula_bounds") {
    FormulaParams p;
    p.delta = 2;
    p.tw_upper = 5;
    auto lines = formula_bounds("projector", p);
    REQUIRE(lines.size() == 1);
    CHECK_FALSE(lines[0].asymptotic);
    CHECK(*lines[0].value == doctest::Approx(160.0));
    p.delta = 4;
    CHECK(*formula_bounds("projector", p)[0].value == doctest::Approx(640.0));

    FormulaParams h;
    h.dimension = 3;
    h.n = 256;
    auto hyper = formula_bounds("hyperbolic_D", h);
    REQUIRE(hyper.size() == 2);
    CHECK(hyper[0].asymptotic);
    CHECK(*hyper[0].value == doctest::Approx(16.0));  // n^{1/2}
    h.dimension = 2;
    auto flat = formula_bounds("hyperbolic_D", h);
    CHECK(flat[0].expression.find("log") != std::string::npos);

    FormulaParams g;
    g.genus = 2;
    g.n = 50;
    auto genus = formula_bounds("genus_g", g);
    REQUIRE(genus.size() == 2);
    CHECK(*genus[0].value == doctest::Approx(10.0));
    CHECK(*genus[1].value == doctest::Approx(100.0));

    FormulaParams c;
    c.s_spec = RecurrenceParams::from_power_law(1.0, 0.5);
    c.d_lb = 4;
    c.n = 16;
    auto classical = formula_bounds("classical", c);
    REQUIRE(classical.size() == 1);
    CHECK(*classical[0].value == doctest::Approx(18.0));
    CHECK_FALSE(classical[0].asymptotic);

    CHECK_THROWS_AS(formula_bounds("projector", FormulaParams{}), input_error);
    CHECK_THROWS_AS(formula_bounds("nonsense", p), input_error);
}

TEST_CASE("validity chain across built-in families") {
    // Wherever the brute distance is exact, the distance and dimension
    // bounds hold.
    struct Entry {
        std::string family;
        std::size_t size;
    };
    std::vector<Entry> entries = {{"repetition", 3}, {"repetition", 7}, {"five_qubit", 0},
                                  {"steane", 0},     {"surface", 2},    {"surface", 3},
                                  {"toric", 2}};
    for (const auto& [family, size] : entries) {
        auto code = make_family(family, size);
        auto g = build_connectivity(code);
        auto d = brute_distance(code, 6);
        REQUIRE(d.distance.has_value());
        std::size_t tw_ub = (g.num_vertices() <= 16)
                                ? exact_treewidth(g, 16).first
                                : heuristic_treewidth_upper(g).first;
        CHECK(*d.distance <= distance_bound(g.max_degree(), tw_ub));
        SeparationOptions opts;
        opts.exact_below = 10;
        auto dim = dimension_bound(code, g, *d.distance, opts);
        CHECK(code.k() <= dim.k_upper);
    }
}
