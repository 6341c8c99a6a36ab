#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qldpc/connectivity.hpp"
#include "qldpc/correctability.hpp"
#include "qldpc/errors.hpp"
#include "qldpc/graph_analysis.hpp"
#include "qldpc/region.hpp"
#include "qldpc/stabilizer_code.hpp"

namespace qldpc {

// --- the S_d recurrence --------------------------------------------------

struct PowerLawS {
    double sigma = 1.0;
    double c = 0.5;
};

// Separator-size specification driving the recurrence
//   S_d(r) = c_alpha * s(r) + 2 S_d(child(r)),   S_d(t) = 0 for t < d,
// with child(r) = min(ceil(alpha r), r - 1) so the unrolling terminates.
struct RecurrenceParams {
    std::optional<PowerLawS> power_law;         // s(r) = ceil(sigma * r^c)
    std::vector<std::pair<std::size_t, std::size_t>> table;  // sorted (r, s(r)) steps
    double c_alpha = 1.0;
    double alpha = 0.5;

    static RecurrenceParams from_power_law(double sigma, double c, double alpha = 0.5,
                                           double c_alpha = 1.0) {
        if (!(c > 0.0 && c <= 1.0)) throw input_error("power-law exponent must be in (0, 1]");
        if (sigma <= 0.0) throw input_error("power-law coefficient must be positive");
        if (!(alpha >= 0.5 && alpha < 1.0)) throw input_error("alpha must be in [1/2, 1)");
        if (c_alpha < 1.0) throw input_error("c_alpha must be >= 1");
        RecurrenceParams p;
        p.power_law = PowerLawS{sigma, c};
        p.alpha = alpha;
        p.c_alpha = c_alpha;
        return p;
    }

    static RecurrenceParams from_table(std::vector<std::pair<std::size_t, std::size_t>> rows,
                                       double alpha = 0.5, double c_alpha = 1.0) {
        std::sort(rows.begin(), rows.end());
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (rows[i].second < rows[i - 1].second)
                throw input_error("tabulated s must be nondecreasing");
        RecurrenceParams p;
        p.table = std::move(rows);
        p.alpha = alpha;
        p.c_alpha = c_alpha;
        return p;
    }

    // Step-function lookup: value at the greatest tabulated r' <= r.
    std::size_t s_of(std::size_t r) const {
        if (power_law)
            return static_cast<std::size_t>(
                std::ceil(power_law->sigma * std::pow(static_cast<double>(r), power_law->c) -
                          1e-9));
        std::size_t best = 0;
        for (const auto& [rr, ss] : table) {
            if (rr > r) break;
            best = ss;
        }
        return best;
    }
};

// Exact unrolled value of the recurrence. The recursion has a single
// child chain, so the unrolling is linear in the depth.
inline uint64_t eval_S_d(const RecurrenceParams& params, std::size_t d, std::size_t n) {
    if (d < 1) throw input_error("eval_S_d: d must be >= 1");
    double total = 0.0;
    double mult = 1.0;
    std::size_t r = n;
    while (r >= d && r >= 1) {
        total += mult * params.c_alpha * static_cast<double>(params.s_of(r));
        std::size_t child = static_cast<std::size_t>(
            std::ceil(params.alpha * static_cast<double>(r) - 1e-12));
        child = std::min(child, r - 1);
        mult *= 2.0;
        r = child;
    }
    return static_cast<uint64_t>(std::llround(total));
}

struct ClosedFormReport {
    std::vector<std::pair<std::size_t, double>> ratios;  // (n, S_d(n) / (d^{c-1} n))
    double max_ratio = 0.0;
    bool tail_bounded = false;  // the last quarter of the sweep is a plateau
};

// Sweeps S_d(n) / (d^{c-1} n) for a power-law s; the ratio must plateau
// under a constant for c < 1.
inline ClosedFormReport closed_form_check(const RecurrenceParams& params, std::size_t d,
                                          const std::vector<std::size_t>& n_sweep) {
    if (!params.power_law) throw input_error("closed_form_check needs a power-law s");
    const double c = params.power_law->c;
    if (!(c < 1.0)) throw input_error("closed form requires c < 1");
    ClosedFormReport report;
    for (std::size_t n : n_sweep) {
        double denom = std::pow(static_cast<double>(d), c - 1.0) * static_cast<double>(n);
        double ratio = denom > 0 ? static_cast<double>(eval_S_d(params, d, n)) / denom : 0.0;
        report.ratios.push_back({n, ratio});
        report.max_ratio = std::max(report.max_ratio, ratio);
    }
    if (!report.ratios.empty()) {
        std::size_t tail_start = (report.ratios.size() * 3) / 4;
        double lo = report.ratios[tail_start].second, hi = lo;
        for (std::size_t i = tail_start; i < report.ratios.size(); ++i) {
            lo = std::min(lo, report.ratios[i].second);
            hi = std::max(hi, report.ratios[i].second);
        }
        report.tail_bounded = (hi - lo) <= 0.05 * std::max(report.max_ratio, 1e-12);
    }
    return report;
}

// --- recursive separation ---------------------------------------------------

struct SplitRecord {
    std::size_t piece_size = 0;
    std::size_t separator_size = 0;
};

// Partition V = (decoupled blocks, each smaller than d_target) | complement.
struct RecursivePartition {
    std::vector<Region> blocks;
    Region complement;
    std::size_t d_target = 0;
    std::vector<SplitRecord> split_tree;

    Region blocks_union() const {
        Region u;
        for (const auto& b : blocks) u = region_union(u, b);
        return u;
    }
};

struct SeparationOptions {
    double alpha = 0.5;
    SeparatorStrategy strategy = SeparatorStrategy::bfs_layering;
    uint64_t seed = 0;
    std::size_t exact_below = 0;  // pieces at most this size use the exact separator
    const VertexEmbedding* embedding = nullptr;
};

// Iteratively separates until every remaining piece is smaller than
// d_target; those pieces are the blocks, the separators accumulate into
// the complement. Blocks end up pairwise decoupled because every pair is
// split by some separator along the way.
inline RecursivePartition recursive_separation(const ConnectivityGraph& g, std::size_t d_target,
                                               const SeparationOptions& opts) {
    if (d_target < 1) throw input_error("recursive_separation: d_target must be >= 1");
    RecursivePartition part;
    part.d_target = d_target;

    std::vector<std::vector<std::size_t>> stack;
    {
        std::vector<std::size_t> all(g.num_vertices());
        for (std::size_t v = 0; v < all.size(); ++v) all[v] = v;
        if (!all.empty()) stack.push_back(std::move(all));
    }
    std::vector<std::size_t> complement_members;
    uint64_t piece_counter = 0;

    while (!stack.empty()) {
        std::vector<std::size_t> piece = std::move(stack.back());
        stack.pop_back();
        if (piece.empty()) continue;
        if (piece.size() < d_target) {
            part.blocks.push_back(Region(piece));
            continue;
        }
        ConnectivityGraph sub = g.induced(piece);
        VertexEmbedding sub_emb;
        const VertexEmbedding* emb_ptr = nullptr;
        if (opts.embedding) {
            sub_emb.model = opts.embedding->model;
            for (std::size_t v : piece) sub_emb.points.push_back(opts.embedding->points[v]);
            emb_ptr = &sub_emb;
        }
        Separation sep;
        if (piece.size() <= opts.exact_below)
            sep = exact_separator(sub, opts.alpha);
        else
            sep = heuristic_separator(sub, opts.alpha, opts.strategy,
                                      opts.seed + 0x9e3779b97f4a7c15ull * ++piece_counter,
                                      emb_ptr);
        part.split_tree.push_back({piece.size(), sep.s.size()});
        for (std::size_t local : sep.s) complement_members.push_back(piece[local]);
        std::vector<std::size_t> side_a, side_b;
        for (std::size_t local : sep.a) side_a.push_back(piece[local]);
        for (std::size_t local : sep.b) side_b.push_back(piece[local]);
        if (!side_b.empty()) stack.push_back(std::move(side_b));
        if (!side_a.empty()) stack.push_back(std::move(side_a));
    }

    part.complement = Region(std::move(complement_members));
    std::vector<Region> check = part.blocks;
    if (!are_decoupled(g, check))
        throw internal_error("recursive_separation produced coupled blocks");
    return part;
}

// Nondecreasing envelope of the separator sizes actually incurred, in
// tabulated form. Replaying the recurrence with it bounds the
// complement size.
inline RecurrenceParams envelope_from_splits(const std::vector<SplitRecord>& splits,
                                             double alpha) {
    std::map<std::size_t, std::size_t> by_size;
    for (const auto& rec : splits)
        by_size[rec.piece_size] = std::max(by_size[rec.piece_size], rec.separator_size);
    std::vector<std::pair<std::size_t, std::size_t>> rows;
    std::size_t running = 0;
    for (const auto& [r, s] : by_size) {
        running = std::max(running, s);
        rows.push_back({r, running});
    }
    return RecurrenceParams::from_table(std::move(rows), alpha);
}

// True when every split respects the supplied s function and the
// complement is within the replayed recurrence bound.
inline bool partition_within_recurrence(const RecursivePartition& part,
                                        const RecurrenceParams& params, std::size_t n) {
    for (const auto& rec : part.split_tree) {
        double allowed = params.c_alpha * static_cast<double>(params.s_of(rec.piece_size));
        if (static_cast<double>(rec.separator_size) > allowed + 1e-9) return false;
    }
    return part.complement.size() <= eval_S_d(params, part.d_target, n);
}

// --- bound evaluations -------------------------------------------------------

// d <= delta * (tw + 1); any upper bound on tw gives a valid distance bound.
inline std::size_t distance_bound(std::size_t delta, std::size_t tw_upper) {
    return delta * (tw_upper + 1);
}

struct DimensionBoundResult {
    std::size_t k_upper = 0;
    TripartitionWitness witness;
    RecursivePartition first_partition;
    RecursivePartition second_partition;
};

// Two rounds of recursive separation: blocks of the first round form the
// correctable A, re-separating the leftover yields B, and what remains is
// C with k <= |C|. Every block is certified by the rank criterion.
inline DimensionBoundResult dimension_bound(const StabilizerCode& code,
                                            const ConnectivityGraph& g, std::size_t d_lb,
                                            const SeparationOptions& opts) {
    if (d_lb < 1) throw input_error("dimension_bound: d_lb must be >= 1");
    if (g.num_vertices() != code.n)
        throw input_error("dimension_bound: graph does not match code");

    DimensionBoundResult result;
    result.first_partition = recursive_separation(g, d_lb, opts);
    for (const auto& block : result.first_partition.blocks)
        if (!dz_correctable(code, block))
            throw input_error("dimension_bound: block of size " + std::to_string(block.size()) +
                              " is not correctable; d_lb = " + std::to_string(d_lb) +
                              " is not a valid distance lower bound");
    Region a = result.first_partition.blocks_union();

    const Region& abar = result.first_partition.complement;
    std::vector<std::size_t> abar_vertices(abar.begin(), abar.end());
    ConnectivityGraph sub = g.induced(abar_vertices);
    SeparationOptions opts2 = opts;
    opts2.seed = opts.seed + 1;
    opts2.embedding = nullptr;
    RecursivePartition part2_local = recursive_separation(sub, d_lb, opts2);

    // Map the second partition back to original vertex ids.
    result.second_partition.d_target = d_lb;
    result.second_partition.split_tree = part2_local.split_tree;
    for (const auto& block : part2_local.blocks) {
        std::vector<std::size_t> mapped;
        for (std::size_t local : block) mapped.push_back(abar_vertices[local]);
        result.second_partition.blocks.push_back(Region(mapped));
    }
    {
        std::vector<std::size_t> mapped;
        for (std::size_t local : part2_local.complement) mapped.push_back(abar_vertices[local]);
        result.second_partition.complement = Region(mapped);
    }

    for (const auto& block : result.second_partition.blocks)
        if (!dz_correctable(code, block))
            throw input_error("dimension_bound: second-round block is not correctable; d_lb = " +
                              std::to_string(d_lb) + " is not a valid distance lower bound");

    Region b = result.second_partition.blocks_union();
    result.witness = dimension_bound_from_tripartition(code, a, b);
    result.k_upper = result.witness.k_bound;
    return result;
}

struct TransversalLevelResult {
    bool applicable = false;  // false when d_lb <= 1: no nonempty correctable blocks exist
    std::size_t r = 0;
    std::vector<Region> regions;  // r + 1 certified-correctable regions covering V
    std::size_t recurrence_iterations = 0;  // S_d iteration count with the observed envelope
    bool recurrence_converged = false;
};

// Peels correctable unions off the graph until the leftover is smaller
// than d_lb; the peel count bounds the transversal-gate level.
inline TransversalLevelResult transversal_level_empirical(const StabilizerCode& code,
                                                          const ConnectivityGraph& g,
                                                          std::size_t d_lb,
                                                          const SeparationOptions& opts) {
    TransversalLevelResult result;
    if (d_lb < 2) return result;  // not applicable
    result.applicable = true;

    std::vector<std::size_t> current(g.num_vertices());
    for (std::size_t v = 0; v < current.size(); ++v) current[v] = v;
    std::vector<SplitRecord> all_splits;
    uint64_t round = 0;

    while (current.size() >= d_lb) {
        ConnectivityGraph sub = g.induced(current);
        SeparationOptions ropts = opts;
        ropts.seed = opts.seed + 7919 * ++round;
        ropts.embedding = nullptr;
        RecursivePartition part = recursive_separation(sub, d_lb, ropts);
        all_splits.insert(all_splits.end(), part.split_tree.begin(), part.split_tree.end());

        std::vector<std::size_t> peeled, rest;
        Region local_blocks = part.blocks_union();
        for (std::size_t i = 0; i < current.size(); ++i)
            (local_blocks.contains(i) ? peeled : rest).push_back(current[i]);
        Region peel_region(peeled);
        if (!dz_correctable(code, peel_region))
            throw input_error("transversal_level_empirical: peeled region not correctable; "
                              "d_lb is not a valid distance lower bound");
        result.regions.push_back(std::move(peel_region));
        ++result.r;
        current = std::move(rest);
    }
    Region tail(current);
    if (!dz_correctable(code, tail))
        throw input_error("transversal_level_empirical: final region not correctable; "
                          "d_lb is not a valid distance lower bound");
    result.regions.push_back(std::move(tail));

    // Replay the recurrence with the observed separator envelope.
    if (!all_splits.empty()) {
        RecurrenceParams env = envelope_from_splits(all_splits, opts.alpha);
        std::size_t m = g.num_vertices();
        for (std::size_t iter = 0; iter < 64; ++iter) {
            if (m < d_lb) {
                result.recurrence_converged = true;
                break;
            }
            std::size_t next = static_cast<std::size_t>(eval_S_d(env, d_lb, m));
            ++result.recurrence_iterations;
            if (next >= m) break;  // envelope too coarse to contract
            m = next;
        }
        if (m < d_lb) result.recurrence_converged = true;
    } else {
        result.recurrence_converged = true;  // |V| < d_lb from the start
    }
    return result;
}

// R = ceil((1 - alpha) / (alpha (1 - c))) for power-law separators and
// polynomial distance d = Theta(n^alpha).
inline std::size_t transversal_level_formula(double c, double alpha_dist) {
    if (!(c > 0.0 && c < 1.0))
        throw input_error("transversal_level_formula: c must be in (0, 1)");
    if (!(alpha_dist > 0.0 && alpha_dist < 1.0))
        throw input_error("transversal_level_formula: alpha must be in (0, 1)");
    double value = (1.0 - alpha_dist) / (alpha_dist * (1.0 - c));
    return static_cast<std::size_t>(std::ceil(value - 1e-9));
}

// --- formula-mode bound lines --------------------------------------------------

struct FormulaLine {
    std::string label;
    std::string expression;
    std::optional<double> value;
    bool asymptotic = true;  // big-O with unknown constant vs explicit inequality
};

struct FormulaParams {
    std::optional<double> delta;
    std::optional<double> tw_upper;
    std::optional<double> dimension;  // hyperbolic D
    std::optional<double> genus;
    std::optional<double> n;
    std::optional<std::size_t> d_lb;
    std::optional<RecurrenceParams> s_spec;
};

inline std::vector<FormulaLine> formula_bounds(const std::string& kind,
                                               const FormulaParams& p) {
    auto need = [&](const std::optional<double>& v, const char* name) {
        if (!v) throw input_error(std::string("formula_bounds(") + kind + "): missing " + name);
        return *v;
    };
    std::vector<FormulaLine> lines;
    if (kind == "projector") {
        double delta = need(p.delta, "delta");
        double tw = need(p.tw_upper, "tw_upper");
        lines.push_back({"commuting-projector distance bound", "d <= 8 * delta^2 * tw",
                         8.0 * delta * delta * tw, false});
    } else if (kind == "hyperbolic_D") {
        double dim = need(p.dimension, "D");
        if (dim < 2) throw input_error("formula_bounds(hyperbolic_D): D must be >= 2");
        if (dim == 2) {
            lines.push_back({"hyperbolic D=2 distance", "d = O(log n)",
                             p.n ? std::optional<double>(std::log(*p.n)) : std::nullopt, true});
            lines.push_back({"hyperbolic D=2 dimension", "k d^2 / log(d)^2 = O(n)", p.n, true});
        } else {
            double expo = (dim - 2.0) / (dim - 1.0);
            lines.push_back({"hyperbolic D>=3 distance",
                             "d = O(n^{" + std::to_string(expo) + "})",
                             p.n ? std::optional<double>(std::pow(*p.n, expo)) : std::nullopt,
                             true});
            lines.push_back({"hyperbolic D>=3 dimension",
                             "k d^{" + std::to_string(2.0 / (dim - 1.0)) + "} = O(n)", p.n,
                             true});
        }
    } else if (kind == "genus_g") {
        double genus = need(p.genus, "g");
        double n = need(p.n, "n");
        lines.push_back({"genus-g distance", "d = O(sqrt(g n))", std::sqrt(genus * n), true});
        lines.push_back({"genus-g dimension", "k d = O(g n)", genus * n, true});
    } else if (kind == "classical") {
        if (!p.s_spec) throw input_error("formula_bounds(classical): missing s_spec");
        if (!p.d_lb) throw input_error("formula_bounds(classical): missing d_lb");
        double n = need(p.n, "n");
        uint64_t bound = eval_S_d(*p.s_spec, *p.d_lb, static_cast<std::size_t>(n));
        lines.push_back({"classical dimension bound", "k <= S_d(n)",
                         static_cast<double>(bound), false});
    } else {
        throw input_error("formula_bounds: unknown kind " + kind);
    }
    return lines;
}

}  // namespace qldpc
