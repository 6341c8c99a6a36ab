#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qldpc/connectivity.hpp"
#include "qldpc/correctability.hpp"
#include "qldpc/errors.hpp"
#include "qldpc/graph_analysis.hpp"
#include "qldpc/partition_bounds.hpp"
#include "qldpc/stabilizer_code.hpp"

namespace qldpc {

struct AnalysisConfig {
    double alpha = 0.5;
    std::size_t exact_tw_max = 20;
    std::size_t exact_sep_max = 12;
    std::size_t brute_distance_cap = 6;
    SeparatorStrategy strategy = SeparatorStrategy::bfs_layering;
    EliminationStrategy tw_strategy = EliminationStrategy::min_fill;
    uint64_t seed = 0;
    std::string output_format = "json";
    // Optional formula-mode inputs.
    std::optional<double> formula_c;
    std::optional<double> formula_alpha_dist;
    std::optional<double> hyperbolic_dimension;
    std::optional<double> genus;
};

// End product of an analysis run. Every numeric field carries a
// provenance tag saying how it was produced.
struct BoundsReport {
    bool classical = false;
    std::string code_name;
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t k_actual = 0;
    std::size_t delta = 0;
    std::size_t edges = 0;

    std::size_t tw_lower = 0;
    std::size_t tw_upper = 0;
    std::string tw_provenance;  // "exact" | "heuristic"

    std::optional<std::size_t> d_brute;
    std::string d_brute_status;  // "exact" | "exceeds-cap" | "skipped"
    std::optional<std::size_t> d_upper_treewidth;
    std::string d_upper_provenance;

    std::size_t d_lb_used = 1;
    std::optional<std::size_t> k_upper_partition;
    std::string k_upper_provenance;
    std::size_t tri_a = 0, tri_b = 0, tri_c = 0;

    bool r_applicable = false;
    std::optional<std::size_t> r_empirical;
    std::optional<std::size_t> r_recurrence;
    std::string r_note;
    std::optional<std::size_t> r_formula;

    std::vector<FormulaLine> formula_evaluations;

    AnalysisConfig config;
};

inline nlohmann::ordered_json report_to_json(const BoundsReport& r) {
    using json = nlohmann::ordered_json;
    json j;
    j["schema"] = "bounds-report/1";
    j["code"] = {{"name", r.code_name},
                 {"classical", r.classical},
                 {"n", r.n},
                 {"m", r.m},
                 {"k", r.k_actual}};
    j["connectivity"] = {{"delta", r.delta}, {"edges", r.edges}};
    j["treewidth"] = {{"lower", r.tw_lower},
                      {"upper", r.tw_upper},
                      {"provenance", r.tw_provenance}};
    json dist;
    dist["brute"] = r.d_brute ? json(*r.d_brute) : json(nullptr);
    dist["brute_status"] = r.d_brute_status;
    dist["brute_provenance"] = "brute-force";
    dist["upper_treewidth"] = r.d_upper_treewidth ? json(*r.d_upper_treewidth) : json(nullptr);
    dist["upper_provenance"] = r.d_upper_provenance;
    j["distance"] = dist;
    json dim;
    dim["k_actual"] = r.k_actual;
    dim["k_upper_partition"] = r.k_upper_partition ? json(*r.k_upper_partition) : json(nullptr);
    dim["provenance"] = r.k_upper_provenance;
    dim["d_lb_used"] = r.d_lb_used;
    dim["tripartition"] = {{"a", r.tri_a}, {"b", r.tri_b}, {"c", r.tri_c}};
    j["dimension"] = dim;
    json trans;
    trans["applicable"] = r.r_applicable;
    trans["r_empirical"] = r.r_empirical ? json(*r.r_empirical) : json(nullptr);
    trans["r_recurrence"] = r.r_recurrence ? json(*r.r_recurrence) : json(nullptr);
    trans["r_formula"] = r.r_formula ? json(*r.r_formula) : json(nullptr);
    trans["note"] = r.r_note;
    j["transversal"] = trans;
    json lines = json::array();
    for (const auto& line : r.formula_evaluations) {
        json l;
        l["label"] = line.label;
        l["expression"] = line.expression;
        l["value"] = line.value ? json(*line.value) : json(nullptr);
        l["kind"] = line.asymptotic ? "asymptotic" : "explicit";
        lines.push_back(l);
    }
    j["formula_evaluations"] = lines;
    j["config"] = {{"alpha", r.config.alpha},
                   {"exact_tw_max", r.config.exact_tw_max},
                   {"exact_sep_max", r.config.exact_sep_max},
                   {"distance_cap", r.config.brute_distance_cap},
                   {"strategy", separator_strategy_name(r.config.strategy)},
                   {"tw_strategy", elimination_strategy_name(r.config.tw_strategy)},
                   {"seed", r.config.seed}};
    return j;
}

inline std::string report_to_text(const BoundsReport& r) {
    std::ostringstream out;
    out << "code " << r.code_name << (r.classical ? " (classical)" : "") << ": n=" << r.n
        << " m=" << r.m << " k=" << r.k_actual << "\n";
    out << "connectivity: delta=" << r.delta << " edges=" << r.edges << "\n";
    out << "treewidth: [" << r.tw_lower << ", " << r.tw_upper << "] (" << r.tw_provenance
        << ")\n";
    out << "distance: brute=";
    if (r.d_brute)
        out << *r.d_brute;
    else
        out << "-";
    out << " (" << r.d_brute_status << ")";
    if (r.d_upper_treewidth)
        out << ", upper delta*(tw+1)=" << *r.d_upper_treewidth << " (" << r.d_upper_provenance
            << ")";
    out << "\n";
    if (r.k_upper_partition)
        out << "dimension: k=" << r.k_actual << " <= " << *r.k_upper_partition << " ("
            << r.k_upper_provenance << ", d_lb=" << r.d_lb_used << ", |A|=" << r.tri_a
            << " |B|=" << r.tri_b << " |C|=" << r.tri_c << ")\n";
    if (r.r_applicable) {
        out << "transversal: R_empirical=";
        if (r.r_empirical)
            out << *r.r_empirical;
        else
            out << "-";
        if (r.r_recurrence) out << " R_recurrence=" << *r.r_recurrence;
        if (r.r_formula) out << " R_formula=" << *r.r_formula;
        out << "  [" << r.r_note << "]\n";
    } else {
        out << "transversal: not applicable (d_lb <= 1)\n";
    }
    for (const auto& line : r.formula_evaluations) {
        out << "formula [" << line.label << "]: " << line.expression;
        if (line.value) out << " -> " << *line.value;
        out << (line.asymptotic ? " (asymptotic)" : " (explicit)") << "\n";
    }
    return out.str();
}

namespace detail {

inline void fill_treewidth(BoundsReport& rep, const ConnectivityGraph& g,
                           const AnalysisConfig& cfg) {
    if (g.num_vertices() <= cfg.exact_tw_max) {
        auto [tw, td] = exact_treewidth(g, cfg.exact_tw_max);
        rep.tw_lower = tw;
        rep.tw_upper = tw;
        rep.tw_provenance = "exact";
    } else {
        auto [ub, td] = heuristic_treewidth_upper(g, cfg.tw_strategy);
        rep.tw_lower = treewidth_lower_bound_degeneracy(g);
        rep.tw_upper = ub;
        rep.tw_provenance = "heuristic";
    }
}

}  // namespace detail

inline BoundsReport analyze_code(const StabilizerCode& code, const AnalysisConfig& cfg) {
    code.validate();
    BoundsReport rep;
    rep.config = cfg;
    rep.code_name = code.name.empty() ? "unnamed" : code.name;
    rep.n = code.n;
    rep.m = code.num_generators();
    rep.k_actual = code.k();

    ConnectivityGraph g = build_connectivity(code);
    rep.delta = g.max_degree();
    rep.edges = g.num_edges();

    detail::fill_treewidth(rep, g, cfg);

    if (code.n <= 25) {
        auto res = brute_distance(code, cfg.brute_distance_cap);
        if (res.distance) {
            rep.d_brute = *res.distance;
            rep.d_brute_status = "exact";
        } else {
            rep.d_brute_status = "exceeds-cap";
        }
    } else {
        rep.d_brute_status = "skipped";
    }

    rep.d_upper_treewidth = distance_bound(rep.delta, rep.tw_upper);
    rep.d_upper_provenance = rep.tw_provenance;
    if (rep.d_brute && rep.k_actual >= 1 && *rep.d_brute > *rep.d_upper_treewidth)
        throw internal_error("distance bound violated: d_brute = " +
                             std::to_string(*rep.d_brute) + " > delta*(tw+1) = " +
                             std::to_string(*rep.d_upper_treewidth));

    rep.d_lb_used = (rep.d_brute_status == "exact") ? *rep.d_brute : 1;
    SeparationOptions opts{cfg.alpha, cfg.strategy, cfg.seed, cfg.exact_sep_max, nullptr};
    auto dim = dimension_bound(code, g, rep.d_lb_used, opts);
    rep.k_upper_partition = dim.k_upper;
    rep.k_upper_provenance = "heuristic";
    rep.tri_a = dim.witness.a.size();
    rep.tri_b = dim.witness.b.size();
    rep.tri_c = dim.witness.c.size();
    if (rep.k_actual > *rep.k_upper_partition)
        throw internal_error("dimension bound violated: k = " + std::to_string(rep.k_actual) +
                             " > k_upper = " + std::to_string(*rep.k_upper_partition));

    if (rep.d_lb_used >= 2) {
        auto trans = transversal_level_empirical(code, g, rep.d_lb_used, opts);
        rep.r_applicable = trans.applicable;
        rep.r_empirical = trans.r;
        if (trans.recurrence_converged) rep.r_recurrence = trans.recurrence_iterations;
        rep.r_note = "valid for any code with d >= " + std::to_string(rep.d_lb_used);
    } else {
        rep.r_applicable = false;
        rep.r_note = "d_lb <= 1: no nonempty correctable blocks exist";
    }
    if (cfg.formula_c && cfg.formula_alpha_dist)
        rep.r_formula = transversal_level_formula(*cfg.formula_c, *cfg.formula_alpha_dist);

    FormulaParams fp;
    fp.delta = static_cast<double>(rep.delta);
    fp.tw_upper = static_cast<double>(rep.tw_upper);
    fp.n = static_cast<double>(rep.n);
    for (auto& line : formula_bounds("projector", fp)) rep.formula_evaluations.push_back(line);
    if (cfg.hyperbolic_dimension) {
        fp.dimension = cfg.hyperbolic_dimension;
        for (auto& line : formula_bounds("hyperbolic_D", fp))
            rep.formula_evaluations.push_back(line);
    }
    if (cfg.genus) {
        fp.genus = cfg.genus;
        for (auto& line : formula_bounds("genus_g", fp)) rep.formula_evaluations.push_back(line);
    }
    return rep;
}

// Classical path: the treewidth distance bound has no classical analogue,
// so the report carries only the structural data, the brute distance, and
// the single-application dimension bound k <= |complement|.
inline BoundsReport analyze_classical(const ClassicalCode& code, const AnalysisConfig& cfg) {
    BoundsReport rep;
    rep.classical = true;
    rep.config = cfg;
    rep.code_name = code.name.empty() ? "unnamed" : code.name;
    rep.n = code.n;
    rep.m = code.parity_checks.rows();
    rep.k_actual = code.k();

    ConnectivityGraph g = build_connectivity(code);
    rep.delta = g.max_degree();
    rep.edges = g.num_edges();
    detail::fill_treewidth(rep, g, cfg);

    if (code.n <= 30) {
        auto res = brute_distance(code, cfg.brute_distance_cap);
        if (res.distance) {
            rep.d_brute = *res.distance;
            rep.d_brute_status = "exact";
        } else {
            rep.d_brute_status = "exceeds-cap";
        }
    } else {
        rep.d_brute_status = "skipped";
    }
    rep.d_upper_provenance = "not-applicable";

    rep.d_lb_used = (rep.d_brute_status == "exact") ? *rep.d_brute : 1;
    SeparationOptions opts{cfg.alpha, cfg.strategy, cfg.seed, cfg.exact_sep_max, nullptr};
    auto part = recursive_separation(g, rep.d_lb_used, opts);
    for (const auto& block : part.blocks)
        if (!classical_correctable(code, block))
            throw internal_error("classical dimension bound: block not correctable");
    rep.k_upper_partition = part.complement.size();
    rep.k_upper_provenance = "heuristic";
    rep.tri_a = part.blocks_union().size();
    rep.tri_b = 0;
    rep.tri_c = part.complement.size();
    if (rep.k_actual > *rep.k_upper_partition)
        throw internal_error("classical dimension bound violated: k = " +
                             std::to_string(rep.k_actual) + " > |complement| = " +
                             std::to_string(*rep.k_upper_partition));
    rep.r_note = "transversal analysis applies to stabilizer codes only";
    return rep;
}

// --- profile serialization -------------------------------------------------

inline std::string profile_to_csv(const SeparabilityProfile& p) {
    std::ostringstream out;
    out << "r,s_observed,seed\n";
    for (const auto& s : p.samples)
        out << s.r << "," << s.s_observed << "," << s.subgraph_seed << "\n";
    return out.str();
}

inline nlohmann::ordered_json profile_to_json(const SeparabilityProfile& p) {
    nlohmann::ordered_json j;
    j["schema"] = "separability-profile/1";
    j["note"] = "empirical lower estimate of the profile";
    auto rows = nlohmann::ordered_json::array();
    for (const auto& s : p.samples)
        rows.push_back({{"r", s.r}, {"s_observed", s.s_observed}, {"seed", s.subgraph_seed}});
    j["samples"] = rows;
    j["fitted_c"] = p.fitted_c;
    j["fitted_c_band"] = p.fitted_c_band;
    return j;
}

}  // namespace qldpc
