// qldpc-bounds: analyze stabilizer codes through their connectivity
// graphs, generate code/graph files, and profile graph separability.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qldpc/analyze.hpp"
#include "qldpc/connectivity.hpp"
#include "qldpc/coords.hpp"
#include "qldpc/errors.hpp"
#include "qldpc/graph_analysis.hpp"
#include "qldpc/graph_generators.hpp"
#include "qldpc/stabilizer_code.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw qldpc::input_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::optional<std::string>& out_path, const std::string& content) {
    if (out_path) {
        std::ofstream out(*out_path, std::ios::binary);
        if (!out) throw qldpc::input_error("cannot write file: " + *out_path);
        out << content;
    } else {
        std::cout << content;
    }
}

struct CommonFlags {
    double alpha = 0.5;
    std::size_t exact_tw_max = 20;
    std::size_t exact_sep_max = 12;
    std::size_t distance_cap = 6;
    std::string strategy = "bfs_layering";
    uint64_t seed = 0;
    std::string format;  // per-subcommand default when empty
    std::optional<std::string> out;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--alpha", flags.alpha, "separator balance parameter in [1/2, 1)");
    cmd->add_option("--exact-tw-max", flags.exact_tw_max,
                    "vertex cutoff for exact treewidth");
    cmd->add_option("--exact-sep-max", flags.exact_sep_max,
                    "vertex cutoff for exact separators inside the partition pipeline");
    cmd->add_option("--distance-cap", flags.distance_cap, "brute-force distance weight cap");
    cmd->add_option("--strategy", flags.strategy,
                    "separator strategy: bfs_layering | spectral_bisection | geometric_cut");
    cmd->add_option("--seed", flags.seed, "random seed; fixed seed gives reproducible output");
    cmd->add_option("--format", flags.format,
                    "output format: reports json | text, profiles json | csv, "
                    "generated files text | json");
    cmd->add_option("--out", flags.out, "output path (default: stdout)");
}

int run_analyze(const std::string& path, const CommonFlags& flags,
                std::optional<double> formula_c, std::optional<double> formula_alpha,
                std::optional<double> hyperbolic_d, std::optional<double> genus) {
    std::string text = read_file(path);
    qldpc::AnalysisConfig cfg;
    cfg.alpha = flags.alpha;
    cfg.exact_tw_max = flags.exact_tw_max;
    cfg.exact_sep_max = flags.exact_sep_max;
    cfg.brute_distance_cap = flags.distance_cap;
    cfg.strategy = qldpc::separator_strategy_from_name(flags.strategy);
    cfg.seed = flags.seed;
    cfg.output_format = flags.format;
    cfg.formula_c = formula_c;
    cfg.formula_alpha_dist = formula_alpha;
    cfg.hyperbolic_dimension = hyperbolic_d;
    cfg.genus = genus;

    qldpc::BoundsReport report;
    auto first = text.find_first_not_of(" \t\r\n");
    bool classical = false;
    if (first != std::string::npos && text[first] != '{') {
        std::istringstream probe(text.substr(first));
        std::string tag;
        probe >> tag;
        classical = (tag == "cecc");
    }
    if (classical)
        report = qldpc::analyze_classical(qldpc::parse_classical_code(text), cfg);
    else
        report = qldpc::analyze_code(qldpc::parse_code(text), cfg);

    if (flags.format == "text")
        write_output(flags.out, qldpc::report_to_text(report));
    else
        write_output(flags.out, qldpc::report_to_json(report).dump(2) + "\n");
    return 0;
}

int run_generate(const std::vector<std::string>& spec, const CommonFlags& flags) {
    if (spec.empty()) throw qldpc::input_error("generate: missing kind");
    const std::string& kind = spec[0];
    auto arg = [&](std::size_t i) -> std::size_t {
        if (i >= spec.size()) throw qldpc::input_error("generate: missing argument");
        return std::stoul(spec[i]);
    };

    const bool json = flags.format == "json";
    auto emit_graph = [&](const qldpc::ConnectivityGraph& g) {
        write_output(flags.out,
                     json ? qldpc::serialize_graph_json(g) + "\n" : qldpc::serialize_graph(g));
    };

    if (kind == "repetition" || kind == "five_qubit" || kind == "steane" || kind == "surface" ||
        kind == "toric") {
        std::size_t size = (spec.size() > 1) ? arg(1) : 0;
        auto code = qldpc::make_family(kind, size);
        write_output(flags.out, json ? qldpc::serialize_code_json(code) + "\n"
                                     : qldpc::serialize_code(code));
        return 0;
    }
    if (kind == "grid") {
        auto eg = qldpc::make_grid(arg(1), arg(2));
        emit_graph(eg.graph);
        if (flags.out) write_output(*flags.out + ".coords", qldpc::serialize_coords(eg.embedding));
        return 0;
    }
    if (kind == "hyperbolic") {
        auto eg = qldpc::make_hyperbolic_patch(arg(1), arg(2), arg(3));
        emit_graph(eg.graph);
        if (flags.out) write_output(*flags.out + ".coords", qldpc::serialize_coords(eg.embedding));
        return 0;
    }
    if (kind == "random_regular") {
        auto g = qldpc::make_random_regular(arg(1), arg(2), spec.size() > 3 ? arg(3) : flags.seed);
        emit_graph(g);
        return 0;
    }
    throw qldpc::input_error("generate: unknown kind " + kind);
}

int run_profile(const std::string& path, const CommonFlags& flags,
                std::vector<std::size_t> r_grid, std::size_t samples_per_r) {
    auto g = qldpc::parse_graph(read_file(path));
    if (r_grid.empty()) {
        // Default grid: powers of four up to |V|.
        for (std::size_t r = 4; r < g.num_vertices(); r *= 4) r_grid.push_back(r);
        r_grid.push_back(g.num_vertices());
    }
    auto profile = qldpc::separability_profile(
        g, flags.alpha, r_grid, samples_per_r, flags.seed,
        qldpc::separator_strategy_from_name(flags.strategy));
    if (flags.format == "csv")
        write_output(flags.out, qldpc::profile_to_csv(profile));
    else
        write_output(flags.out, qldpc::profile_to_json(profile).dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"connectivity-graph bounds for stabilizer codes"};
    app.require_subcommand(1);

    CommonFlags an_flags;
    std::string an_path;
    double an_formula_c = -1, an_formula_alpha = -1, an_hyperbolic = -1, an_genus = -1;
    auto* analyze = app.add_subcommand("analyze", "analyze a code file and emit a bounds report");
    analyze->add_option("code", an_path, "qecc/cecc/JSON code file")->required();
    add_common(analyze, an_flags);
    analyze->add_option("--formula-c", an_formula_c, "separability exponent for R_formula");
    analyze->add_option("--formula-alpha", an_formula_alpha,
                        "distance exponent for R_formula");
    analyze->add_option("--hyperbolic-D", an_hyperbolic, "evaluate hyperbolic bound lines");
    analyze->add_option("--genus", an_genus, "evaluate genus bound lines");

    CommonFlags gen_flags;
    std::vector<std::string> gen_spec;
    auto* generate = app.add_subcommand(
        "generate", "emit a code or graph file: repetition|five_qubit|steane|surface|toric "
                    "<size>, grid <D> <side>, hyperbolic <p> <q> <rings>, "
                    "random_regular <degree> <n> [seed]");
    generate->add_option("spec", gen_spec, "kind and parameters")->required()->expected(-1);
    add_common(generate, gen_flags);

    CommonFlags prof_flags;
    std::string prof_path;
    std::vector<std::size_t> prof_r_grid;
    std::size_t prof_samples = 5;
    auto* profile = app.add_subcommand("profile", "empirical separability profile of a graph");
    profile->add_option("graph", prof_path, "graph v1 or JSON graph file")->required();
    add_common(profile, prof_flags);
    profile->add_option("--r-grid", prof_r_grid, "subgraph sizes to sample");
    profile->add_option("--samples", prof_samples, "samples per subgraph size");

    try {
        app.parse(argc, argv);
        if (*analyze)
            return run_analyze(an_path, an_flags,
                               an_formula_c >= 0 ? std::optional<double>(an_formula_c)
                                                 : std::nullopt,
                               an_formula_alpha >= 0 ? std::optional<double>(an_formula_alpha)
                                                     : std::nullopt,
                               an_hyperbolic >= 0 ? std::optional<double>(an_hyperbolic)
                                                  : std::nullopt,
                               an_genus >= 0 ? std::optional<double>(an_genus) : std::nullopt);
        if (*generate) return run_generate(gen_spec, gen_flags);
        if (*profile) return run_profile(prof_path, prof_flags, prof_r_grid, prof_samples);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const qldpc::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const qldpc::input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const qldpc::budget_error& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const qldpc::internal_error& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
