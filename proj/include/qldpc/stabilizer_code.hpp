#pragma once

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "qldpc/bitvec.hpp"
#include "qldpc/errors.hpp"
#include "qldpc/gf2.hpp"
#include "qldpc/region.hpp"
#include "qldpc/symplectic.hpp"
#include "qldpc/threading.hpp"

namespace qldpc {

// A stabilizer code given by a (possibly over-complete) generator list.
// The list is kept verbatim: the connectivity graph and hence the max
// degree legitimately depend on the chosen presentation.
struct StabilizerCode {
    std::size_t n = 0;
    std::vector<SymplecticVector> generators;
    std::string name;

    std::size_t num_generators() const { return generators.size(); }

    // Generators stacked as rows of an m x 2n matrix in (x|z) layout.
    BinaryMatrix check_matrix() const {
        BinaryMatrix h(generators.size(), 2 * n);
        for (std::size_t r = 0; r < generators.size(); ++r) h.row(r) = generators[r].to_row();
        return h;
    }

    // Rows [g.z | g.x]: v commutes with every generator iff this matrix
    // annihilates v's (x|z) row.
    BinaryMatrix commutation_matrix() const {
        BinaryMatrix m(generators.size(), 2 * n);
        for (std::size_t r = 0; r < generators.size(); ++r) {
            const auto& g = generators[r];
            for (std::size_t i = 0; i < n; ++i) {
                if (g.z.get(i)) m.set(r, i, true);
                if (g.x.get(i)) m.set(r, n + i, true);
            }
        }
        return m;
    }

    std::size_t rank_h() const { return rank(check_matrix()); }
    std::size_t k() const { return n - rank_h(); }

    // Throws if any generator pair anticommutes or has the wrong length.
    void validate() const {
        for (std::size_t i = 0; i < generators.size(); ++i) {
            if (generators[i].n != n)
                throw input_error("generator " + std::to_string(i) + " has wrong qubit count");
            for (std::size_t j = i + 1; j < generators.size(); ++j)
                if (symplectic_product(generators[i], generators[j]) != 0)
                    throw input_error("generators " + std::to_string(i) + " and " +
                                      std::to_string(j) + " do not commute");
        }
    }
};

struct ClassicalCode {
    std::size_t n = 0;
    BinaryMatrix parity_checks;  // m x n
    std::string name;

    std::size_t k() const { return n - rank(parity_checks); }
};

// --- code file formats ------------------------------------------------
//
// Text:   "qecc v1 n=<n>" followed by one Pauli string per line.
//         '#' starts a comment. Classical: "cecc v1 n=<n>" with 0/1 rows.
// JSON:   {"n": <n>, "generators": ["ZZI", ...], "name": "..."}.

namespace detail {

inline std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    std::string s = (pos == std::string::npos) ? line : line.substr(0, pos);
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::size_t parse_header(const std::string& line, const std::string& magic,
                                std::string* name_out) {
    std::istringstream iss(line);
    std::string tag, version;
    iss >> tag >> version;
    if (tag != magic || version != "v1")
        throw parse_error("expected '" + magic + " v1' header, got: " + line);
    std::size_t n = 0;
    bool have_n = false;
    std::string field;
    while (iss >> field) {
        if (field.rfind("n=", 0) == 0) {
            n = std::stoul(field.substr(2));
            have_n = true;
        } else if (field.rfind("name=", 0) == 0 && name_out) {
            *name_out = field.substr(5);
        }
    }
    if (!have_n) throw parse_error("header missing n= field: " + line);
    return n;
}

}  // namespace detail

inline StabilizerCode parse_code(const std::string& text) {
    // JSON alternative: first meaningful character is '{'.
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        StabilizerCode code;
        try {
            auto j = nlohmann::json::parse(text);
            if (!j.contains("n") || !j.contains("generators"))
                throw parse_error("JSON code file requires \"n\" and \"generators\"");
            code.n = j.at("n").get<std::size_t>();
            code.name = j.value("name", "");
            for (const auto& g : j.at("generators")) {
                auto s = g.get<std::string>();
                if (s.size() != code.n)
                    throw parse_error("generator \"" + s + "\" has length " +
                                      std::to_string(s.size()) + ", expected " +
                                      std::to_string(code.n));
                code.generators.push_back(SymplecticVector::from_pauli_string(s));
            }
        } catch (const nlohmann::json::exception& e) {
            throw parse_error(std::string("invalid JSON code file: ") + e.what());
        }
        try {
            code.validate();
        } catch (const input_error& e) {
            throw parse_error(e.what());
        }
        return code;
    }

    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    StabilizerCode code;
    bool have_header = false;
    std::vector<std::size_t> gen_lines;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = detail::strip_comment(line);
        if (s.empty()) continue;
        if (!have_header) {
            code.n = detail::parse_header(s, "qecc", &code.name);
            have_header = true;
            continue;
        }
        if (s.size() != code.n)
            throw parse_error("line " + std::to_string(lineno) + ": generator has length " +
                              std::to_string(s.size()) + ", expected " + std::to_string(code.n));
        try {
            code.generators.push_back(SymplecticVector::from_pauli_string(s));
        } catch (const parse_error& e) {
            throw parse_error("line " + std::to_string(lineno) + ": " + e.what());
        }
        gen_lines.push_back(lineno);
    }
    if (!have_header) throw parse_error("empty code file (no 'qecc v1' header)");
    for (std::size_t i = 0; i < code.generators.size(); ++i)
        for (std::size_t j = i + 1; j < code.generators.size(); ++j)
            if (symplectic_product(code.generators[i], code.generators[j]) != 0)
                throw parse_error("line " + std::to_string(gen_lines[j]) +
                                  ": generator does not commute with generator on line " +
                                  std::to_string(gen_lines[i]));
    return code;
}

inline std::string serialize_code(const StabilizerCode& code) {
    std::ostringstream out;
    out << "qecc v1 n=" << code.n;
    if (!code.name.empty()) out << " name=" << code.name;
    out << "\n";
    for (const auto& g : code.generators) out << g.to_pauli_string() << "\n";
    return out.str();
}

inline std::string serialize_code_json(const StabilizerCode& code) {
    nlohmann::ordered_json j;
    j["n"] = code.n;
    auto gens = nlohmann::ordered_json::array();
    for (const auto& g : code.generators) gens.push_back(g.to_pauli_string());
    j["generators"] = std::move(gens);
    if (!code.name.empty()) j["name"] = code.name;
    return j.dump();
}

inline ClassicalCode parse_classical_code(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    ClassicalCode code;
    bool have_header = false;
    std::vector<BitVec> rows;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = detail::strip_comment(line);
        if (s.empty()) continue;
        if (!have_header) {
            code.n = detail::parse_header(s, "cecc", &code.name);
            have_header = true;
            continue;
        }
        if (s.size() != code.n)
            throw parse_error("line " + std::to_string(lineno) + ": row has length " +
                              std::to_string(s.size()) + ", expected " + std::to_string(code.n));
        BitVec row(code.n);
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1')
                row.set(i, true);
            else if (s[i] != '0')
                throw parse_error("line " + std::to_string(lineno) + ": invalid bit '" +
                                  std::string(1, s[i]) + "'");
        }
        rows.push_back(std::move(row));
    }
    if (!have_header) throw parse_error("empty code file (no 'cecc v1' header)");
    code.parity_checks = BinaryMatrix(rows.size(), code.n);
    for (std::size_t r = 0; r < rows.size(); ++r) code.parity_checks.row(r) = rows[r];
    return code;
}

inline std::string serialize_classical_code(const ClassicalCode& code) {
    std::ostringstream out;
    out << "cecc v1 n=" << code.n;
    if (!code.name.empty()) out << " name=" << code.name;
    out << "\n";
    for (std::size_t r = 0; r < code.parity_checks.rows(); ++r)
        out << code.parity_checks.row(r).to_string() << "\n";
    return out.str();
}

// --- built-in families -------------------------------------------------

namespace detail {

inline StabilizerCode make_repetition(std::size_t n) {
    if (n < 2) throw input_error("repetition code needs n >= 2");
    StabilizerCode code;
    code.n = n;
    code.name = "repetition-" + std::to_string(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        SymplecticVector g(n);
        g.z.set(i, true);
        g.z.set(i + 1, true);
        code.generators.push_back(g);
    }
    return code;
}

inline StabilizerCode make_five_qubit() {
    StabilizerCode code;
    code.n = 5;
    code.name = "five_qubit";
    const char* gens[] = {"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"};
    for (const char* g : gens)
        code.generators.push_back(SymplecticVector::from_pauli_string(g));
    return code;
}

inline StabilizerCode make_steane() {
    StabilizerCode code;
    code.n = 7;
    code.name = "steane";
    // Supports of the Hamming(7,4) parity checks (qubit i <-> integer i+1).
    const std::vector<std::vector<std::size_t>> supports = {
        {3, 4, 5, 6}, {1, 2, 5, 6}, {0, 2, 4, 6}};
    for (const auto& sup : supports) {
        SymplecticVector gx(7);
        for (auto q : sup) gx.x.set(q, true);
        code.generators.push_back(gx);
    }
    for (const auto& sup : supports) {
        SymplecticVector gz(7);
        for (auto q : sup) gz.z.set(q, true);
        code.generators.push_back(gz);
    }
    return code;
}

// Planar surface code of distance L on the (2L-1) x (2L-1) checkerboard:
// data qubits sit at (r, c) with r + c even, X checks at odd r / even c,
// Z checks at even r / odd c; each check acts on its lattice neighbors.
// n = L^2 + (L-1)^2, k = 1, d = L.
inline StabilizerCode make_surface(std::size_t L) {
    if (L < 2) throw input_error("surface code needs L >= 2");
    const std::size_t side = 2 * L - 1;
    std::vector<std::vector<int>> qubit_at(side, std::vector<int>(side, -1));
    StabilizerCode code;
    code.name = "surface-" + std::to_string(L);
    int next = 0;
    for (std::size_t r = 0; r < side; ++r)
        for (std::size_t c = 0; c < side; ++c)
            if ((r + c) % 2 == 0) qubit_at[r][c] = next++;
    code.n = static_cast<std::size_t>(next);

    auto add_check = [&](std::size_t r, std::size_t c, bool x_type) {
        SymplecticVector g(code.n);
        const int dr[] = {-1, 1, 0, 0};
        const int dc[] = {0, 0, -1, 1};
        for (int t = 0; t < 4; ++t) {
            int rr = static_cast<int>(r) + dr[t];
            int cc = static_cast<int>(c) + dc[t];
            if (rr < 0 || cc < 0 || rr >= static_cast<int>(side) || cc >= static_cast<int>(side))
                continue;
            int q = qubit_at[rr][cc];
            if (q < 0) continue;
            if (x_type)
                g.x.set(static_cast<std::size_t>(q), true);
            else
                g.z.set(static_cast<std::size_t>(q), true);
        }
        code.generators.push_back(g);
    };

    for (std::size_t r = 1; r < side; r += 2)
        for (std::size_t c = 0; c < side; c += 2) add_check(r, c, true);
    for (std::size_t r = 0; r < side; r += 2)
        for (std::size_t c = 1; c < side; c += 2) add_check(r, c, false);
    return code;
}

// Toric code on an L x L periodic grid: n = 2L^2, k = 2, d = L.
inline StabilizerCode make_toric(std::size_t L) {
    if (L < 2) throw input_error("toric code needs L >= 2");
    StabilizerCode code;
    code.n = 2 * L * L;
    code.name = "toric-" + std::to_string(L);
    auto h = [&](std::size_t i, std::size_t j) { return (i % L) * L + (j % L); };
    auto v = [&](std::size_t i, std::size_t j) { return L * L + (i % L) * L + (j % L); };
    for (std::size_t i = 0; i < L; ++i)
        for (std::size_t j = 0; j < L; ++j) {
            SymplecticVector star(code.n);
            star.x.set(h(i, j), true);
            star.x.set(h(i, j + L - 1), true);
            star.x.set(v(i, j), true);
            star.x.set(v(i + L - 1, j), true);
            code.generators.push_back(star);
        }
    for (std::size_t i = 0; i < L; ++i)
        for (std::size_t j = 0; j < L; ++j) {
            SymplecticVector plaq(code.n);
            plaq.z.set(h(i, j), true);
            plaq.z.set(h(i + 1, j), true);
            plaq.z.set(v(i, j), true);
            plaq.z.set(v(i, j + 1), true);
            code.generators.push_back(plaq);
        }
    return code;
}

}  // namespace detail

inline StabilizerCode make_family(const std::string& family, std::size_t size) {
    if (family == "repetition") return detail::make_repetition(size);
    if (family == "five_qubit") return detail::make_five_qubit();
    if (family == "steane") return detail::make_steane();
    if (family == "surface") return detail::make_surface(size);
    if (family == "toric") return detail::make_toric(size);
    throw input_error("unknown code family: " + family);
}

// --- logical operators and brute-force oracles --------------------------

struct LogicalBasis {
    std::size_t n = 0;
    // 2k coset representatives, canonically reduced modulo the stabilizer
    // row space. Not paired into conjugate (X,Z) partners; no bound needs it.
    std::vector<SymplecticVector> representatives;
};

inline LogicalBasis logical_basis(const StabilizerCode& code) {
    LogicalBasis basis;
    basis.n = code.n;
    BinaryMatrix h = code.check_matrix();
    RowBasis stab(h);
    RowBasis accum(h);
    for (const BitVec& v : nullspace(code.commutation_matrix())) {
        if (accum.add(v)) basis.representatives.push_back(SymplecticVector::from_row(stab.reduce(v)));
    }
    return basis;
}

struct DistanceResult {
    std::optional<std::size_t> distance;  // empty: exceeds the weight cap
    std::optional<SymplecticVector> witness;

    bool exact() const { return distance.has_value(); }
};

namespace detail {

// Enumerates size-w supports in lexicographic order, testing all 3^w
// Pauli patterns per support. Threads split the support stream round
// robin and the smallest encoded witness wins, so results do not depend
// on scheduling.
inline std::optional<BitVec> scan_weight_class(const StabilizerCode& code, const RowBasis& stab,
                                               std::size_t w) {
    const std::size_t n = code.n;
    if (w > n) return std::nullopt;
    const unsigned threads = std::min<unsigned>(thread_budget(), 8);

    auto worker = [&](unsigned tid, std::optional<BitVec>* best_out) {
        std::vector<std::size_t> comb(w);
        for (std::size_t i = 0; i < w; ++i) comb[i] = i;
        std::optional<BitVec> best;
        std::size_t idx = 0;
        while (true) {
            if (idx % threads == tid) {
                std::size_t patterns = 1;
                for (std::size_t i = 0; i < w; ++i) patterns *= 3;
                SymplecticVector v(n);
                for (std::size_t p = 0; p < patterns; ++p) {
                    std::size_t code_p = p;
                    for (std::size_t i = 0; i < w; ++i) {
                        int pauli = static_cast<int>(code_p % 3);  // 0=X 1=Z 2=Y
                        code_p /= 3;
                        v.x.set(comb[i], pauli != 1);
                        v.z.set(comb[i], pauli != 0);
                    }
                    bool commutes = true;
                    for (const auto& g : code.generators)
                        if (symplectic_product(v, g) != 0) {
                            commutes = false;
                            break;
                        }
                    if (!commutes) continue;
                    BitVec row = v.to_row();
                    if (stab.contains(row)) continue;
                    if (!best || row < *best) best = row;
                }
            }
            // next combination
            std::size_t i = w;
            while (i > 0 && comb[i - 1] == n - w + i - 1) --i;
            if (i == 0) break;
            ++comb[i - 1];
            for (std::size_t j = i; j < w; ++j) comb[j] = comb[j - 1] + 1;
            ++idx;
        }
        *best_out = best;
    };

    std::vector<std::optional<BitVec>> results(threads);
    if (threads == 1) {
        worker(0, &results[0]);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t, &results[t]);
        for (auto& th : pool) th.join();
    }
    std::optional<BitVec> best;
    for (const auto& r : results)
        if (r && (!best || *r < *best)) best = r;
    return best;
}

}  // namespace detail

// Minimum weight over nontrivial logical operators, by increasing-weight
// enumeration. Exact whenever the returned value is within the cap.
inline DistanceResult brute_distance(const StabilizerCode& code, std::size_t weight_cap) {
    if (weight_cap < 1) throw input_error("brute_distance: weight_cap must be >= 1");
    RowBasis stab(code.check_matrix());
    for (std::size_t w = 1; w <= std::min(weight_cap, code.n); ++w) {
        auto hit = detail::scan_weight_class(code, stab, w);
        if (hit) return {w, SymplecticVector::from_row(*hit)};
    }
    return {std::nullopt, std::nullopt};
}

// Minimum weight nonzero codeword of a classical code, same convention.
inline DistanceResult brute_distance(const ClassicalCode& code, std::size_t weight_cap) {
    if (weight_cap < 1) throw input_error("brute_distance: weight_cap must be >= 1");
    const std::size_t n = code.n;
    for (std::size_t w = 1; w <= std::min(weight_cap, n); ++w) {
        std::vector<std::size_t> comb(w);
        for (std::size_t i = 0; i < w; ++i) comb[i] = i;
        while (true) {
            BitVec v(n);
            for (std::size_t i : comb) v.set(i, true);
            bool in_kernel = true;
            for (std::size_t r = 0; r < code.parity_checks.rows(); ++r)
                if (dot_parity(code.parity_checks.row(r), v)) {
                    in_kernel = false;
                    break;
                }
            if (in_kernel) {
                SymplecticVector wv(n);
                wv.x = v;
                return {w, wv};
            }
            std::size_t i = w;
            while (i > 0 && comb[i - 1] == n - w + i - 1) --i;
            if (i == 0) break;
            ++comb[i - 1];
            for (std::size_t j = i; j < w; ++j) comb[j] = comb[j - 1] + 1;
        }
    }
    return {std::nullopt, std::nullopt};
}

namespace detail {

// Basis of the space of normalizer elements supported inside U,
// embedded as full-width (x|z) rows.
inline std::vector<BitVec> normalizer_inside(const StabilizerCode& code, const Region& u) {
    const auto& mem = u.members();
    BinaryMatrix w(code.num_generators(), 2 * mem.size());
    for (std::size_t r = 0; r < code.num_generators(); ++r) {
        const auto& g = code.generators[r];
        for (std::size_t i = 0; i < mem.size(); ++i) {
            if (g.z.get(mem[i])) w.set(r, i, true);
            if (g.x.get(mem[i])) w.set(r, mem.size() + i, true);
        }
    }
    std::vector<BitVec> out;
    for (const BitVec& kv : nullspace(w)) {
        BitVec row(2 * code.n);
        for (std::size_t i = 0; i < mem.size(); ++i) {
            if (kv.get(i)) row.set(mem[i], true);
            if (kv.get(mem.size() + i)) row.set(code.n + mem[i], true);
        }
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace detail

// Exact erasure-correctability: U is correctable iff every normalizer
// element supported inside U is a stabilizer.
inline bool is_correctable_oracle(const StabilizerCode& code, const Region& u) {
    RowBasis stab(code.check_matrix());
    for (const BitVec& v : detail::normalizer_inside(code, u))
        if (!stab.contains(v)) return false;
    return true;
}

// Which branch of the cleaning dichotomy holds for U, with witnesses:
// branch 1 exhibits a nontrivial logical inside U; branch 2 exhibits,
// for each logical class, a representative acting trivially on U.
struct CleaningReport {
    int branch = 0;
    // branch 1: a single nontrivial logical supported in U.
    // branch 2: one cleaned representative per logical class.
    std::vector<SymplecticVector> witnesses;
};

inline CleaningReport verify_cleaning_lemma(const StabilizerCode& code, const Region& u) {
    BinaryMatrix h = code.check_matrix();
    RowBasis stab(h);
    for (const BitVec& v : detail::normalizer_inside(code, u)) {
        if (!stab.contains(v)) return {1, {SymplecticVector::from_row(v)}};
    }

    // No logical lives inside U, so every class has a representative
    // avoiding U: match the representative's restriction to U by a
    // stabilizer product and cancel it.
    const auto& mem = u.members();
    std::vector<std::size_t> u_cols;
    for (std::size_t q : mem) u_cols.push_back(q);
    for (std::size_t q : mem) u_cols.push_back(code.n + q);
    BinaryMatrix h_u = select_columns(h, u_cols);

    CleaningReport report;
    report.branch = 2;
    for (const auto& rep : logical_basis(code).representatives) {
        BitVec row = rep.to_row();
        BitVec target(u_cols.size());
        {
            std::vector<std::size_t> sorted = u_cols;
            std::sort(sorted.begin(), sorted.end());
            for (std::size_t j = 0; j < sorted.size(); ++j)
                if (row.get(sorted[j])) target.set(j, true);
        }
        auto coeffs = solve_row_combination(h_u, target);
        if (!coeffs)
            throw internal_error("cleaning lemma: no stabilizer matches a logical on a "
                                 "correctable region");
        BitVec cleaned = row;
        for (std::size_t r = 0; r < h.rows(); ++r)
            if (coeffs->get(r)) cleaned ^= h.row(r);
        SymplecticVector out = SymplecticVector::from_row(cleaned);
        for (std::size_t q : mem)
            if (out.x.get(q) || out.z.get(q))
                throw internal_error("cleaning lemma: cleaned representative still touches U");
        report.witnesses.push_back(std::move(out));
    }
    return report;
}

}  // namespace qldpc
