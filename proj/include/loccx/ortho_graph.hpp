#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "loccx/state_set.hpp"

namespace loccx {

// Flat index of unordered pair (i, j), i < j, among n vertices.
inline std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) {
    if (i >= j || j >= n)
        throw validation_error("pair_index: need i < j < n");
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

inline std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

// Complete graph on the states of a set; every edge carries the sorted list
// of partites that certify orthogonality of that pair.
struct OrthoGraph {
    std::size_t n = 0;
    std::vector<std::string> vertex_labels;
    std::vector<std::string> partite_names;
    std::vector<std::vector<std::size_t>> edge_labels; // by pair_index

    const std::vector<std::size_t>& labels_of(std::size_t i, std::size_t j) const {
        return edge_labels.at(pair_index(n, std::min(i, j), std::max(i, j)));
    }
};

inline OrthoGraph build_ortho_graph(const StateSet& s) {
    OrthoGraph g;
    g.n = s.size();
    for (const ProductState& st : s.states()) g.vertex_labels.push_back(st.label);
    for (const Partite& p : s.partites()) g.partite_names.push_back(p.name);
    g.edge_labels.resize(pair_count(g.n));
    for (std::size_t i = 0; i < g.n; ++i) {
        for (std::size_t j = i + 1; j < g.n; ++j) {
            std::vector<std::size_t>& lab = g.edge_labels[pair_index(g.n, i, j)];
            for (std::size_t p = 0; p < s.partite_count(); ++p)
                if (s.orthogonal_in(i, j, p)) lab.push_back(p);
            if (lab.empty()) {
                std::ostringstream os;
                os << "no partite certifies orthogonality of pair (" << i + 1
                   << "," << j + 1 << ")";
                throw validation_error(os.str());
            }
        }
    }
    return g;
}

// Assignment of one color per edge of K_n.
struct EdgeColoring {
    std::size_t n = 0;
    std::size_t colors = 0;
    std::vector<std::size_t> color; // by pair_index

    std::size_t at(std::size_t i, std::size_t j) const {
        return color.at(pair_index(n, std::min(i, j), std::max(i, j)));
    }
};

// Every edge keeps only its lowest certifying partite.
inline EdgeColoring canonical_coloring(const OrthoGraph& g) {
    EdgeColoring c;
    c.n = g.n;
    c.colors = g.partite_names.size();
    c.color.reserve(g.edge_labels.size());
    for (const std::vector<std::size_t>& lab : g.edge_labels)
        c.color.push_back(lab.front());
    return c;
}

enum class PatternKind { triangle, path4 };

// Monochromatic pattern found in an edge coloring. For a triangle, vertices
// holds {i, j, k} with i < j < k. For path4, vertices holds (v1, v2, v3, v4)
// where the edges (v1,v2), (v1,v3), (v2,v4) share the color.
struct PatternWitness {
    PatternKind kind = PatternKind::triangle;
    std::size_t color = 0;
    std::vector<std::size_t> vertices;
};

inline std::optional<PatternWitness> find_mono_triangle(const EdgeColoring& c) {
    for (std::size_t i = 0; i < c.n; ++i)
        for (std::size_t j = i + 1; j < c.n; ++j)
            for (std::size_t k = j + 1; k < c.n; ++k) {
                std::size_t col = c.at(i, j);
                if (c.at(i, k) == col && c.at(j, k) == col)
                    return PatternWitness{PatternKind::triangle, col, {i, j, k}};
            }
    return std::nullopt;
}

// Triangle first, then the 3-edge path pattern; both searched in
// lexicographic vertex order so results are deterministic.
inline std::optional<PatternWitness> find_triangle_or_path4(const EdgeColoring& c) {
    if (auto t = find_mono_triangle(c)) return t;
    for (std::size_t v1 = 0; v1 < c.n; ++v1)
        for (std::size_t v2 = 0; v2 < c.n; ++v2) {
            if (v2 == v1) continue;
            std::size_t col = c.at(v1, v2);
            for (std::size_t v3 = 0; v3 < c.n; ++v3) {
                if (v3 == v1 || v3 == v2 || c.at(v1, v3) != col) continue;
                for (std::size_t v4 = 0; v4 < c.n; ++v4) {
                    if (v4 == v1 || v4 == v2 || v4 == v3 || c.at(v2, v4) != col)
                        continue;
                    return PatternWitness{PatternKind::path4, col, {v1, v2, v3, v4}};
                }
            }
        }
    return std::nullopt;
}

namespace detail {

// Bitmask adjacency scan, independent of the witness-producing searches.
// Used to cross-check every verifier decision.
inline bool scan_has_pattern(const EdgeColoring& c, bool allow_path4) {
    for (std::size_t col = 0; col < c.colors; ++col) {
        std::vector<std::uint64_t> adj(c.n, 0);
        for (std::size_t i = 0; i < c.n; ++i)
            for (std::size_t j = i + 1; j < c.n; ++j)
                if (c.at(i, j) == col) {
                    adj[i] |= std::uint64_t{1} << j;
                    adj[j] |= std::uint64_t{1} << i;
                }
        for (std::size_t i = 0; i < c.n; ++i)
            for (std::size_t j = i + 1; j < c.n; ++j) {
                if (!((adj[i] >> j) & 1)) continue;
                if (adj[i] & adj[j]) return true; // triangle
                if (!allow_path4) continue;
                std::uint64_t a = adj[i] & ~(std::uint64_t{1} << j);
                std::uint64_t b = adj[j] & ~(std::uint64_t{1} << i);
                if (a && b && !(a == b && std::popcount(a) == 1))
                    return true; // path4
            }
    }
    return false;
}

inline bool witness_consistent(const EdgeColoring& c, const PatternWitness& w) {
    const std::vector<std::size_t>& v = w.vertices;
    for (std::size_t x : v)
        if (x >= c.n) return false;
    if (w.kind == PatternKind::triangle) {
        if (v.size() != 3 || v[0] >= v[1] || v[1] >= v[2]) return false;
        return c.at(v[0], v[1]) == w.color && c.at(v[0], v[2]) == w.color &&
               c.at(v[1], v[2]) == w.color;
    }
    if (v.size() != 4) return false;
    for (std::size_t x = 0; x < 4; ++x)
        for (std::size_t y = x + 1; y < 4; ++y)
            if (v[x] == v[y]) return false;
    return c.at(v[0], v[1]) == w.color && c.at(v[0], v[2]) == w.color &&
           c.at(v[1], v[3]) == w.color;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Uniform in [0, 1) from the top 53 bits, identical across platforms.
inline double unit_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace detail

// Outcome of scanning edge colorings for monochromatic patterns.
struct ScanReport {
    std::uint64_t colorings_checked = 0;
    std::uint64_t counterexamples = 0; // colorings without the pattern
    std::uint64_t triangle_witnesses = 0;
    std::uint64_t path4_witnesses = 0;
    std::size_t n = 0;
    std::size_t colors = 0;
    std::vector<std::size_t> first_counterexample; // edge colors, empty if none
};

namespace detail {

enum class PatternCheck { triangle_only, triangle_or_path4 };

inline void scan_one(const EdgeColoring& c, PatternCheck check, ScanReport& rep) {
    std::optional<PatternWitness> w = (check == PatternCheck::triangle_only)
                                          ? find_mono_triangle(c)
                                          : find_triangle_or_path4(c);
    bool indep = scan_has_pattern(c, check == PatternCheck::triangle_or_path4);
    if (w.has_value() != indep || (w && !witness_consistent(c, *w)))
        throw error("pattern detectors disagree on a coloring");
    ++rep.colorings_checked;
    if (!w) {
        ++rep.counterexamples;
        if (rep.first_counterexample.empty()) rep.first_counterexample = c.color;
        return;
    }
    if (w->kind == PatternKind::triangle)
        ++rep.triangle_witnesses;
    else
        ++rep.path4_witnesses;
}

inline ScanReport scan_exhaustive(std::size_t colors, std::size_t n, PatternCheck check) {
    if (n < 3 || colors < 2)
        throw validation_error("coloring scan needs n >= 3 and >= 2 colors");
    std::size_t edges = pair_count(n);
    double total_log2 = static_cast<double>(edges) * std::log2(static_cast<double>(colors));
    if (total_log2 > 40.0)
        throw validation_error("exhaustive coloring scan too large; use sampling");
    EdgeColoring c{n, colors, std::vector<std::size_t>(edges, 0)};
    ScanReport rep;
    rep.n = n;
    rep.colors = colors;
    for (;;) {
        scan_one(c, check, rep);
        std::size_t e = 0;
        while (e < edges) {
            if (++c.color[e] < colors) break;
            c.color[e] = 0;
            ++e;
        }
        if (e == edges) break;
    }
    return rep;
}

inline ScanReport scan_sampled(std::size_t colors, std::size_t n, PatternCheck check,
                               std::uint64_t samples, std::uint64_t seed) {
    if (n < 3 || colors < 2)
        throw validation_error("coloring scan needs n >= 3 and >= 2 colors");
    std::size_t edges = pair_count(n);
    EdgeColoring c{n, colors, std::vector<std::size_t>(edges, 0)};
    ScanReport rep;
    rep.n = n;
    rep.colors = colors;
    for (std::uint64_t i = 0; i < samples; ++i) {
        std::mt19937_64 rng(detail::splitmix64(seed + i));
        for (std::size_t e = 0; e < edges; ++e)
            c.color[e] = static_cast<std::size_t>(rng() % colors);
        scan_one(c, check, rep);
    }
    return rep;
}

} // namespace detail

// Every 2-coloring of K_n (default n = 6) must contain a monochromatic
// triangle; counterexamples are counted, not thrown.
inline ScanReport verify_two_colorings_exhaustive(std::size_t n = 6) {
    return detail::scan_exhaustive(2, n, detail::PatternCheck::triangle_only);
}

inline ScanReport verify_two_colorings_sampled(std::uint64_t samples, std::uint64_t seed,
                                               std::size_t n = 6) {
    return detail::scan_sampled(2, n, detail::PatternCheck::triangle_only, samples, seed);
}

// Every 3-coloring of K_n (default n = 7) must contain a monochromatic
// triangle or the 3-edge path pattern.
inline ScanReport verify_three_colorings_exhaustive(std::size_t n = 7) {
    return detail::scan_exhaustive(3, n, detail::PatternCheck::triangle_or_path4);
}

inline ScanReport verify_three_colorings_sampled(std::uint64_t samples, std::uint64_t seed,
                                                 std::size_t n = 7) {
    return detail::scan_sampled(3, n, detail::PatternCheck::triangle_or_path4, samples, seed);
}

namespace detail {

struct CliqueSearch {
    const StateSet& s;
    std::size_t partite;
    const std::vector<std::size_t>& cand;
    std::vector<std::uint64_t> adj; // over positions in cand
    std::vector<std::size_t> best;
    std::vector<std::size_t> cur;

    CliqueSearch(const StateSet& s_, std::size_t p_, const std::vector<std::size_t>& c_)
        : s(s_), partite(p_), cand(c_), adj(c_.size(), 0) {
        for (std::size_t a = 0; a < cand.size(); ++a)
            for (std::size_t b = a + 1; b < cand.size(); ++b)
                if (s.orthogonal_in(cand[a], cand[b], partite)) {
                    adj[a] |= std::uint64_t{1} << b;
                    adj[b] |= std::uint64_t{1} << a;
                }
    }

    // Include-first DFS emits equal-size cliques in lexicographic order, so
    // the first maximum found is the lexicographically smallest one and
    // pruning ties is safe.
    void dfs(std::size_t pos, std::uint64_t compatible) {
        if (cur.size() + (cand.size() - pos) <= best.size()) return;
        if (pos == cand.size()) {
            if (cur.size() > best.size()) best = cur;
            return;
        }
        if ((compatible >> pos) & 1) {
            cur.push_back(pos);
            dfs(pos + 1, compatible & adj[pos]);
            cur.pop_back();
        }
        dfs(pos + 1, compatible);
    }

    std::vector<std::size_t> run() {
        if (cand.size() > 64)
            throw validation_error("clique search supports at most 64 states");
        dfs(0, ~std::uint64_t{0});
        std::vector<std::size_t> out;
        for (std::size_t pos : best) out.push_back(cand[pos]);
        return out;
    }
};

} // namespace detail

// Lexicographically smallest maximum clique of the orthogonality relation in
// one partite, restricted to `candidates` (state indices, strictly increasing).
inline std::vector<std::size_t> max_local_clique(const StateSet& s, std::size_t partite,
                                                 const std::vector<std::size_t>& candidates) {
    if (partite >= s.partite_count())
        throw validation_error("max_local_clique: partite out of range");
    return detail::CliqueSearch(s, partite, candidates).run();
}

inline std::vector<std::size_t> max_local_clique(const StateSet& s, std::size_t partite) {
    std::vector<std::size_t> all(s.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return max_local_clique(s, partite, all);
}

inline std::string export_dot(const OrthoGraph& g) {
    std::ostringstream os;
    os << "graph ortho {\n";
    for (std::size_t i = 0; i < g.n; ++i)
        os << "  s" << i + 1 << " [label=\"" << g.vertex_labels[i] << "\"];\n";
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = i + 1; j < g.n; ++j) {
            os << "  s" << i + 1 << " -- s" << j + 1 << " [label=\"";
            const std::vector<std::size_t>& lab = g.labels_of(i, j);
            for (std::size_t k = 0; k < lab.size(); ++k) {
                if (k) os << ",";
                os << g.partite_names.at(lab[k]);
            }
            os << "\"];\n";
        }
    os << "}\n";
    return os.str();
}

} // namespace loccx
