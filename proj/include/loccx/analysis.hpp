#pragma once

#include "loccx/synthesis.hpp"

namespace loccx {

// Structural summary of a state set: local clique structure, the pattern
// witness of the canonical coloring (for 6 or 7 states), and which protocol
// route applies.
struct AnalyzeReport {
    std::size_t n = 0;
    std::size_t partites = 0;
    std::vector<std::vector<std::size_t>> cliques; // one per partite
    std::size_t max_clique = 0;
    std::size_t max_clique_partite = 0;
    std::optional<PatternWitness> witness;
    std::string route;
};

inline AnalyzeReport analyze(const StateSet& s) {
    AnalyzeReport r;
    r.n = s.size();
    r.partites = s.partite_count();
    for (std::size_t p = 0; p < r.partites; ++p) {
        r.cliques.push_back(max_local_clique(s, p));
        if (r.cliques.back().size() > r.max_clique) {
            r.max_clique = r.cliques.back().size();
            r.max_clique_partite = p;
        }
    }
    if (r.n == 6 || r.n == 7) {
        EdgeColoring col = canonical_coloring(build_ortho_graph(s));
        r.witness = (r.partites == 2) ? find_mono_triangle(col)
                                      : find_triangle_or_path4(col);
    }

    std::size_t threshold = r.partites >= 3 ? 3 : 4;
    if (r.n == 7) {
        if (r.max_clique >= 5) r.route = "clique-5";
        else if (r.max_clique == 4) r.route = "clique-4";
        else if (r.max_clique == 3) r.route = "clique-3";
        else {
            std::vector<std::size_t> all = detail::all_indices(s);
            r.route = detail::find_path_pattern(s, all) ? "path-pattern" : "search";
        }
    } else if (r.n <= threshold) {
        r.route = "small-set";
    } else {
        r.route = "multi-copy";
    }
    return r;
}

inline ordered_json analyze_report_to_json(const StateSet& s, const AnalyzeReport& r) {
    ordered_json j;
    j["states"] = r.n;
    j["partites"] = r.partites;
    ordered_json cliques = ordered_json::array();
    for (std::size_t p = 0; p < r.cliques.size(); ++p) {
        cliques.push_back({{"partite", s.partites()[p].name},
                           {"size", r.cliques[p].size()},
                           {"members", detail::external_indices(r.cliques[p])}});
    }
    j["cliques"] = cliques;
    j["max_clique"] = {{"partite", s.partites()[r.max_clique_partite].name},
                       {"size", r.max_clique}};
    j["witness"] = r.witness ? witness_to_json(*r.witness) : ordered_json(nullptr);
    j["route"] = r.route;
    return j;
}

} // namespace loccx
