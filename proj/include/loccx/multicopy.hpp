#pragma once

#include <random>

#include "loccx/synthesis.hpp"

namespace loccx {

// One consumed copy: the protocol run on it, the sampled outcome path, and
// the candidate set before and after applying its exclusions.
struct TraceStep {
    std::size_t copy = 0;
    ProtocolTree tree;
    std::vector<std::size_t> outcomes; // branch index per measurement
    std::vector<std::size_t> before;
    std::vector<std::size_t> after;
};

struct DistinguishReport {
    std::size_t true_state = 0;
    std::uint64_t seed = 0;
    std::size_t copies_used = 0;
    std::size_t bound = 0;
    bool success = false;
    bool within_bound = false;
    std::vector<TraceStep> trace;
    std::vector<std::size_t> final_candidates;
};

namespace detail {

inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
walk_tree(const StateSet& s, const ProtocolTree& t, std::size_t true_idx,
          std::mt19937_64& rng) {
    std::vector<std::size_t> path;
    const ProtocolTree* node = &t;
    while (!node->is_leaf()) {
        std::vector<double> probs = outcome_probabilities(s, true_idx, *node->measure);
        double u = unit_double(rng);
        std::size_t pick = probs.size();
        std::size_t fallback = 0;
        double acc = 0.0;
        for (std::size_t o = 0; o < probs.size(); ++o) {
            if (probs[o] > s.tolerance().prob) fallback = o;
            acc += probs[o];
            if (u < acc && pick == probs.size()) pick = o;
        }
        if (pick == probs.size()) pick = fallback;
        path.push_back(pick);
        node = &node->branches[pick];
    }
    return {path, node->candidates};
}

inline std::vector<std::size_t> subtract_sorted(const std::vector<std::size_t>& a,
                                                const std::vector<std::size_t>& b) {
    std::vector<std::size_t> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

} // namespace detail

// Identifies the true state using one copy per round: seven-state exclusion
// rounds (padding the candidates with already-excluded states when fewer than
// seven remain) shrink the candidate set to the small-set threshold, then one
// final copy identifies the survivor. Outcomes are sampled from the Born
// probabilities with the given seed.
inline DistinguishReport distinguish_multicopy(const StateSet& s, std::size_t true_idx,
                                               std::uint64_t seed) {
    if (true_idx >= s.size())
        throw validation_error("true state index out of range");
    std::size_t threshold = s.partite_count() >= 3 ? 3 : 4;

    DistinguishReport rep;
    rep.true_state = true_idx;
    rep.seed = seed;
    rep.bound = copy_bound(s.size(), s.partite_count());

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> all = detail::all_indices(s);
    std::vector<std::size_t> c = all;

    while (c.size() > threshold) {
        std::vector<std::size_t> base;
        ProtocolTree tree;
        if (c.size() >= 7) {
            base.assign(c.begin(), c.begin() + 7);
            tree = synthesize_exclusion(s, base, 4);
        } else {
            std::vector<std::size_t> pool = detail::subtract_sorted(all, c);
            std::size_t need = 7 - c.size();
            if (pool.size() >= need) {
                base = c;
                base.insert(base.end(), pool.begin(), pool.begin() + need);
                std::sort(base.begin(), base.end());
                tree = synthesize_exclusion(s, base, 4);
            } else {
                base = c;
                tree = synthesize_exclusion(s, base, c.size() - threshold);
            }
        }
        auto [path, leaf] = detail::walk_tree(s, tree, true_idx, rng);
        std::vector<std::size_t> removed = detail::subtract_sorted(base, leaf);
        std::vector<std::size_t> next = detail::subtract_sorted(c, removed);
        if (next.size() >= c.size())
            throw error("multi-copy round made no progress");
        std::size_t copy = ++rep.copies_used;
        rep.trace.push_back(TraceStep{copy, std::move(tree), path, c, next});
        c = std::move(next);
    }

    if (c.size() > 1) {
        ProtocolTree tree = small_set_distinguisher(s, c);
        auto [path, leaf] = detail::walk_tree(s, tree, true_idx, rng);
        std::size_t copy = ++rep.copies_used;
        rep.trace.push_back(TraceStep{copy, std::move(tree), path, c, leaf});
        c = leaf;
    }

    rep.final_candidates = c;
    rep.success = (c.size() == 1 && c[0] == true_idx);
    rep.within_bound = rep.copies_used <= rep.bound;
    return rep;
}

inline ordered_json distinguish_report_to_json(const StateSet& s, const DistinguishReport& r) {
    ordered_json j;
    j["true_state"] = r.true_state + 1;
    j["label"] = s.state(r.true_state).label;
    j["seed"] = r.seed;
    j["copies_used"] = r.copies_used;
    j["bound"] = r.bound;
    j["within_bound"] = r.within_bound;
    j["success"] = r.success;
    j["final_candidates"] = detail::external_indices(r.final_candidates);
    ordered_json steps = ordered_json::array();
    for (const TraceStep& st : r.trace) {
        ordered_json sj;
        sj["copy"] = st.copy;
        sj["before"] = detail::external_indices(st.before);
        sj["outcomes"] = outcome_labels(st.tree, st.outcomes);
        sj["after"] = detail::external_indices(st.after);
        sj["tree"] = tree_to_json(st.tree);
        steps.push_back(sj);
    }
    j["trace"] = steps;
    return j;
}

} // namespace loccx
