#pragma once

#include <string>
#include <vector>

#include "loccx/protocol.hpp"

namespace loccx {

// One root-to-leaf run of a protocol under a fixed true state.
struct LeafOutcome {
    double probability = 0.0;
    std::vector<std::size_t> outcomes; // branch index per measurement
    std::vector<std::size_t> candidates;
};

namespace detail {

inline void simulate_rec(const StateSet& s, const ProtocolTree& t, std::size_t true_idx,
                         double prob, std::vector<std::size_t>& path,
                         std::vector<LeafOutcome>& out) {
    if (t.is_leaf()) {
        out.push_back(LeafOutcome{prob, path, t.candidates});
        return;
    }
    std::vector<double> probs = outcome_probabilities(s, true_idx, *t.measure);
    for (std::size_t o = 0; o < probs.size(); ++o) {
        double next = prob * probs[o];
        if (next <= s.tolerance().prob) continue;
        path.push_back(o);
        simulate_rec(s, t.branches[o], true_idx, next, path, out);
        path.pop_back();
    }
}

} // namespace detail

// All leaves reachable with probability above the tolerance when the true
// state is `true_idx`, with their path probabilities.
inline std::vector<LeafOutcome> simulate(const StateSet& s, const ProtocolTree& t,
                                         std::size_t true_idx) {
    validate_tree(s, t);
    if (!std::binary_search(t.candidates.begin(), t.candidates.end(), true_idx))
        throw validation_error("true state is not a root candidate");
    std::vector<LeafOutcome> out;
    std::vector<std::size_t> path;
    detail::simulate_rec(s, t, true_idx, 1.0, path, out);
    return out;
}

struct GuaranteeViolation {
    std::size_t true_state = 0;
    std::vector<std::size_t> outcomes;
    std::vector<std::size_t> leaf_candidates;
    std::string reason;
};

// Checks, for every possible true state, that each reachable leaf still
// contains it (soundness) and that the goal is met there: at least k of the
// root candidates excluded, or a single candidate left.
inline std::optional<GuaranteeViolation> verify_exclusion_guarantee(const StateSet& s,
                                                                    const ProtocolTree& t,
                                                                    SynthesisGoal goal) {
    validate_tree(s, t);
    std::size_t root_size = t.candidates.size();
    for (std::size_t true_idx : t.candidates) {
        std::vector<LeafOutcome> leaves = simulate(s, t, true_idx);
        for (const LeafOutcome& leaf : leaves) {
            bool contains = std::binary_search(leaf.candidates.begin(),
                                               leaf.candidates.end(), true_idx);
            if (!contains)
                return GuaranteeViolation{true_idx, leaf.outcomes, leaf.candidates,
                                          "true state excluded on a reachable path"};
            if (goal.kind == SynthesisGoal::Kind::exclude_k) {
                if (root_size - leaf.candidates.size() < goal.k)
                    return GuaranteeViolation{true_idx, leaf.outcomes, leaf.candidates,
                                              "leaf excludes fewer than k candidates"};
            } else if (leaf.candidates.size() != 1) {
                return GuaranteeViolation{true_idx, leaf.outcomes, leaf.candidates,
                                          "leaf does not identify a single state"};
            }
        }
    }
    return std::nullopt;
}

// Copies sufficient to identify one of n states: ceil(n/4), with one extra
// copy for 3 or more partites when n is a multiple of 4. Zero or one state
// needs no measurement at all.
inline std::size_t copy_bound(std::size_t n, std::size_t parts) {
    if (n <= 1) return 0;
    std::size_t q = (n + 3) / 4;
    if (parts >= 3 && n % 4 == 0) return q + 1;
    return q;
}

} // namespace loccx
