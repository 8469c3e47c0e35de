#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <vector>

#include "loccx/state_set.hpp"

namespace loccx {

// One local measurement: in `partite`, project onto the locals of the anchor
// states (which must be pairwise orthonormal there) plus the completion
// outcome covering the rest of the space.
struct Measurement {
    std::size_t partite = 0;
    std::vector<std::size_t> anchors; // state indices, strictly increasing
};

inline void validate_measurement(const StateSet& s, const Measurement& m) {
    if (m.partite >= s.partite_count())
        throw validation_error("measurement partite out of range");
    if (m.anchors.empty())
        throw validation_error("measurement needs at least one anchor");
    for (std::size_t k = 0; k < m.anchors.size(); ++k) {
        if (m.anchors[k] >= s.size())
            throw validation_error("measurement anchor out of range");
        if (k > 0 && m.anchors[k] <= m.anchors[k - 1])
            throw validation_error("measurement anchors must be strictly increasing");
    }
    for (std::size_t a = 0; a < m.anchors.size(); ++a)
        for (std::size_t b = a + 1; b < m.anchors.size(); ++b)
            if (!s.orthogonal_in(m.anchors[a], m.anchors[b], m.partite)) {
                std::ostringstream os;
                os << "anchors (" << m.anchors[a] + 1 << "," << m.anchors[b] + 1
                   << ") are not orthogonal in partite "
                   << s.partites()[m.partite].name;
                throw validation_error(os.str());
            }
}

// Probabilities of the outcomes of `m` on true state `t`: index 0 is the
// completion outcome, index j >= 1 the j-th anchor.
inline std::vector<double> outcome_probabilities(const StateSet& s, std::size_t t,
                                                 const Measurement& m) {
    std::vector<double> probs(m.anchors.size() + 1, 0.0);
    double total = 0.0;
    for (std::size_t j = 0; j < m.anchors.size(); ++j) {
        double p = std::norm(s.local_inner(m.anchors[j], t, m.partite));
        probs[j + 1] = p;
        total += p;
    }
    if (total > 1.0 + s.tolerance().prob)
        throw validation_error("anchor outcome probabilities exceed 1");
    probs[0] = std::max(0.0, 1.0 - total);
    return probs;
}

inline double outcome_probability(const StateSet& s, std::size_t t,
                                  const Measurement& m, std::size_t outcome) {
    std::vector<double> probs = outcome_probabilities(s, t, m);
    if (outcome >= probs.size())
        throw validation_error("outcome index out of range");
    return probs[outcome];
}

// Candidates that survive outcome `outcome`: those whose probability of
// producing it is at least the probability tolerance.
inline std::vector<std::size_t> apply_exclusion(const StateSet& s,
                                                const std::vector<std::size_t>& candidates,
                                                const Measurement& m, std::size_t outcome) {
    std::vector<std::size_t> kept;
    for (std::size_t c : candidates)
        if (outcome_probability(s, c, m, outcome) >= s.tolerance().prob)
            kept.push_back(c);
    return kept;
}

// Adaptive measurement tree. A leaf stores only its candidate set; an inner
// node additionally stores a measurement and one child per outcome, with
// branches[0] the completion outcome and branches[j] the j-th anchor.
struct ProtocolTree {
    std::vector<std::size_t> candidates;
    std::optional<Measurement> measure;
    std::vector<ProtocolTree> branches;

    bool is_leaf() const { return !measure.has_value(); }
};

// What a synthesized protocol must guarantee on every reachable leaf:
// exclusion of at least k of the root candidates, or full identification.
struct SynthesisGoal {
    enum class Kind { exclude_k, full_distinguish };
    Kind kind = Kind::full_distinguish;
    std::size_t k = 0;

    static SynthesisGoal exclude(std::size_t k) {
        return SynthesisGoal{Kind::exclude_k, k};
    }
    static SynthesisGoal full() {
        return SynthesisGoal{Kind::full_distinguish, 0};
    }
};

namespace detail {

inline void validate_tree_rec(const StateSet& s, const ProtocolTree& t,
                              std::uint64_t used, std::size_t depth,
                              std::size_t max_depth) {
    for (std::size_t k = 0; k < t.candidates.size(); ++k) {
        if (t.candidates[k] >= s.size())
            throw validation_error("tree candidate out of range");
        if (k > 0 && t.candidates[k] <= t.candidates[k - 1])
            throw validation_error("tree candidates must be strictly increasing");
    }
    if (t.is_leaf()) {
        if (!t.branches.empty())
            throw validation_error("leaf must not have branches");
        return;
    }
    if (t.candidates.empty())
        throw validation_error("inner node with empty candidate set");
    if (depth + 1 > max_depth)
        throw validation_error("tree exceeds maximum depth");
    const Measurement& m = *t.measure;
    validate_measurement(s, m);
    if ((used >> m.partite) & 1)
        throw validation_error("partite '" + s.partites()[m.partite].name +
                               "' measured twice along a path");
    for (std::size_t a : m.anchors)
        if (!std::binary_search(t.candidates.begin(), t.candidates.end(), a))
            throw validation_error("anchor is not a candidate of its node");
    if (t.branches.size() != m.anchors.size() + 1)
        throw validation_error("node needs one branch per outcome");
    for (std::size_t o = 0; o < t.branches.size(); ++o) {
        std::vector<std::size_t> expect = apply_exclusion(s, t.candidates, m, o);
        if (t.branches[o].candidates != expect)
            throw validation_error("branch candidate set does not match the exclusion rule");
        validate_tree_rec(s, t.branches[o], used | (std::uint64_t{1} << m.partite),
                          depth + 1, max_depth);
    }
}

} // namespace detail

// Structural and semantic checks: anchor orthogonality, candidate bookkeeping
// against the exclusion rule, no partite measured twice along a path, and a
// depth limit.
inline void validate_tree(const StateSet& s, const ProtocolTree& t,
                          std::size_t max_depth = 8) {
    if (t.candidates.empty())
        throw validation_error("tree root needs at least one candidate");
    detail::validate_tree_rec(s, t, 0, 0, max_depth);
}

} // namespace loccx
