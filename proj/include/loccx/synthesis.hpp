#pragma once

#include <map>
#include <tuple>

#include "loccx/json_io.hpp"
#include "loccx/ortho_graph.hpp"
#include "loccx/simulate.hpp"

namespace loccx {

struct SearchLimits {
    std::size_t max_depth = 3;
    std::size_t max_anchors = 5;
};

namespace detail {

inline std::uint64_t index_mask(const std::vector<std::size_t>& v) {
    std::uint64_t m = 0;
    for (std::size_t i : v) m |= std::uint64_t{1} << i;
    return m;
}

// Depth-first search over measurement trees. Partites are tried in ascending
// order, anchor sets in lexicographic prefix order, so the first protocol
// found is deterministic. A partite is never measured twice along a path.
class ProtocolSearcher {
public:
    ProtocolSearcher(const StateSet& s, SynthesisGoal goal, std::size_t root_size,
                     SearchLimits limits)
        : s_(s), goal_(goal), root_size_(root_size), limits_(limits) {}

    std::optional<ProtocolTree> search(const std::vector<std::size_t>& c,
                                       std::uint64_t used, std::size_t depth_left) {
        if (goal_met(c)) return ProtocolTree{c, std::nullopt, {}};
        if (depth_left == 0) return std::nullopt;
        auto key = std::make_tuple(index_mask(c), used, depth_left);
        auto hit = memo_.find(key);
        if (hit != memo_.end()) return hit->second;

        std::optional<ProtocolTree> found;
        for (std::size_t p = 0; p < s_.partite_count() && !found; ++p) {
            if ((used >> p) & 1) continue;
            std::vector<std::size_t> anchors;
            found = extend_anchors(c, used, depth_left, p, anchors, 0);
        }
        memo_.emplace(key, found);
        return found;
    }

private:
    const StateSet& s_;
    SynthesisGoal goal_;
    std::size_t root_size_;
    SearchLimits limits_;
    std::map<std::tuple<std::uint64_t, std::uint64_t, std::size_t>,
             std::optional<ProtocolTree>> memo_;

    bool goal_met(const std::vector<std::size_t>& c) const {
        if (goal_.kind == SynthesisGoal::Kind::full_distinguish)
            return c.size() <= 1;
        return root_size_ - c.size() >= goal_.k;
    }

    std::optional<ProtocolTree> extend_anchors(const std::vector<std::size_t>& c,
                                               std::uint64_t used, std::size_t depth_left,
                                               std::size_t p,
                                               std::vector<std::size_t>& anchors,
                                               std::size_t start) {
        for (std::size_t t = start; t < c.size(); ++t) {
            std::size_t idx = c[t];
            bool compatible = true;
            for (std::size_t a : anchors)
                if (!s_.orthogonal_in(a, idx, p)) { compatible = false; break; }
            if (!compatible) continue;
            anchors.push_back(idx);
            if (auto r = try_measure(c, used, depth_left, p, anchors)) {
                anchors.pop_back();
                return r;
            }
            if (anchors.size() < limits_.max_anchors)
                if (auto r = extend_anchors(c, used, depth_left, p, anchors, t + 1)) {
                    anchors.pop_back();
                    return r;
                }
            anchors.pop_back();
        }
        return std::nullopt;
    }

    std::optional<ProtocolTree> try_measure(const std::vector<std::size_t>& c,
                                            std::uint64_t used, std::size_t depth_left,
                                            std::size_t p,
                                            const std::vector<std::size_t>& anchors) {
        Measurement m{p, anchors};
        std::vector<std::vector<std::size_t>> kids(anchors.size() + 1);
        bool progress = false;
        for (std::size_t o = 0; o < kids.size(); ++o) {
            kids[o] = apply_exclusion(s_, c, m, o);
            if (kids[o].size() < c.size()) progress = true;
        }
        if (!progress) return std::nullopt;
        ProtocolTree t{c, m, {}};
        for (std::size_t o = 0; o < kids.size(); ++o) {
            auto sub = search(kids[o], used | (std::uint64_t{1} << p), depth_left - 1);
            if (!sub) return std::nullopt;
            t.branches.push_back(std::move(*sub));
        }
        return t;
    }
};

inline void check_candidates(const StateSet& s, const std::vector<std::size_t>& candidates) {
    if (s.size() > 64)
        throw validation_error("protocol synthesis supports at most 64 states");
    if (s.partite_count() > 64)
        throw validation_error("protocol synthesis supports at most 64 partites");
    if (candidates.empty())
        throw validation_error("candidate list must not be empty");
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        if (candidates[k] >= s.size())
            throw validation_error("candidate index out of range");
        if (k > 0 && candidates[k] <= candidates[k - 1])
            throw validation_error("candidates must be strictly increasing");
    }
}

// Ordered path pattern v3 - v1 - v2 - v4 inside one partite's orthogonality
// relation, scanned over ascending partites and lexicographic vertex tuples.
inline std::optional<std::pair<std::size_t, std::array<std::size_t, 4>>>
find_path_pattern(const StateSet& s, const std::vector<std::size_t>& c) {
    std::size_t n = c.size();
    for (std::size_t p = 0; p < s.partite_count(); ++p) {
        std::vector<std::uint64_t> adj(n, 0);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b)
                if (s.orthogonal_in(c[a], c[b], p)) {
                    adj[a] |= std::uint64_t{1} << b;
                    adj[b] |= std::uint64_t{1} << a;
                }
        for (std::size_t v1 = 0; v1 < n; ++v1)
            for (std::size_t v2 = 0; v2 < n; ++v2) {
                if (v2 == v1 || !((adj[v1] >> v2) & 1)) continue;
                for (std::size_t v3 = 0; v3 < n; ++v3) {
                    if (v3 == v1 || v3 == v2 || !((adj[v1] >> v3) & 1)) continue;
                    for (std::size_t v4 = 0; v4 < n; ++v4) {
                        if (v4 == v1 || v4 == v2 || v4 == v3 || !((adj[v2] >> v4) & 1))
                            continue;
                        return std::make_pair(p, std::array<std::size_t, 4>{
                                                     c[v1], c[v2], c[v3], c[v4]});
                    }
                }
            }
    }
    return std::nullopt;
}

} // namespace detail

// Exhaustive search for a protocol meeting `goal` within the given limits.
// Deterministic; returns the first tree in the fixed enumeration order.
inline std::optional<ProtocolTree> bounded_protocol_search(const StateSet& s,
                                                           const std::vector<std::size_t>& candidates,
                                                           SynthesisGoal goal,
                                                           SearchLimits limits,
                                                           std::uint64_t used_partites = 0) {
    detail::check_candidates(s, candidates);
    if (goal.kind == SynthesisGoal::Kind::exclude_k && goal.k > candidates.size())
        throw validation_error("cannot exclude more states than there are candidates");
    detail::ProtocolSearcher searcher(s, goal, candidates.size(), limits);
    return searcher.search(candidates, used_partites, limits.max_depth);
}

// Builds a protocol that excludes at least k of the candidates on every
// reachable path. The root measurement anchors a maximum local clique (or the
// path pattern when no clique exceeds a pair); branches that still miss the
// target get short searched follow-ups.
inline ProtocolTree synthesize_exclusion(const StateSet& s,
                                         const std::vector<std::size_t>& candidates,
                                         std::size_t k) {
    detail::check_candidates(s, candidates);
    if (k > candidates.size())
        throw validation_error("cannot exclude more states than there are candidates");
    if (k == 0) return ProtocolTree{candidates, std::nullopt, {}};

    auto fail = [&]() -> ProtocolTree {
        auto full = bounded_protocol_search(s, candidates, SynthesisGoal::exclude(k),
                                            SearchLimits{3, 5});
        if (full) return std::move(*full);
        throw synthesis_error("exclusion synthesis failed; emitting the instance for scrutiny",
                              state_set_to_json(s.select(candidates)).dump(2));
    };

    if (candidates.size() < 2) return fail();

    std::size_t best_p = 0;
    std::vector<std::size_t> best_clique;
    for (std::size_t p = 0; p < s.partite_count(); ++p) {
        std::vector<std::size_t> cl = max_local_clique(s, p, candidates);
        if (cl.size() > best_clique.size()) {
            best_clique = std::move(cl);
            best_p = p;
        }
    }
    std::size_t m = best_clique.size();

    Measurement root;
    if (m >= 3 || k <= 2) {
        root.partite = best_p;
        root.anchors.assign(best_clique.begin(),
                            best_clique.begin() + std::min(m, k + 1));
    } else {
        auto w = detail::find_path_pattern(s, candidates);
        if (!w) return fail();
        root.partite = w->first;
        root.anchors = {std::min(w->second[0], w->second[1]),
                        std::max(w->second[0], w->second[1])};
    }
    validate_measurement(s, root);

    ProtocolTree tree{candidates, root, {}};
    for (std::size_t o = 0; o <= root.anchors.size(); ++o) {
        std::vector<std::size_t> child = apply_exclusion(s, candidates, root, o);
        std::size_t excluded = candidates.size() - child.size();
        if (excluded >= k) {
            tree.branches.push_back(ProtocolTree{std::move(child), std::nullopt, {}});
            continue;
        }
        auto closure = bounded_protocol_search(s, child,
                                               SynthesisGoal::exclude(k - excluded),
                                               SearchLimits{2, 3},
                                               std::uint64_t{1} << root.partite);
        if (!closure) return fail();
        tree.branches.push_back(std::move(*closure));
    }

    if (auto v = verify_exclusion_guarantee(s, tree, SynthesisGoal::exclude(k)))
        throw error("synthesized protocol failed its own guarantee: " + v->reason);
    return tree;
}

namespace detail {

inline std::vector<std::size_t> all_indices(const StateSet& s) {
    std::vector<std::size_t> v(s.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
    return v;
}

} // namespace detail

// Seven orthogonal product states always admit a protocol excluding four of
// them with one copy.
inline ProtocolTree synthesize_seven_bipartite(const StateSet& s) {
    if (s.partite_count() != 2)
        throw validation_error("bipartite synthesis needs exactly 2 partites");
    if (s.size() != 7)
        throw validation_error("seven-state synthesis needs exactly 7 states");
    return synthesize_exclusion(s, detail::all_indices(s), 4);
}

inline ProtocolTree synthesize_seven_multipartite(const StateSet& s) {
    if (s.partite_count() < 3)
        throw validation_error("multipartite synthesis needs at least 3 partites");
    if (s.size() != 7)
        throw validation_error("seven-state synthesis needs exactly 7 states");
    return synthesize_exclusion(s, detail::all_indices(s), 4);
}

inline ProtocolTree synthesize_seven(const StateSet& s) {
    return s.partite_count() == 2 ? synthesize_seven_bipartite(s)
                                  : synthesize_seven_multipartite(s);
}

// Exclusion target for a bipartite set with maximum local clique size m:
// m states, or m + 1 when at least 2m + 1 states are present.
inline std::size_t clique_exclusion_target(const StateSet& s) {
    if (s.partite_count() != 2)
        throw validation_error("clique exclusion is defined for 2 partites");
    std::size_t m = 0;
    for (std::size_t p = 0; p < 2; ++p)
        m = std::max(m, max_local_clique(s, p).size());
    if (s.size() < m + 1)
        throw validation_error("clique exclusion needs a state outside the maximum clique");
    return (s.size() >= 2 * m + 1) ? m + 1 : m;
}

inline ProtocolTree synthesize_clique_exclusion(const StateSet& s) {
    return synthesize_exclusion(s, detail::all_indices(s), clique_exclusion_target(s));
}

// Full identification of a small candidate set (at most 4 states on 2
// partites, at most 3 otherwise) on a single copy.
inline ProtocolTree small_set_distinguisher(const StateSet& s,
                                            const std::vector<std::size_t>& candidates) {
    detail::check_candidates(s, candidates);
    std::size_t threshold = s.partite_count() >= 3 ? 3 : 4;
    if (candidates.size() > threshold)
        throw validation_error("small-set distinguisher limited to " +
                               std::to_string(threshold) + " candidates here");
    if (candidates.size() <= 1) return ProtocolTree{candidates, std::nullopt, {}};
    auto r = bounded_protocol_search(s, candidates, SynthesisGoal::full(),
                                     SearchLimits{s.partite_count(), candidates.size()});
    if (!r)
        throw synthesis_error("no full identification protocol found within the search class",
                              state_set_to_json(s.select(candidates)).dump(2));
    if (auto v = verify_exclusion_guarantee(s, *r, SynthesisGoal::full()))
        throw error("synthesized protocol failed its own guarantee: " + v->reason);
    return *r;
}

} // namespace loccx
