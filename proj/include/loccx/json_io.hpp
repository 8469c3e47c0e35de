#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "loccx/ortho_graph.hpp"
#include "loccx/protocol.hpp"
#include "loccx/simulate.hpp"

namespace loccx {

// Insertion-ordered JSON keeps every serialization byte-stable.
using ordered_json = nlohmann::ordered_json;

namespace detail {

inline complex parse_amplitude(const ordered_json& j) {
    if (j.is_number()) return complex{j.get<double>(), 0.0};
    if (j.is_array() && (j.size() == 1 || j.size() == 2)) {
        double re = j.at(0).is_number() ? j.at(0).get<double>() : throw parse_error("amplitude entries must be numbers");
        double im = 0.0;
        if (j.size() == 2) {
            if (!j.at(1).is_number()) throw parse_error("amplitude entries must be numbers");
            im = j.at(1).get<double>();
        }
        return complex{re, im};
    }
    throw parse_error("amplitude must be a number or [re, im]");
}

inline ordered_json amplitude_json(const complex& a) {
    return ordered_json::array({a.real(), a.imag()});
}

// 1-based state indices in all external documents.
inline ordered_json external_indices(const std::vector<std::size_t>& v) {
    ordered_json arr = ordered_json::array();
    for (std::size_t i : v) arr.push_back(i + 1);
    return arr;
}

} // namespace detail

inline ordered_json state_set_to_json(const StateSet& s) {
    ordered_json j;
    j["partites"] = ordered_json::array();
    for (const Partite& p : s.partites())
        j["partites"].push_back({{"name", p.name}, {"dim", p.dim}});
    j["states"] = ordered_json::array();
    for (const ProductState& st : s.states()) {
        ordered_json locals = ordered_json::array();
        for (const LocalVector& v : st.locals) {
            ordered_json vec = ordered_json::array();
            for (const complex& a : v) vec.push_back(detail::amplitude_json(a));
            locals.push_back(vec);
        }
        j["states"].push_back({{"label", st.label}, {"locals", locals}});
    }
    const Tolerance& tol = s.tolerance();
    j["tolerance"] = {{"eps_orth", tol.orth}, {"eps_norm", tol.norm}, {"eps_prob", tol.prob}};
    return j;
}

inline StateSet state_set_from_json(const ordered_json& j) {
    if (!j.is_object()) throw parse_error("state set document must be an object");
    if (!j.contains("partites") || !j.at("partites").is_array())
        throw parse_error("missing 'partites' array");
    if (!j.contains("states") || !j.at("states").is_array())
        throw parse_error("missing 'states' array");

    std::vector<Partite> parts;
    for (const ordered_json& pj : j.at("partites")) {
        if (!pj.is_object() || !pj.contains("name") || !pj.contains("dim") ||
            !pj.at("name").is_string() || !pj.at("dim").is_number_unsigned())
            throw parse_error("partite entries need a 'name' string and a 'dim' count");
        parts.push_back(Partite{pj.at("name").get<std::string>(), pj.at("dim").get<std::size_t>()});
    }

    std::vector<ProductState> states;
    for (const ordered_json& sj : j.at("states")) {
        if (!sj.is_object() || !sj.contains("locals") || !sj.at("locals").is_array())
            throw parse_error("state entries need a 'locals' array");
        ProductState st;
        if (sj.contains("label")) {
            if (!sj.at("label").is_string()) throw parse_error("state label must be a string");
            st.label = sj.at("label").get<std::string>();
        }
        for (const ordered_json& vj : sj.at("locals")) {
            if (!vj.is_array()) throw parse_error("each local must be an array of amplitudes");
            LocalVector v;
            for (const ordered_json& aj : vj) v.push_back(detail::parse_amplitude(aj));
            st.locals.push_back(std::move(v));
        }
        states.push_back(std::move(st));
    }

    Tolerance tol;
    if (j.contains("tolerance")) {
        const ordered_json& tj = j.at("tolerance");
        if (!tj.is_object()) throw parse_error("'tolerance' must be an object");
        if (tj.contains("eps_orth")) tol.orth = tj.at("eps_orth").get<double>();
        if (tj.contains("eps_norm")) tol.norm = tj.at("eps_norm").get<double>();
        if (tj.contains("eps_prob")) tol.prob = tj.at("eps_prob").get<double>();
    }
    return StateSet(std::move(parts), std::move(states), tol);
}

inline StateSet state_set_from_string(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
    return state_set_from_json(j);
}

namespace detail {

inline ordered_json tree_to_json_rec(const ProtocolTree& t) {
    if (t.is_leaf()) {
        ordered_json j;
        j["candidates"] = external_indices(t.candidates);
        return j;
    }
    ordered_json j;
    j["measure"] = {{"partite", t.measure->partite},
                    {"anchors", external_indices(t.measure->anchors)}};
    ordered_json branches;
    branches["0"] = tree_to_json_rec(t.branches[0]);
    for (std::size_t k = 0; k < t.measure->anchors.size(); ++k)
        branches[std::to_string(t.measure->anchors[k] + 1)] = tree_to_json_rec(t.branches[k + 1]);
    j["branches"] = branches;
    return j;
}

inline ProtocolTree tree_from_json_rec(const StateSet& s, const ordered_json& j,
                                       std::vector<std::size_t> candidates) {
    if (!j.is_object()) throw parse_error("tree nodes must be objects");
    if (j.contains("candidates")) {
        if (j.contains("measure") || j.contains("branches"))
            throw parse_error("a node is either a leaf with 'candidates' or has 'measure' and 'branches'");
        std::vector<std::size_t> stated;
        for (const ordered_json& e : j.at("candidates")) {
            std::size_t v = e.get<std::size_t>();
            if (v == 0 || v > s.size()) throw parse_error("leaf candidate index out of range");
            stated.push_back(v - 1);
        }
        if (stated != candidates)
            throw validation_error("leaf candidates do not match the exclusion rule");
        return ProtocolTree{std::move(candidates), std::nullopt, {}};
    }
    if (!j.contains("measure") || !j.contains("branches"))
        throw parse_error("inner tree nodes need 'measure' and 'branches'");
    const ordered_json& mj = j.at("measure");
    Measurement m;
    m.partite = mj.at("partite").get<std::size_t>();
    for (const ordered_json& e : mj.at("anchors")) {
        std::size_t v = e.get<std::size_t>();
        if (v == 0 || v > s.size()) throw parse_error("anchor index out of range");
        m.anchors.push_back(v - 1);
    }
    const ordered_json& bj = j.at("branches");
    if (!bj.is_object() || bj.size() != m.anchors.size() + 1)
        throw parse_error("branches must hold the completion outcome and one entry per anchor");
    if (!bj.contains("0")) throw parse_error("branches must contain the completion outcome '0'");

    ProtocolTree t;
    t.candidates = candidates;
    t.measure = m;
    t.branches.push_back(tree_from_json_rec(s, bj.at("0"), apply_exclusion(s, candidates, m, 0)));
    for (std::size_t k = 0; k < m.anchors.size(); ++k) {
        std::string key = std::to_string(m.anchors[k] + 1);
        if (!bj.contains(key))
            throw parse_error("missing branch for anchor outcome " + key);
        t.branches.push_back(tree_from_json_rec(s, bj.at(key),
                                                apply_exclusion(s, candidates, m, k + 1)));
    }
    return t;
}

} // namespace detail

inline ordered_json tree_to_json(const ProtocolTree& t) {
    return detail::tree_to_json_rec(t);
}

// Rebuilds candidate sets from the exclusion rule (the root holds the whole
// set) and fully validates the result.
inline ProtocolTree tree_from_json(const StateSet& s, const ordered_json& j) {
    std::vector<std::size_t> all(s.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    ProtocolTree t = detail::tree_from_json_rec(s, j, std::move(all));
    validate_tree(s, t);
    return t;
}

// Branch indices of one path, printed as outcome labels: 0 for completion,
// otherwise the 1-based index of the anchor state.
inline std::vector<std::size_t> outcome_labels(const ProtocolTree& t,
                                               const std::vector<std::size_t>& branch_path) {
    std::vector<std::size_t> labels;
    const ProtocolTree* node = &t;
    for (std::size_t o : branch_path) {
        if (node->is_leaf() || o >= node->branches.size())
            throw validation_error("outcome path does not fit the tree");
        labels.push_back(o == 0 ? 0 : node->measure->anchors[o - 1] + 1);
        node = &node->branches[o];
    }
    return labels;
}

inline ordered_json leaves_to_json(const ProtocolTree& t, const std::vector<LeafOutcome>& leaves) {
    ordered_json arr = ordered_json::array();
    for (const LeafOutcome& leaf : leaves) {
        ordered_json j;
        j["probability"] = leaf.probability;
        j["outcomes"] = outcome_labels(t, leaf.outcomes);
        j["candidates"] = detail::external_indices(leaf.candidates);
        arr.push_back(j);
    }
    return arr;
}

inline ordered_json scan_report_to_json(const ScanReport& r) {
    ordered_json j;
    j["n"] = r.n;
    j["colors"] = r.colors;
    j["colorings_checked"] = r.colorings_checked;
    j["counterexamples"] = r.counterexamples;
    j["histogram"] = {{"triangle", r.triangle_witnesses}, {"path4", r.path4_witnesses}};
    if (!r.first_counterexample.empty())
        j["first_counterexample"] = r.first_counterexample;
    return j;
}

inline ordered_json witness_to_json(const PatternWitness& w) {
    ordered_json j;
    j["kind"] = (w.kind == PatternKind::triangle) ? "triangle" : "path4";
    j["color"] = w.color;
    j["vertices"] = detail::external_indices(w.vertices);
    return j;
}

inline ordered_json violation_to_json(const ProtocolTree& t, const GuaranteeViolation& v) {
    ordered_json j;
    j["true_state"] = v.true_state + 1;
    j["outcomes"] = outcome_labels(t, v.outcomes);
    j["leaf_candidates"] = detail::external_indices(v.leaf_candidates);
    j["reason"] = v.reason;
    return j;
}

} // namespace loccx
