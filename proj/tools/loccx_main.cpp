#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "loccx/analysis.hpp"
#include "loccx/fixtures.hpp"
#include "loccx/generators.hpp"
#include "loccx/json_io.hpp"
#include "loccx/multicopy.hpp"
#include "loccx/synthesis.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNotFound = 2;
constexpr int kExitCounterexample = 3;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path);
    if (!in) throw loccx::parse_error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

loccx::StateSet load_set(const std::string& path) {
    return loccx::state_set_from_string(read_input(path));
}

void emit(const loccx::ordered_json& j) { std::cout << j.dump(2) << "\n"; }

// Accepts a state label or a 1-based index.
std::size_t resolve_state(const loccx::StateSet& s, const std::string& token) {
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s.state(i).label == token) return i;
    bool digits = !token.empty();
    for (char c : token)
        if (c < '0' || c > '9') digits = false;
    if (digits) {
        std::size_t v = std::stoull(token);
        if (v >= 1 && v <= s.size()) return v - 1;
    }
    throw loccx::validation_error("unknown state '" + token + "'");
}

std::vector<std::size_t> parse_dims(const std::string& text) {
    std::vector<std::size_t> dims;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (part.empty()) throw loccx::validation_error("empty entry in --dims");
        for (char c : part)
            if (c < '0' || c > '9')
                throw loccx::validation_error("--dims must be a comma list of counts");
        dims.push_back(std::stoull(part));
    }
    if (dims.empty()) throw loccx::validation_error("--dims must not be empty");
    return dims;
}

loccx::ordered_json graph_to_json(const loccx::OrthoGraph& g) {
    loccx::ordered_json j;
    j["n"] = g.n;
    j["vertices"] = g.vertex_labels;
    loccx::ordered_json edges = loccx::ordered_json::array();
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t k = i + 1; k < g.n; ++k) {
            loccx::ordered_json names = loccx::ordered_json::array();
            for (std::size_t p : g.labels_of(i, k)) names.push_back(g.partite_names[p]);
            edges.push_back({{"pair", {i + 1, k + 1}}, {"partites", names}});
        }
    j["edges"] = edges;
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"orthogonal product state toolkit: graphs, exclusion protocols, "
                 "multi-copy identification"};
    app.require_subcommand(1);

    std::string input = "-";
    std::string tree_path;
    std::string true_token;
    std::string goal = "";
    std::string family = "domino_like";
    std::string dims_text;
    std::string check_name;
    std::string fixture_name;
    std::size_t theorem = 0;
    std::size_t k_target = 0;
    std::size_t depth = 3;
    std::size_t anchors = 5;
    std::uint64_t seed = 1;
    std::uint64_t samples = 100000;
    std::size_t n_vertices = 0;
    std::size_t n_states = 0;
    bool dot = false;
    bool exhaustive = false;

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "structural summary of a state set");
    analyze_cmd->add_option("input", input, "state set JSON file, or - for stdin");

    CLI::App* graph_cmd = app.add_subcommand("graph", "orthogonality graph with partite edge labels");
    graph_cmd->add_option("input", input);
    graph_cmd->add_flag("--dot", dot, "emit Graphviz DOT instead of JSON");

    CLI::App* synth_cmd = app.add_subcommand("synthesize", "build a measurement protocol");
    synth_cmd->add_option("input", input);
    CLI::Option* theorem_opt =
        synth_cmd->add_option("--theorem", theorem, "1: bipartite seven-state, 3: clique exclusion, 4: multipartite seven-state")
            ->check(CLI::IsMember({1, 3, 4}));
    CLI::Option* goal_opt =
        synth_cmd->add_option("--goal", goal, "bounded search goal: exclude or full")
            ->check(CLI::IsMember({"exclude", "full"}));
    synth_cmd->add_option("--k", k_target, "exclusions required by --goal exclude");
    synth_cmd->add_option("--depth", depth, "search depth limit (default 3)");
    synth_cmd->add_option("--anchors", anchors, "anchor count limit (default 5)");
    theorem_opt->excludes(goal_opt);

    CLI::App* sim_cmd = app.add_subcommand("simulate", "leaf distributions of a protocol tree");
    sim_cmd->add_option("input", input);
    sim_cmd->add_option("--tree", tree_path, "protocol tree JSON file")->required();
    sim_cmd->add_option("--true", true_token, "restrict to one true state (label or 1-based index)");

    CLI::App* dist_cmd = app.add_subcommand("distinguish", "multi-copy identification run");
    dist_cmd->add_option("input", input);
    dist_cmd->add_option("--true", true_token, "true state (label or 1-based index)")->required();
    dist_cmd->add_option("--seed", seed, "RNG seed for outcome sampling");

    CLI::App* verify_cmd = app.add_subcommand("verify", "scan edge colorings for forced patterns");
    verify_cmd->add_option("check", check_name, "lemma3 (2 colors, triangle) or lemma4 (3 colors, triangle or path)")
        ->required()
        ->check(CLI::IsMember({"lemma3", "lemma4"}));
    CLI::Option* samples_opt = verify_cmd->add_option("--samples", samples, "sample count (default 100000)");
    verify_cmd->add_option("--seed", seed, "sampling seed");
    verify_cmd->add_flag("--exhaustive", exhaustive, "scan every coloring");
    verify_cmd->add_option("--n", n_vertices, "vertex count (default 6 for lemma3, 7 for lemma4)");

    CLI::App* fix_cmd = app.add_subcommand("fixtures", "emit a named state set");
    fix_cmd->add_option("name", fixture_name, "domino or lemma2")
        ->required()
        ->check(CLI::IsMember({"domino", "lemma2"}));

    CLI::App* gen_cmd = app.add_subcommand("gen-random", "generate a seeded random instance");
    gen_cmd->add_option("--family", family, "domino_like, clique_mix or p4_forced")->required();
    gen_cmd->add_option("--seed", seed, "generator seed");
    gen_cmd->add_option("--dims", dims_text, "comma list of local dimensions")->required();
    gen_cmd->add_option("--n-states", n_states, "number of states")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze_cmd->parsed()) {
            loccx::StateSet s = load_set(input);
            emit(loccx::analyze_report_to_json(s, loccx::analyze(s)));
            return kExitOk;
        }

        if (graph_cmd->parsed()) {
            loccx::StateSet s = load_set(input);
            loccx::OrthoGraph g = loccx::build_ortho_graph(s);
            if (dot)
                std::cout << loccx::export_dot(g);
            else
                emit(graph_to_json(g));
            return kExitOk;
        }

        if (synth_cmd->parsed()) {
            loccx::StateSet s = load_set(input);
            loccx::ProtocolTree tree;
            if (!goal.empty()) {
                loccx::SynthesisGoal g = (goal == "full")
                                             ? loccx::SynthesisGoal::full()
                                             : loccx::SynthesisGoal::exclude(k_target);
                if (goal == "exclude" && k_target == 0)
                    throw loccx::validation_error("--goal exclude needs --k");
                auto r = loccx::bounded_protocol_search(s, loccx::detail::all_indices(s), g,
                                                        loccx::SearchLimits{depth, anchors});
                if (!r) {
                    std::cerr << "not_found: no protocol within depth " << depth
                              << " and " << anchors << " anchors\n";
                    return kExitNotFound;
                }
                tree = std::move(*r);
            } else if (theorem == 3) {
                tree = loccx::synthesize_clique_exclusion(s);
            } else if (theorem == 1) {
                tree = loccx::synthesize_seven_bipartite(s);
            } else if (theorem == 4) {
                tree = loccx::synthesize_seven_multipartite(s);
            } else if (s.size() == 7) {
                tree = loccx::synthesize_seven(s);
            } else if (s.partite_count() == 2) {
                tree = loccx::synthesize_clique_exclusion(s);
            } else {
                throw loccx::validation_error(
                    "pick --theorem or --goal for this input shape");
            }
            emit(loccx::tree_to_json(tree));
            return kExitOk;
        }

        if (sim_cmd->parsed()) {
            loccx::StateSet s = load_set(input);
            loccx::ordered_json tj = loccx::ordered_json::parse(read_input(tree_path));
            loccx::ProtocolTree tree = loccx::tree_from_json(s, tj);
            std::vector<std::size_t> trues;
            if (!true_token.empty())
                trues.push_back(resolve_state(s, true_token));
            else
                trues = loccx::detail::all_indices(s);
            loccx::ordered_json out = loccx::ordered_json::array();
            for (std::size_t t : trues) {
                loccx::ordered_json entry;
                entry["true_state"] = t + 1;
                entry["label"] = s.state(t).label;
                entry["leaves"] = loccx::leaves_to_json(tree, loccx::simulate(s, tree, t));
                out.push_back(entry);
            }
            emit(out);
            return kExitOk;
        }

        if (dist_cmd->parsed()) {
            loccx::StateSet s = load_set(input);
            std::size_t t = resolve_state(s, true_token);
            loccx::DistinguishReport rep = loccx::distinguish_multicopy(s, t, seed);
            emit(loccx::distinguish_report_to_json(s, rep));
            return kExitOk;
        }

        if (verify_cmd->parsed()) {
            loccx::ScanReport rep;
            if (check_name == "lemma3") {
                std::size_t n = n_vertices ? n_vertices : 6;
                rep = (*samples_opt && !exhaustive)
                          ? loccx::verify_two_colorings_sampled(samples, seed, n)
                          : loccx::verify_two_colorings_exhaustive(n);
            } else {
                std::size_t n = n_vertices ? n_vertices : 7;
                rep = exhaustive ? loccx::verify_three_colorings_exhaustive(n)
                                 : loccx::verify_three_colorings_sampled(samples, seed, n);
            }
            emit(loccx::scan_report_to_json(rep));
            return rep.counterexamples ? kExitCounterexample : kExitOk;
        }

        if (fix_cmd->parsed()) {
            loccx::StateSet s = (fixture_name == "domino") ? loccx::domino_states()
                                                           : loccx::lemma2_states();
            emit(loccx::state_set_to_json(s));
            return kExitOk;
        }

        if (gen_cmd->parsed()) {
            loccx::GeneratorParams gp;
            gp.family = loccx::family_from_string(family);
            gp.dims = parse_dims(dims_text);
            gp.n_states = n_states;
            gp.seed = seed;
            emit(loccx::state_set_to_json(loccx::generate(gp)));
            return kExitOk;
        }
    } catch (const loccx::synthesis_error& e) {
        std::cerr << "synthesis failed: " << e.what() << "\n";
        if (!e.instance_json().empty())
            std::cerr << e.instance_json() << "\n";
        return kExitNotFound;
    } catch (const loccx::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
