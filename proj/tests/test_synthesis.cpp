#include <catch2/catch_amalgamated.hpp>

#include "loccx/fixtures.hpp"
#include "loccx/generators.hpp"
#include "loccx/json_io.hpp"
#include "loccx/synthesis.hpp"

using namespace loccx;

namespace {

std::set<std::size_t> measured_partites(const ProtocolTree& t) {
    std::set<std::size_t> out;
    if (t.is_leaf()) return out;
    out.insert(t.measure->partite);
    for (const ProtocolTree& b : t.branches)
        for (std::size_t p : measured_partites(b)) out.insert(p);
    return out;
}

std::size_t tree_depth(const ProtocolTree& t) {
    if (t.is_leaf()) return 0;
    std::size_t d = 0;
    for (const ProtocolTree& b : t.branches) d = std::max(d, tree_depth(b));
    return d + 1;
}

} // namespace

TEST_CASE("two orthogonal states split with one measurement") {
    StateSet sub = domino_states().select({0, 1});
    auto t = bounded_protocol_search(sub, {0, 1}, SynthesisGoal::full(),
                                     SearchLimits{1, 2});
    REQUIRE(t);
    CHECK(t->measure->partite == 1);
    CHECK(t->measure->anchors == std::vector<std::size_t>{0});
    CHECK_FALSE(verify_exclusion_guarantee(sub, *t, SynthesisGoal::full()));
}

TEST_CASE("four tiling states separate fully on one copy") {
    StateSet s = domino_states();
    ProtocolTree t = small_set_distinguisher(s, {0, 1, 2, 3});
    CHECK(t.measure->partite == 0);
    CHECK(t.measure->anchors == std::vector<std::size_t>{2});
    CHECK(tree_depth(t) == 2);
    CHECK_FALSE(verify_exclusion_guarantee(s, t, SynthesisGoal::full()));
}

TEST_CASE("the four-state multipartite set splits only in the right order") {
    StateSet s = lemma2_states();

    // a first measurement in A dooms the rest: states 3 and 4 share their B
    // and C locals, so once A is spent nothing separates them
    auto rest = bounded_protocol_search(s, {1, 2, 3}, SynthesisGoal::full(),
                                        SearchLimits{2, 4}, std::uint64_t{1} << 0);
    CHECK_FALSE(rest.has_value());

    // measuring B or C first leaves A for the final split, and a verified
    // one-copy identification protocol exists
    auto t = bounded_protocol_search(s, {0, 1, 2, 3}, SynthesisGoal::full(),
                                     SearchLimits{3, 4});
    REQUIRE(t.has_value());
    CHECK(t->measure->partite != 0);
    CHECK_FALSE(verify_exclusion_guarantee(s, *t, SynthesisGoal::full()));
}

TEST_CASE("every seven-state subset of the tiling set excludes four") {
    StateSet s = domino_states();
    for (std::size_t i = 0; i < 9; ++i) {
        for (std::size_t j = i + 1; j < 9; ++j) {
            std::vector<std::size_t> c;
            for (std::size_t v = 0; v < 9; ++v)
                if (v != i && v != j) c.push_back(v);
            ProtocolTree t = synthesize_exclusion(s, c, 4);
            CHECK_FALSE(verify_exclusion_guarantee(s, t, SynthesisGoal::exclude(4)));
            ProtocolTree again = synthesize_exclusion(s, c, 4);
            CHECK(tree_to_json(t).dump() == tree_to_json(again).dump());
        }
    }
}

TEST_CASE("seven-state helpers check their preconditions") {
    StateSet s = domino_states();
    CHECK_THROWS_AS(synthesize_seven_bipartite(s), validation_error);
    CHECK_THROWS_AS(synthesize_seven_bipartite(lemma2_states()), validation_error);
    CHECK_THROWS_AS(synthesize_seven_multipartite(lemma2_states()), validation_error);

    StateSet sub = s.select({0, 1, 2, 3, 4, 5, 6});
    ProtocolTree t = synthesize_seven_bipartite(sub);
    CHECK(t.measure->partite == 0);
    CHECK(t.measure->anchors == std::vector<std::size_t>{2, 3, 4});
    CHECK(tree_to_json(synthesize_seven(sub)).dump() == tree_to_json(t).dump());
    CHECK_FALSE(verify_exclusion_guarantee(sub, t, SynthesisGoal::exclude(4)));
}

TEST_CASE("multipartite seven-state sets route through the same exclusion") {
    GeneratorParams gp;
    gp.family = Family::clique_mix;
    gp.dims = {4, 3, 2};
    gp.n_states = 7;
    gp.seed = 3;
    StateSet s = generate(gp);
    ProtocolTree t = synthesize_seven(s);
    CHECK_FALSE(verify_exclusion_guarantee(s, t, SynthesisGoal::exclude(4)));
}

TEST_CASE("clique exclusion targets") {
    StateSet s = domino_states();
    CHECK(clique_exclusion_target(s) == 4);
    ProtocolTree t = synthesize_clique_exclusion(s);
    CHECK_FALSE(verify_exclusion_guarantee(s, t, SynthesisGoal::exclude(4)));

    StateSet five = s.select({0, 1, 2, 3, 4});
    CHECK(clique_exclusion_target(five) == 3);
    ProtocolTree t5 = synthesize_clique_exclusion(five);
    CHECK_FALSE(verify_exclusion_guarantee(five, t5, SynthesisGoal::exclude(3)));

    // a set that is nothing but one maximal clique leaves no state to exclude
    CHECK_THROWS_AS(clique_exclusion_target(s.select({2, 3, 4})), validation_error);
    CHECK_THROWS_AS(clique_exclusion_target(s.select({0, 4, 8})), validation_error);
    CHECK_THROWS_AS(clique_exclusion_target(lemma2_states()), validation_error);
}

TEST_CASE("clique plus one extra state is enough") {
    StateSet sub = domino_states().select({2, 3, 4, 8});
    CHECK(clique_exclusion_target(sub) == 3);
    ProtocolTree t = synthesize_clique_exclusion(sub);
    CHECK_FALSE(verify_exclusion_guarantee(sub, t, SynthesisGoal::exclude(3)));
    for (std::size_t truth : {0, 1, 2, 3})
        for (const LeafOutcome& leaf : simulate(sub, t, truth))
            CHECK(leaf.candidates.size() == 1);
}

TEST_CASE("pair-clique sets route through the path pattern") {
    GeneratorParams gp;
    gp.family = Family::p4_forced;
    gp.dims = {3, 3, 3};
    gp.n_states = 7;
    gp.seed = 1;
    StateSet s = generate(gp);

    for (std::size_t p = 0; p < s.partite_count(); ++p)
        CHECK(max_local_clique(s, p).size() <= 2);
    std::vector<std::size_t> all{0, 1, 2, 3, 4, 5, 6};
    REQUIRE(detail::find_path_pattern(s, all));

    ProtocolTree t = synthesize_seven(s);
    CHECK(t.measure->anchors.size() == 2);
    CHECK(measured_partites(t).size() >= 2);
    CHECK_FALSE(verify_exclusion_guarantee(s, t, SynthesisGoal::exclude(4)));
    CHECK(tree_to_json(synthesize_seven(s)).dump() == tree_to_json(t).dump());
}

TEST_CASE("direct bounded search also reaches the exclusion goal") {
    GeneratorParams gp;
    gp.family = Family::p4_forced;
    gp.dims = {3, 3, 3};
    gp.n_states = 7;
    gp.seed = 2;
    StateSet s = generate(gp);
    auto t = bounded_protocol_search(s, {0, 1, 2, 3, 4, 5, 6},
                                     SynthesisGoal::exclude(4), SearchLimits{3, 5});
    REQUIRE(t);
    CHECK_FALSE(verify_exclusion_guarantee(s, *t, SynthesisGoal::exclude(4)));
}

TEST_CASE("small-set distinguisher guards its limits") {
    StateSet s = domino_states();
    CHECK_THROWS_AS(small_set_distinguisher(s, {0, 1, 2, 3, 4}), validation_error);
    CHECK_THROWS_AS(small_set_distinguisher(lemma2_states(), {0, 1, 2, 3}),
                    validation_error);

    ProtocolTree one = small_set_distinguisher(s, {5});
    CHECK(one.is_leaf());
    CHECK(one.candidates == std::vector<std::size_t>{5});

    ProtocolTree tri = small_set_distinguisher(lemma2_states(), {0, 1, 2});
    CHECK_FALSE(verify_exclusion_guarantee(lemma2_states(), tri, SynthesisGoal::full()));
}

TEST_CASE("candidate lists are checked") {
    StateSet s = domino_states();
    CHECK_THROWS_AS(synthesize_exclusion(s, {}, 1), validation_error);
    CHECK_THROWS_AS(synthesize_exclusion(s, {0, 1}, 3), validation_error);
    CHECK_THROWS_AS(bounded_protocol_search(s, {1, 0}, SynthesisGoal::full(),
                                            SearchLimits{}),
                    validation_error);
    CHECK_THROWS_AS(bounded_protocol_search(s, {0, 99}, SynthesisGoal::full(),
                                            SearchLimits{}),
                    validation_error);
}

TEST_CASE("synthesis failures carry the offending instance") {
    StateSet s = domino_states();
    try {
        synthesize_exclusion(s, {0, 1}, 2);
        FAIL("expected synthesis_error");
    } catch (const synthesis_error& e) {
        CHECK(std::string(e.what()).find("exclusion synthesis failed") !=
              std::string::npos);
        StateSet carried = state_set_from_string(e.instance_json());
        CHECK(carried.size() == 2);
        CHECK(carried.state(0).label == "phi1");
        CHECK(carried.state(1).label == "phi2");
    }
}
