#include <catch2/catch_amalgamated.hpp>

#include "loccx/fixtures.hpp"
#include "loccx/json_io.hpp"
#include "loccx/synthesis.hpp"

using namespace loccx;

namespace {

const char* kSmallTree = R"json({
  "measure": {"partite": 0, "anchors": [3, 4]},
  "branches": {
    "0": {"candidates": []},
    "3": {"candidates": [1, 2, 3]},
    "4": {"candidates": [1, 2, 4]}
  }
})json";

StateSet domino4() {
    return domino_states().select({0, 1, 2, 3});
}

} // namespace

TEST_CASE("state set round trips are byte identical") {
    for (const StateSet& s : {domino_states(), lemma2_states()}) {
        ordered_json j = state_set_to_json(s);
        StateSet back = state_set_from_json(j);
        CHECK(state_set_to_json(back).dump() == j.dump());
        CHECK(back.size() == s.size());
        CHECK(back.partite_count() == s.partite_count());
    }
}

TEST_CASE("complex amplitudes survive the round trip") {
    std::vector<Partite> parts{{"A", 2}, {"B", 2}};
    std::vector<ProductState> sts;
    sts.push_back({"u", {{complex(1, 0), complex(0, 1)}, {complex(1, 0), complex(1, 0)}}});
    sts.push_back({"v", {{complex(1, 0), complex(0, -1)}, {complex(1, 0), complex(1, 0)}}});
    StateSet s(parts, sts);

    ordered_json j = state_set_to_json(s);
    CHECK(j["states"][0]["locals"][0][1][1].get<double>() ==
          Catch::Approx(1.0 / std::sqrt(2.0)));
    StateSet back = state_set_from_json(j);
    CHECK(state_set_to_json(back).dump() == j.dump());
    CHECK(std::abs(back.local_inner(0, 1, 0)) < 1e-12);
}

TEST_CASE("amplitudes parse as numbers, [re], or [re, im]") {
    StateSet s = state_set_from_string(R"json({
      "partites": [{"name": "A", "dim": 2}, {"name": "B", "dim": 2}],
      "states": [
        {"label": "u", "locals": [[1, 0], [[1], [0]]]},
        {"label": "v", "locals": [[0, 1], [[0, 0], [1, 0]]]}
      ]
    })json");
    CHECK(s.state(0).locals[0][0] == complex(1, 0));
    CHECK(s.state(0).locals[1][0] == complex(1, 0));
    CHECK(s.state(0).locals[1][1] == complex(0, 0));
    CHECK(s.state(1).locals[1][1] == complex(1, 0));
    CHECK(std::abs(s.global_overlap(0, 1)) < 1e-12);
}

TEST_CASE("state set parse failures") {
    CHECK_THROWS_AS(state_set_from_string("not json"), parse_error);
    CHECK_THROWS_AS(state_set_from_string("[]"), parse_error);
    CHECK_THROWS_AS(state_set_from_string(R"({"states": []})"), parse_error);
    CHECK_THROWS_AS(state_set_from_string(R"({"partites": []})"), parse_error);
    CHECK_THROWS_AS(state_set_from_string(
                        R"({"partites": [{"name": "A"}], "states": []})"),
                    parse_error);
    CHECK_THROWS_AS(state_set_from_string(
                        R"({"partites": [{"name": "A", "dim": "2"}], "states": []})"),
                    parse_error);
    CHECK_THROWS_AS(state_set_from_string(R"json({
        "partites": [{"name": "A", "dim": 2}, {"name": "B", "dim": 2}],
        "states": [{"label": "u"}]
      })json"),
                    parse_error);
    CHECK_THROWS_AS(state_set_from_string(R"json({
        "partites": [{"name": "A", "dim": 2}, {"name": "B", "dim": 2}],
        "states": [{"locals": [["x", 0], [1, 0]]}]
      })json"),
                    parse_error);
    // structural numbers parse fine, then the constructor rejects the shape
    CHECK_THROWS_AS(state_set_from_string(R"json({
        "partites": [{"name": "A", "dim": 2}, {"name": "B", "dim": 2}],
        "states": [{"locals": [[1, 0, 0], [1, 0]]}]
      })json"),
                    validation_error);
}

TEST_CASE("missing labels are filled in") {
    StateSet s = state_set_from_string(R"json({
      "partites": [{"name": "A", "dim": 2}, {"name": "B", "dim": 2}],
      "states": [
        {"locals": [[1, 0], [1, 0]]},
        {"locals": [[0, 1], [0, 1]]}
      ]
    })json");
    CHECK(s.state(0).label == "phi1");
    CHECK(s.state(1).label == "phi2");
    ordered_json j = state_set_to_json(s);
    CHECK(j["states"][0]["label"] == "phi1");
}

TEST_CASE("tolerance block round trips and defaults") {
    StateSet s = state_set_from_string(R"json({
      "partites": [{"name": "A", "dim": 2}, {"name": "B", "dim": 2}],
      "states": [
        {"locals": [[1, 0], [1, 0]]},
        {"locals": [[0, 1], [0, 1]]}
      ],
      "tolerance": {"eps_orth": 1e-8, "eps_norm": 1e-7, "eps_prob": 1e-6}
    })json");
    CHECK(s.tolerance().orth == 1e-8);
    CHECK(s.tolerance().norm == 1e-7);
    CHECK(s.tolerance().prob == 1e-6);
    ordered_json j = state_set_to_json(s);
    CHECK(j["tolerance"]["eps_prob"] == 1e-6);

    StateSet d = state_set_from_string(R"json({
      "partites": [{"name": "A", "dim": 2}, {"name": "B", "dim": 2}],
      "states": [
        {"locals": [[1, 0], [1, 0]]},
        {"locals": [[0, 1], [0, 1]]}
      ]
    })json");
    CHECK(d.tolerance().orth == 1e-9);
    CHECK(state_set_to_json(d).contains("tolerance"));
}

TEST_CASE("protocol trees round trip through JSON") {
    StateSet sub = domino_states().select({0, 1, 2, 3, 4, 5, 6});
    ProtocolTree t = synthesize_seven_bipartite(sub);
    ordered_json j = tree_to_json(t);
    std::string dump = j.dump();
    CHECK(dump.find("\"branches\":{\"0\":") != std::string::npos);

    ProtocolTree back = tree_from_json(sub, j);
    CHECK(tree_to_json(back).dump() == dump);
    CHECK(back.candidates.size() == 7);
}

TEST_CASE("tree parsing rebuilds candidates and rejects bad documents") {
    StateSet s = domino4();
    ordered_json j = ordered_json::parse(kSmallTree);

    SECTION("valid document") {
        ProtocolTree t = tree_from_json(s, j);
        CHECK(t.candidates == std::vector<std::size_t>{0, 1, 2, 3});
        REQUIRE(t.branches.size() == 3);
        CHECK(t.branches[0].candidates.empty());
        CHECK(t.branches[1].candidates == std::vector<std::size_t>{0, 1, 2});
    }
    SECTION("tampered leaf candidates") {
        j["branches"]["3"]["candidates"] = {1, 2};
        CHECK_THROWS_AS(tree_from_json(s, j), validation_error);
    }
    SECTION("missing anchor branch") {
        j["branches"].erase("4");
        CHECK_THROWS_AS(tree_from_json(s, j), parse_error);
    }
    SECTION("wrong anchor branch key") {
        j["branches"]["5"] = j["branches"]["4"];
        j["branches"].erase("4");
        CHECK_THROWS_AS(tree_from_json(s, j), parse_error);
    }
    SECTION("missing completion branch") {
        j["branches"]["2"] = j["branches"]["0"];
        j["branches"].erase("0");
        CHECK_THROWS_AS(tree_from_json(s, j), parse_error);
    }
    SECTION("anchor index out of range") {
        j["measure"]["anchors"] = {3, 9};
        CHECK_THROWS_AS(tree_from_json(s, j), parse_error);
    }
    SECTION("leaf and measure on the same node") {
        j["candidates"] = {1, 2, 3, 4};
        CHECK_THROWS_AS(tree_from_json(s, j), parse_error);
    }
    SECTION("partite reused along a path is rejected after parsing") {
        j["branches"]["3"] = ordered_json::parse(R"json({
          "measure": {"partite": 0, "anchors": [1]},
          "branches": {
            "0": {"candidates": [3]},
            "1": {"candidates": [1, 2, 3]}
          }
        })json");
        CHECK_THROWS_AS(tree_from_json(s, j), validation_error);
    }
}

TEST_CASE("leaf reports use outcome labels and external indices") {
    StateSet s = domino4();
    ProtocolTree t = tree_from_json(s, ordered_json::parse(kSmallTree));

    CHECK(outcome_labels(t, {0}) == std::vector<std::size_t>{0});
    CHECK(outcome_labels(t, {1}) == std::vector<std::size_t>{3});
    CHECK(outcome_labels(t, {2}) == std::vector<std::size_t>{4});
    CHECK_THROWS_AS(outcome_labels(t, {3}), validation_error);
    CHECK_THROWS_AS(outcome_labels(t, {1, 0}), validation_error);

    ordered_json arr = leaves_to_json(t, simulate(s, t, 0));
    REQUIRE(arr.size() == 2);
    CHECK(arr[0]["probability"].get<double>() == Catch::Approx(0.5));
    CHECK(arr[0]["outcomes"] == ordered_json::array({3}));
    CHECK(arr[0]["candidates"] == ordered_json::array({1, 2, 3}));
    CHECK(arr[1]["outcomes"] == ordered_json::array({4}));
}

TEST_CASE("scan reports serialize with a stable shape") {
    ScanReport clean = verify_two_colorings_exhaustive(6);
    ordered_json j = scan_report_to_json(clean);
    CHECK(j["n"] == 6);
    CHECK(j["colors"] == 2);
    CHECK(j["colorings_checked"] == 32768);
    CHECK(j["counterexamples"] == 0);
    CHECK(j["histogram"]["triangle"].get<std::uint64_t>() == 32768);
    CHECK_FALSE(j.contains("first_counterexample"));

    ScanReport dirty = verify_two_colorings_exhaustive(5);
    ordered_json d = scan_report_to_json(dirty);
    CHECK(d["colorings_checked"] == 1024);
    CHECK(d["counterexamples"] == 12);
    CHECK(d.contains("first_counterexample"));
}

TEST_CASE("witness and violation serialization") {
    EdgeColoring c{6, 2, std::vector<std::size_t>(pair_count(6), 0)};
    auto w = find_mono_triangle(c);
    REQUIRE(w);
    ordered_json wj = witness_to_json(*w);
    CHECK(wj["kind"] == "triangle");
    CHECK(wj["vertices"] == ordered_json::array({1, 2, 3}));

    StateSet s = domino4();
    ProtocolTree t = tree_from_json(s, ordered_json::parse(kSmallTree));
    auto v = verify_exclusion_guarantee(s, t, SynthesisGoal::full());
    REQUIRE(v);
    ordered_json vj = violation_to_json(t, *v);
    CHECK(vj["true_state"].get<std::size_t>() >= 1);
    CHECK(vj["reason"] == "leaf does not identify a single state");
}
