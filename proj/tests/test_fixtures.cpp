#include <catch2/catch_amalgamated.hpp>

#include "loccx/fixtures.hpp"

using namespace loccx;

TEST_CASE("domino fixture shape") {
    StateSet s = domino_states();
    CHECK(s.size() == 9);
    CHECK(s.partite_count() == 2);
    CHECK(s.partites()[0].name == "A");
    CHECK(s.partites()[0].dim == 3);
    CHECK(s.partites()[1].dim == 3);
    CHECK(s.state(8).label == "phi9");
}

TEST_CASE("domino per-partite inner products match hand values") {
    StateSet s = domino_states();
    const double r = 1.0 / std::sqrt(2.0);
    // phi1 vs phi2 share A local |0>, differ only in B
    CHECK(std::abs(s.local_inner(0, 1, 0)) == Catch::Approx(1.0));
    CHECK(std::abs(s.local_inner(0, 1, 1)) < 1e-15);
    // phi1 vs phi5: A <0|2> = 0, B <0+1|1+2> = 1/2
    CHECK(std::abs(s.local_inner(0, 4, 0)) < 1e-15);
    CHECK(std::abs(s.local_inner(0, 4, 1)) == Catch::Approx(0.5));
    // phi3 vs phi9: A <0+1|1> = r, B <2|1> = 0
    CHECK(std::abs(s.local_inner(2, 8, 0)) == Catch::Approx(r));
    CHECK(std::abs(s.local_inner(2, 8, 1)) < 1e-15);
    // phi7 vs phi8: A <1+2|1-2> = 0
    CHECK(std::abs(s.local_inner(6, 7, 0)) < 1e-15);
    CHECK(std::abs(s.local_inner(6, 7, 1)) == Catch::Approx(1.0));
}

TEST_CASE("lemma2 fixture shape") {
    StateSet s = lemma2_states();
    CHECK(s.size() == 4);
    CHECK(s.partite_count() == 3);
    CHECK(s.partites()[0].dim == 2);
    CHECK(s.partites()[2].name == "C");
}

TEST_CASE("lemma2 orthogonality certificates per pair") {
    StateSet s = lemma2_states();
    // pair -> the only certifying partite (0-based)
    struct Row { std::size_t i, j, partite; };
    const Row rows[] = {{0, 1, 0}, {0, 2, 2}, {0, 3, 2}, {1, 2, 1}, {1, 3, 1}, {2, 3, 0}};
    for (const Row& row : rows) {
        for (std::size_t p = 0; p < 3; ++p) {
            if (p == row.partite)
                CHECK(s.orthogonal_in(row.i, row.j, p));
            else
                CHECK_FALSE(s.orthogonal_in(row.i, row.j, p));
        }
    }
}

TEST_CASE("lemma2 B*C overlap products for the last three states") {
    StateSet s = lemma2_states();
    auto bc = [&](std::size_t i, std::size_t j) {
        return std::abs(s.local_inner(i, j, 1) * s.local_inner(i, j, 2));
    };
    CHECK(bc(1, 2) < 1e-15);
    CHECK(bc(1, 3) < 1e-15);
    CHECK(bc(2, 3) == Catch::Approx(1.0));
}
