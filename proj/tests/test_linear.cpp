#include <doctest.h>

#include "qwk/fg_abelian.hpp"
#include "qwk/rng.hpp"

using namespace qwk;

TEST_CASE("snf basics") {
    SUBCASE("identity") {
        SnfData s = snf(IntMat::identity(2), true);
        CHECK(s.diag == std::vector<Int>{1, 1});
    }
    SUBCASE("worked 2x2") {
        IntMat a(2, 2);
        a.at(0, 0) = 2; a.at(0, 1) = 4;
        a.at(1, 0) = 6; a.at(1, 1) = 8;
        SnfData s = snf(a, true);
        // det = -8, entry gcd 2: invariant factors (2, 4)
        CHECK(s.diag == std::vector<Int>{2, 4});
    }
    SUBCASE("zero matrix") {
        SnfData s = snf(IntMat(3, 2), true);
        CHECK(s.rank == 0);
        CHECK(s.diag == std::vector<Int>{0, 0});
    }
}

TEST_CASE("snf round trip on random matrices") {
    Rng rng(2024);
    for (int trial = 0; trial < 500; ++trial) {
        size_t r = 1 + rng.below(12), c = 1 + rng.below(12);
        IntMat a(r, c);
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < c; ++j) a.at(i, j) = rng.int_range(-99, 99);
        SnfData s = snf(a);
        CHECK(s.u * a * s.v == s.d);
        CHECK(abs(s.u.det()) == 1);
        CHECK(abs(s.v.det()) == 1);
        for (size_t i = 0; i + 1 < s.diag.size(); ++i) {
            if (s.diag[i + 1] != 0) {
                REQUIRE(s.diag[i] != 0);
                CHECK(s.diag[i + 1] % s.diag[i] == 0);
            }
            CHECK(s.diag[i] >= 0);
        }
    }
}

TEST_CASE("left kernel and solve") {
    Rng rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        size_t r = 1 + rng.below(8), c = 1 + rng.below(8);
        IntMat a(r, c);
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < c; ++j) a.at(i, j) = rng.int_range(-5, 5);
        IntMat k = left_kernel(a);
        CHECK((k.rows() == 0 || (k * a).is_zero()));
        // a random lattice vector must be solvable
        std::vector<Int> x(r);
        for (auto& v : x) v = rng.int_range(-4, 4);
        auto b = mat_vec_row(x, a);
        auto sol = solve_left(snf(a), b);
        REQUIRE(sol.has_value());
        CHECK(mat_vec_row(*sol, a) == b);
    }
}

TEST_CASE("fg group: subgroup equality") {
    SUBCASE("Z^2 full") {
        FgGroup g(2, IntMat(0, 2));
        CHECK(g.subgroup_equal({{1, 0}, {0, 1}}, {{1, 1}, {0, 1}}));
    }
    SUBCASE("Z: 2Z vs 4Z") {
        FgGroup g(1, IntMat(0, 1));
        CHECK_FALSE(g.subgroup_equal({{2}}, {{4}}));
    }
    SUBCASE("Z/6: <2> = <4>") {
        IntMat rels(1, 1);
        rels.at(0, 0) = 6;
        FgGroup g(1, rels);
        CHECK(g.subgroup_equal({{2}}, {{4}}));
        CHECK(g.order() == 6);
    }
}

TEST_CASE("fg group invariants") {
    IntMat rels(2, 3);
    rels.at(0, 0) = 2;
    rels.at(1, 1) = 6;
    FgGroup g(3, rels);
    auto f = g.invariant_factors();
    CHECK(f == std::vector<Int>{2, 6, 0});
    CHECK_FALSE(g.is_finite());
    CHECK(g.contains({2, 6, 0}));
    CHECK_FALSE(g.contains({1, 0, 0}));
    CHECK_FALSE(g.contains({0, 0, 1}));
}
