#include <doctest.h>

#include <set>

#include "qwk/qhodge.hpp"
#include "qwk/rng.hpp"

using namespace qwk;

namespace {

QForm random_form(const QHodge& h, int degree, int maxdeg, Rng& rng) {
    QForm f = h.zero(degree);
    int nterms = 1 + (int)rng.below(3);
    for (int t = 0; t < nterms; ++t) {
        std::vector<uint32_t> v(h.nvars());
        for (auto& x : v) x = (uint32_t)rng.below((uint64_t)maxdeg + 1);
        auto subsets = h.subsets_of_support(v, degree);
        if (subsets.empty()) continue;
        uint32_t J = subsets[rng.below(subsets.size())];
        CycZ c = CycZ::zero(h.m());
        c.c[rng.below((uint64_t)h.m())] = rng.int_range(-4, 4);
        if (c.is_zero()) continue;
        f = h.add(f, h.monomial(v, J, c));
    }
    return f;
}

bool is_coboundary(const QHodge& h, const QForm& f) {
    if (h.is_zero(f)) return true;
    std::set<std::vector<uint32_t>> degs;
    for (const auto& [k, c] : f.comps) degs.insert(k.v);
    for (const auto& v : degs) {
        KoszulScalarComplex cx = multidegree_complex(h.m(), v);
        IntMat b = cx.differential(f.degree - 1);
        auto coords = h.component_coords(f, v);
        if (b.rows() == 0) {
            for (const Int& c : coords)
                if (c != 0) return false;
            continue;
        }
        if (!solve_left(snf(b), coords)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("q-shift operators") {
    QPoly t1 = QPoly::variable(0, 2), t2 = QPoly::variable(1, 2);
    CHECK(gamma_op(t1.pow(3), 0) == t1.pow(3) * QPoly::q_power(3, 2));
    CHECK(gamma_op(t2, 0) == t2);
    QPoly prod = t1 * t2;
    CHECK(gamma_op(gamma_op(prod, 0), 1) == gamma_op(gamma_op(prod, 1), 0));
    CHECK(gamma_op(gamma_op(prod, 0), 1) == prod * QPoly::q_power(2, 2));
}

TEST_CASE("jackson q-derivative") {
    QPoly t = QPoly::variable(0, 1);
    SUBCASE("power rule") {
        for (uint32_t v = 1; v <= 20; ++v) {
            QPoly expect(1);
            for (uint32_t a = 0; a < v; ++a) expect.add_term(Mono{a, {v - 1}}, 1);
            CHECK(q_partial(t.pow(v), 0) == expect);
        }
        CHECK(q_partial(QPoly::constant(7, 1), 0).is_zero());
    }
    SUBCASE("q-Leibniz rule on random pairs") {
        Rng rng(1001);
        for (int trial = 0; trial < 200; ++trial) {
            QPoly f(2), g(2);
            for (int k = 0; k < 3; ++k) {
                f.add_term(Mono{0, {(uint32_t)rng.below(5), (uint32_t)rng.below(5)}},
                           rng.int_range(-5, 5));
                g.add_term(Mono{0, {(uint32_t)rng.below(5), (uint32_t)rng.below(5)}},
                           rng.int_range(-5, 5));
            }
            for (size_t i = 0; i < 2; ++i) {
                QPoly lhs = q_partial(f * g, i);
                QPoly rhs = f * q_partial(g, i) + gamma_op(g, i) * q_partial(f, i);
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("hodge differential") {
    SUBCASE("d(T^v) = (q^v - 1) T^{v-1} dT at m = 4") {
        QHodge h(1, 4);
        QForm f = h.from_poly(QPoly::variable(0, 1).pow(2));
        QForm d = h.differential(f);
        REQUIRE(d.comps.size() == 1);
        const auto& [key, c] = *d.comps.begin();
        CHECK(key.v == std::vector<uint32_t>{2});
        CHECK(key.J == 1);
        CHECK(c.c == std::vector<Int>{-1, 0, 1, 0});  // q^2 - 1
    }
    SUBCASE("d(1) = 0") {
        QHodge h(2, 3);
        CHECK(h.is_zero(h.differential(h.from_poly(QPoly::constant(1, 2)))));
    }
    SUBCASE("d(T1 T2) = (q-1)(T2 dT1 + T1 dT2)") {
        QHodge h(2, 6);
        QForm d = h.differential(h.from_poly(QPoly::variable(0, 2) * QPoly::variable(1, 2)));
        CycZ qm1 = CycZ::zero(6);
        qm1.c[0] = -1;
        qm1.c[1] = 1;
        QForm expect = h.add(h.monomial({1, 1}, 1, qm1), h.monomial({1, 1}, 2, qm1));
        CHECK(h.is_zero(h.sub(d, expect)));
        CHECK(h.is_zero(h.differential(d)));
    }
    SUBCASE("d o d = 0 on random forms, n <= 3") {
        for (int n = 1; n <= 3; ++n)
            for (long m : {2L, 4L, 6L}) {
                QHodge h(n, m);
                Rng rng(42 * n + m);
                for (int trial = 0; trial < 25; ++trial) {
                    QForm f = random_form(h, (int)rng.below((uint64_t)n), 8, rng);
                    CHECK(h.is_zero(h.differential(h.differential(f))));
                }
            }
    }
    SUBCASE("multidegree preservation") {
        QHodge h(2, 4);
        Rng rng(7);
        for (int trial = 0; trial < 20; ++trial) {
            QForm f = random_form(h, 0, 6, rng);
            QForm d = h.differential(f);
            for (const auto& [k, c] : d.comps) {
                bool found = false;
                for (const auto& [k2, c2] : f.comps)
                    if (k2.v == k.v) found = true;
                CHECK(found);
            }
        }
    }
}

TEST_CASE("wedge product") {
    QHodge h(2, 4);
    QPoly t1 = QPoly::variable(0, 2);
    SUBCASE("dT1 ^ T1 = q T1 dT1") {
        QForm dt1 = h.differential(h.from_poly(t1));  // (q-1) dT1... use monomial directly
        CycZ one = CycZ::zero(4);
        one.c[0] = 1;
        QForm d1 = h.monomial({1, 0}, 1, one);  // dT1
        QForm x1 = h.from_poly(t1);
        QForm w = h.wedge(d1, x1);
        CycZ q = CycZ::zero(4);
        q.c[1] = 1;
        QForm expect = h.monomial({2, 0}, 1, q);  // q T1 dT1
        CHECK(h.is_zero(h.sub(w, expect)));
        // and T1 ^ dT1 has no twist
        QForm w2 = h.wedge(x1, d1);
        CycZ one2 = CycZ::zero(4);
        one2.c[0] = 1;
        CHECK(h.is_zero(h.sub(w2, h.monomial({2, 0}, 1, one2))));
    }
    SUBCASE("1 ^ w = w and dT1 ^ dT1 = 0") {
        Rng rng(99);
        QForm one_form = h.from_poly(QPoly::constant(1, 2));
        for (int trial = 0; trial < 10; ++trial) {
            QForm w = random_form(h, 1, 5, rng);
            CHECK(h.is_zero(h.sub(h.wedge(one_form, w), w)));
        }
        CycZ one = CycZ::zero(4);
        one.c[0] = 1;
        QForm d1 = h.monomial({1, 0}, 1, one);
        CHECK(h.is_zero(h.wedge(d1, d1)));
    }
    SUBCASE("associativity and graded Leibniz") {
        Rng rng(123);
        for (int trial = 0; trial < 30; ++trial) {
            int da = (int)rng.below(2), db = (int)rng.below(2), dc = (int)rng.below(2);
            QForm a = random_form(h, da, 4, rng);
            QForm b = random_form(h, db, 4, rng);
            QForm c = random_form(h, dc, 4, rng);
            CHECK(h.is_zero(
                h.sub(h.wedge(h.wedge(a, b), c), h.wedge(a, h.wedge(b, c)))));
            // d(a ^ b) = da ^ b + (-1)^{|a|} a ^ db
            QForm lhs = h.differential(h.wedge(a, b));
            QForm rhs = h.add(h.wedge(h.differential(a), b),
                              da % 2 ? h.neg(h.wedge(a, h.differential(b)))
                                     : h.wedge(a, h.differential(b)));
            CHECK(h.is_zero(h.sub(lhs, rhs)));
        }
    }
}

TEST_CASE("multidegree complexes") {
    SUBCASE("v = 0 is a single ring in degree 0") {
        KoszulScalarComplex cx = multidegree_complex(4, {0, 0});
        CHECK(cx.nfac() == 0);
        CHECK(cx.rank(0) == 1);
        CHECK(cx.rank(1) == 0);
    }
    SUBCASE("v = (2), m = 4 has scalar q^2 - 1") {
        KoszulScalarComplex cx = multidegree_complex(4, {2});
        REQUIRE(cx.scalars.size() == 1);
        CHECK(cx.scalars[0].to_string({}) == "1*q^2 + -1");
    }
    SUBCASE("v = (1,2), m = 2 has scalars q-1 and q^2-1 (= 0 mod q^2-1 acts)") {
        KoszulScalarComplex cx = multidegree_complex(2, {1, 2});
        REQUIRE(cx.scalars.size() == 2);
        CHECK(cx.scalars[0].to_string({}) == "1*q + -1");
        CHECK(cx.scalars[1].to_string({}) == "1*q^2 + -1");
    }
    SUBCASE("assembled differential matches the scalar complex on full bases") {
        for (long m : {2L, 3L, 4L, 5L, 6L})
            for (uint32_t v1 = 0; v1 <= 6; ++v1)
                for (uint32_t v2 = 0; v2 <= 6; ++v2) {
                    QHodge h(2, m);
                    std::vector<uint32_t> v{v1, v2};
                    KoszulScalarComplex cx = multidegree_complex(m, v);
                    for (int i = 0; (size_t)i < cx.nfac(); ++i) {
                        IntMat want = cx.differential(i);
                        auto subsets = h.subsets_of_support(v, i);
                        IntMat got(want.rows(), want.cols());
                        for (size_t s = 0; s < subsets.size(); ++s)
                            for (long j = 0; j < m; ++j) {
                                CycZ c = CycZ::zero(m);
                                c.c[j] = 1;
                                QForm bas = h.monomial(v, subsets[s], c);
                                auto img =
                                    h.component_coords(h.differential(bas), v);
                                got.set_row(s * (size_t)m + (size_t)j, img);
                            }
                        CHECK(got == want);
                    }
                }
    }
}

TEST_CASE("cohomology of scalar complexes") {
    SUBCASE("H^0 at m=4, v=2 is the annihilator of q^2-1") {
        KoszulScalarComplex cx = multidegree_complex(4, {2});
        auto h0 = cohomology(cx, 0);
        // free of rank 2 with q^2 acting as identity: Z[q]/(q^2-1)
        CHECK(h0.invariant_factors() == std::vector<Int>{0, 0});
        IntMat q2 = h0.q_action * h0.q_action;
        CHECK(q2 == IntMat::identity(2));
        CHECK_FALSE(h0.q_action == IntMat::identity(2));
    }
    SUBCASE("H^1 at m=4, v=2 is Z[q]/(q^2-1)") {
        KoszulScalarComplex cx = multidegree_complex(4, {2});
        auto h1 = cohomology(cx, 1);
        CHECK(h1.invariant_factors() == std::vector<Int>{0, 0});
        // q^2 acts as the identity modulo the relations
        IntMat q2 = h1.q_action * h1.q_action;
        FgGroup g(h1.ngens, h1.rels);
        for (size_t i = 0; i < h1.ngens; ++i) {
            std::vector<Int> diff = q2.row(i);
            diff[i] -= 1;
            CHECK(g.contains(diff));
        }
    }
    SUBCASE("H^0 at v = 0 is the full ring") {
        KoszulScalarComplex cx = multidegree_complex(6, {0});
        auto h0 = cohomology(cx, 0);
        CHECK(h0.ngens == 6);
        CHECK(h0.invariant_factors() == std::vector<Int>(6, 0));
    }
}

TEST_CASE("bockstein") {
    SUBCASE("beta_2((1+q) T) = dT") {
        QHodge h(1, 2);
        CycZ c = CycZ::zero(2);
        c.c[0] = 1;
        c.c[1] = 1;
        QForm f = h.monomial({1}, 0, c);
        QForm b = h.bockstein(f);
        CycZ one = CycZ::zero(2);
        one.c[0] = 1;
        CHECK(h.is_zero(h.sub(b, h.monomial({1}, 1, one))));
    }
    SUBCASE("beta of a constant is zero") {
        QHodge h(1, 4);
        CHECK(h.is_zero(h.bockstein(h.from_poly(QPoly::constant(5, 1)))));
    }
    SUBCASE("beta_1 is the de Rham differential: beta_1(T^2) = 2 T dT") {
        QHodge h(1, 1);
        QForm f = h.from_poly(QPoly::variable(0, 1).pow(2));
        QForm b = h.bockstein(f);
        CycZ two = CycZ::zero(1);
        two.c[0] = 2;
        CHECK(h.is_zero(h.sub(b, h.monomial({2}, 1, two))));
    }
    SUBCASE("non-cocycles are rejected") {
        QHodge h(1, 4);
        CHECK_THROWS(h.bockstein(h.from_poly(QPoly::variable(0, 1))));
    }
    SUBCASE("beta o beta = 0 on random cocycles (multiples of [m]_q)") {
        QHodge h(2, 4);
        Rng rng(777);
        for (int trial = 0; trial < 20; ++trial) {
            // [m]_q * anything in degree 0 is a cocycle mod q^m-1
            QForm f = h.mul_qpoly(random_form(h, 0, 6, rng), q_analogue(4, 1));
            QForm b1 = h.bockstein(f);
            // beta o beta vanishes at class level
            CHECK(is_coboundary(h, h.bockstein(b1)));
        }
    }
}

TEST_CASE("commutativity on cohomology and bockstein leibniz") {
    for (long m : {2L, 3L}) {
        QHodge h(2, m);
        Rng rng(4000 + m);
        for (int trial = 0; trial < 12; ++trial) {
            // cocycles: multiples of [m]_q in degree 0, arbitrary top forms
            QForm w = h.mul_qpoly(random_form(h, 0, 4, rng), q_analogue(m, 1));
            QForm e = h.mul_qpoly(random_form(h, 0, 4, rng), q_analogue(m, 1));
            // graded commutativity of classes: for degree 0 reps this is exact,
            // so test with a degree-1 cocycle too
            QForm d1 = h.differential(random_form(h, 0, 4, rng));  // exact 1-cocycle
            QForm comm = h.sub(h.wedge(w, d1), h.wedge(d1, w));
            CHECK(is_coboundary(h, comm));
            // Bockstein Leibniz on H^0
            QForm lhs = h.bockstein(h.wedge(w, e));
            QForm rhs = h.add(h.wedge(w, h.bockstein(e)), h.wedge(e, h.bockstein(w)));
            CHECK(is_coboundary(h, h.sub(lhs, rhs)));
        }
    }
}

TEST_CASE("K complexes") {
    SUBCASE("(2,1,0): H^0 and H^1 are rank-1 free at precision") {
        auto rep = ke_cohomology(2, 1, 0, 8);
        CHECK(rep.free_of_expected_rank);
        CHECK(rep.h0_factors == std::vector<Int>{256});
        CHECK(rep.h1_factors == std::vector<Int>{256});
        CHECK(rep.h0_generated_by_analogue);
    }
    SUBCASE("(p, alpha, alpha): zero differential, full ring") {
        for (long p : {2L, 3L}) {
            auto cx = build_k(p, 2, 2);
            CHECK(cx.scalars[0].is_zero() == false);  // q^{p^2}-1 reduces to 0 mod m
            auto h0 = cohomology(cx, 0);
            CHECK((long)h0.ngens == cx.m);
            auto rep = ke_cohomology(p, 2, 2, 6);
            CHECK(rep.free_of_expected_rank);
        }
    }
    SUBCASE("(2,2,1): H^0 generated by 1 + q^2") {
        auto rep = ke_cohomology(2, 2, 1, 8);
        CHECK(rep.free_of_expected_rank);
        CHECK(rep.h0_generated_by_analogue);
    }
    SUBCASE("tensor isomorphism, named instances and full sweep") {
        for (auto [p, a, e1, e2] : std::vector<std::array<long, 4>>{
                 {2, 1, 0, 0}, {2, 2, 2, 1}, {3, 2, 1, 0}}) {
            auto rep = ke_tensor_iso(p, a, e1, e2);
            CHECK(rep.pass());
        }
        for (long p : {2L, 3L})
            for (long a = 0; a <= 3; ++a)
                for (long e1 = 0; e1 <= a; ++e1)
                    for (long e2 = 0; e2 <= e1; ++e2) CHECK(ke_tensor_iso(p, a, e1, e2).pass());
    }
}
