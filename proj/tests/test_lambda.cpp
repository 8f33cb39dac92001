#include <doctest.h>

#include "qwk/cyclotomic.hpp"
#include "qwk/lambda.hpp"
#include "qwk/rng.hpp"

using namespace qwk;

namespace {
Ring ZZ() { return Ring(RingSpec::integers()); }
Ring ZT() { return Ring(RingSpec::parse("poly:z:T")); }
}  // namespace

TEST_CASE("adams operations") {
    LambdaStructure lam(ZT());
    Ring r = lam.ring;
    QPoly x = r.parse("2*T^3 + 1*T");
    CHECK(r.to_string(lam.adams(x, 2)) == "2*T^6 + 1*T^2");
    // psi^a psi^b = psi^{ab} = psi^b psi^a
    CHECK(lam.adams(lam.adams(x, 2), 3) == lam.adams(x, 6));
    CHECK(lam.adams(lam.adams(x, 3), 2) == lam.adams(x, 6));
    // Frobenius lift law: psi^p(x) = x^p mod p
    for (long p : {2L, 3L, 5L}) {
        QPoly diff = lam.adams(x, p) - x.pow((unsigned long)p);
        for (const auto& [m, c] : diff.terms()) CHECK(c % p == 0);
    }
}

TEST_CASE("lambda section") {
    SUBCASE("s_m(1) is the Teichmuller lift of 1") {
        LambdaStructure lam(ZZ());
        for (long m : {2L, 6L, 12L}) {
            WittOps w(lam.ring, m);
            WittVec s = lambda_section(lam, QPoly::constant(1), m);
            CHECK(w.equal(s, w.teichmuller(QPoly::constant(1))));
            for (long n : w.trunc().divisors) CHECK(w.ghost(s, n) == QPoly::constant(1));
        }
    }
    SUBCASE("s_2(2) = (2, -1)") {
        LambdaStructure lam(ZZ());
        WittVec s = lambda_section(lam, QPoly::constant(2), 2);
        CHECK(s.coords[0] == QPoly::constant(2));
        CHECK(s.coords[1] == QPoly::constant(-1));
    }
    SUBCASE("s_2(T) = (T, 0) under psi^2(T) = T^2") {
        LambdaStructure lam(ZT());
        WittVec s = lambda_section(lam, lam.ring.var(0), 2);
        CHECK(s.coords[0] == lam.ring.var(0));
        CHECK(s.coords[1].is_zero());
    }
    SUBCASE("ghosts of the section are adams operations") {
        LambdaStructure lam(ZT());
        WittOps w(lam.ring, 12);
        Rng rng(55);
        for (int trial = 0; trial < 10; ++trial) {
            QPoly x(1);
            for (int t = 0; t < 3; ++t)
                x.add_term(Mono{0, {(uint32_t)rng.below(4)}}, rng.int_range(-5, 5));
            WittVec s = lambda_section(lam, x, 12);
            for (long n : w.trunc().divisors) CHECK(w.ghost(s, n) == lam.adams(x, n));
        }
    }
}

TEST_CASE("epsilon decomposition") {
    LambdaStructure lam(ZZ());
    SUBCASE("tau_2(2) = s_2(2) + V_2(1)") {
        WittOps w(lam.ring, 2);
        auto a = epsilon_decompose(lam, w.teichmuller(QPoly::constant(2)), 2);
        CHECK(a.at(2) == QPoly::constant(2));
        CHECK(a.at(1) == QPoly::constant(1));
    }
    SUBCASE("verschiebung images are already decomposed") {
        for (long m : {4L, 6L}) {
            WittOps w(lam.ring, m);
            WittOps w1(lam.ring, 1);
            WittVec x = w.verschiebung(w1.teichmuller(QPoly::constant(5)), m);
            auto a = epsilon_decompose(lam, x, m);
            for (const auto& [e, ae] : a) {
                if (e == 1)
                    CHECK(ae == QPoly::constant(5));
                else
                    CHECK(ae.is_zero());
            }
        }
    }
    SUBCASE("zero decomposes to zero") {
        WittOps w(lam.ring, 6);
        for (auto& [e, ae] : epsilon_decompose(lam, w.zero(), 6)) CHECK(ae.is_zero());
    }
    SUBCASE("reconstruction is exact") {
        for (long m : {2L, 4L, 6L, 12L}) {
            WittOps w(lam.ring, m);
            Rng rng(2200 + m);
            for (int trial = 0; trial < 10; ++trial) {
                std::vector<QPoly> coords;
                for (size_t i = 0; i < w.trunc().size(); ++i)
                    coords.push_back(QPoly::constant(rng.int_range(-9, 9)));
                WittVec x = w.from_coords(coords);
                auto a = epsilon_decompose(lam, x, m);
                WittVec back = w.zero();
                for (const auto& [e, ae] : a) {
                    WittVec se = lambda_section(lam, ae, e);
                    back = w.add(back, w.verschiebung(se, m / e));
                }
                CHECK(w.equal(back, x));
            }
        }
    }
}

TEST_CASE("c map") {
    LambdaStructure lam(ZZ());
    Ring z = lam.ring;
    SUBCASE("c_2(V_2(1)) = 1 + q") {
        WittOps w(lam.ring, 2);
        WittOps w1(lam.ring, 1);
        CycQuot c = c_map(lam, w.verschiebung(w1.teichmuller(QPoly::constant(1)), 2), 2);
        CHECK(c.coeffs[0] == QPoly::constant(1));
        CHECK(c.coeffs[1] == QPoly::constant(1));
    }
    SUBCASE("c_2(tau_2(2)) = 3 + q with its two ghost congruences") {
        WittOps w(lam.ring, 2);
        CycQuotOps cyc(z, 2);
        CycQuot c = c_map(lam, w.teichmuller(QPoly::constant(2)), 2);
        CHECK(c.coeffs[0] == QPoly::constant(3));
        CHECK(c.coeffs[1] == QPoly::constant(1));
        // mod Phi_1 = q-1: value 4 = gh_2; mod Phi_2 = q+1: value 2 = gh_1
        auto mod1 = cyc.mod_phi(c, 1);
        CHECK(mod1[0] == QPoly::constant(4));
        auto mod2 = cyc.mod_phi(c, 2);
        CHECK(mod2[0] == QPoly::constant(2));
    }
    SUBCASE("c_m is a ring morphism (sampled)") {
        for (long m : {4L, 6L}) {
            WittOps w(lam.ring, m);
            CycQuotOps cyc(z, m);
            Rng rng(808 + m);
            for (int trial = 0; trial < 15; ++trial) {
                std::vector<QPoly> ca, cb;
                for (size_t i = 0; i < w.trunc().size(); ++i) {
                    ca.push_back(QPoly::constant(rng.int_range(-5, 5)));
                    cb.push_back(QPoly::constant(rng.int_range(-5, 5)));
                }
                WittVec x = w.from_coords(ca), y = w.from_coords(cb);
                CHECK(cyc.equal(c_map(lam, w.add(x, y), m),
                                cyc.add(c_map(lam, x, m), c_map(lam, y, m))));
                CHECK(cyc.equal(c_map(lam, w.mul(x, y), m),
                                cyc.mul(c_map(lam, x, m), c_map(lam, y, m))));
            }
        }
    }
    SUBCASE("congruence c_m = psi^d gh_{m/d} mod Phi_d") {
        LambdaStructure lt(ZT());
        long m = 6;
        WittOps w(lt.ring, m);
        CycQuotOps cyc(lt.ring, m);
        Rng rng(31337);
        for (int trial = 0; trial < 8; ++trial) {
            std::vector<QPoly> coords;
            for (size_t i = 0; i < w.trunc().size(); ++i) {
                QPoly p(1);
                p.add_term(Mono{0, {(uint32_t)rng.below(3)}}, rng.int_range(-3, 3));
                coords.push_back(p);
            }
            WittVec x = w.from_coords(coords);
            CycQuot c = c_map(lt, x, m);
            for (long d : w.trunc().divisors) {
                // gh_{m/d}(x) followed by psi^d, as a constant in R[q]/Phi_d
                QPoly ghost_val = lt.adams(w.ghost(x, m / d), d);
                CycQuot g = cyc.from_ring(ghost_val);
                auto lhs = cyc.mod_phi(c, d);
                auto rhs = cyc.mod_phi(g, d);
                CHECK(lhs == rhs);
            }
        }
    }
    SUBCASE("commuting squares with F and V") {
        long m = 6;
        WittOps w(lam.ring, m);
        CycQuotOps cyc(z, m);
        Rng rng(246);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<QPoly> coords;
            for (size_t i = 0; i < w.trunc().size(); ++i)
                coords.push_back(QPoly::constant(rng.int_range(-5, 5)));
            WittVec x = w.from_coords(coords);
            CycQuot cm = c_map(lam, x, m);
            for (long d : w.trunc().divisors) {
                if (d == m) continue;
                // c_d(F_{m/d} x) = c_m(x) mod q^d-1
                CHECK(CycQuotOps(z, d).equal(c_map(lam, w.frobenius(x, m / d), d),
                                             cyc.reduce_to(cm, d)));
                // c_m(V_{m/d} y) = [m/d]_{q^d} * lift(c_d(y))
                WittOps wd(lam.ring, d);
                std::vector<QPoly> cy;
                for (size_t i = 0; i < wd.trunc().size(); ++i)
                    cy.push_back(QPoly::constant(rng.int_range(-5, 5)));
                WittVec y = wd.from_coords(cy);
                CycQuot lhs = c_map(lam, w.verschiebung(y, m / d), m);
                CycQuot rhs = cyc.mul_qpoly(CycQuotOps(z, d).lift_to(c_map(lam, y, d), m),
                                            q_analogue(m, d));
                CHECK(cyc.equal(lhs, rhs));
            }
        }
    }
    SUBCASE("c_m after s_m is the identity over Z") {
        for (long m = 1; m <= 12; ++m) {
            CycQuotOps cyc(z, m);
            Rng rng(500 + m);
            for (int trial = 0; trial < 10; ++trial) {
                std::vector<QPoly> coeffs;
                for (long j = 0; j < m; ++j) coeffs.push_back(QPoly::constant(rng.int_range(-9, 9)));
                CycQuot x = cyc.from_coeffs(coeffs);
                CHECK(cyc.equal(c_after_s(lam, x, m), x));
            }
        }
    }
}

TEST_CASE("lambda teichmuller golden value") {
    LambdaStructure lt(ZT());
    CycQuot c = lambda_teichmuller(lt, lt.ring.var(0), 2);
    CHECK(lt.ring.to_string(c.coeffs[0]) == "1*T^2");
    CHECK(c.coeffs[1].is_zero());
}

TEST_CASE("B_m lattices") {
    SUBCASE("over Z the image is everything") {
        BmLattice L = bm_lattice(6, {});
        for (long j = 0; j < 6; ++j) {
            std::vector<Int> e(6, 0);
            e[j] = 1;
            CHECK(L.contains(e));
        }
    }
    SUBCASE("A = Z[T], m = 2, multidegree 1: span{[2]_q}") {
        BmLattice L = bm_lattice(2, {1});
        CHECK(L.contains({1, 1}));
        CHECK(L.contains({2, 2}));
        CHECK_FALSE(L.contains({1, 0}));
        CHECK_FALSE(L.contains({0, 1}));
    }
    SUBCASE("A = Z[T], m = 2, multidegree 2: full lattice") {
        BmLattice L = bm_lattice(2, {2});
        CHECK(L.contains({1, 0}));
        CHECK(L.contains({0, 1}));
    }
    SUBCASE("membership of c-images") {
        LambdaStructure lt(ZT());
        WittOps w(lt.ring, 4);
        Rng rng(64);
        for (int trial = 0; trial < 6; ++trial) {
            std::vector<QPoly> coords;
            for (size_t i = 0; i < w.trunc().size(); ++i) {
                QPoly p(1);
                p.add_term(Mono{0, {(uint32_t)rng.below(3)}}, rng.int_range(-3, 3));
                coords.push_back(p);
            }
            CHECK(bm_contains(lt, c_map(lt, w.from_coords(coords), 4), 4));
        }
        // 1*q alone is not in B_2 at multidegree 1
        CycQuotOps cyc(lt.ring, 2);
        CycQuot bad = cyc.from_coeffs({lt.ring.zero(), lt.ring.var(0)});
        CHECK_FALSE(bm_contains(lt, bad, 2));
    }
}

TEST_CASE("joint ghost injectivity on the lambda model") {
    for (const char* spec : {"z", "poly:z:T"}) {
        LambdaStructure lam((Ring(RingSpec::parse(spec))));
        long m = 6;
        WittOps w(lam.ring, m);
        Rng rng(17);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<QPoly> ca, cb;
            for (size_t i = 0; i < w.trunc().size(); ++i) {
                QPoly a(lam.ring.nvars()), b(lam.ring.nvars());
                Mono mo{0, std::vector<uint32_t>(lam.ring.nvars(), 0)};
                if (!mo.t.empty()) mo.t[0] = (uint32_t)rng.below(3);
                a.add_term(mo, rng.int_range(-4, 4));
                if (!mo.t.empty()) mo.t[0] = (uint32_t)rng.below(3);
                b.add_term(mo, rng.int_range(-4, 4));
                ca.push_back(lam.ring.normalize(a));
                cb.push_back(lam.ring.normalize(b));
            }
            WittVec x = w.from_coords(ca), y = w.from_coords(cb);
            if (w.equal(x, y)) continue;
            // the ghost values of the c-images must separate mod some Phi_d
            CycQuotOps cyc(lam.ring, m);
            CycQuot cx = c_map(lam, x, m), cy = c_map(lam, y, m);
            bool separated = false;
            for (long d : w.trunc().divisors)
                if (cyc.mod_phi(cx, d) != cyc.mod_phi(cy, d)) separated = true;
            CHECK(separated);
        }
    }
}
