#include <doctest.h>

#include "qwk/rng.hpp"
#include "qwk/witt.hpp"

using namespace qwk;

namespace {

// Independent oracle over torsion-free rings: invert the ghost map by the
// defining recursion, with exact division.
WittVec ghost_inverse(const WittOps& w, const std::vector<QPoly>& ghosts) {
    const auto& ds = w.trunc().divisors;
    WittVec x = w.zero();
    for (size_t i = 0; i < ds.size(); ++i) {
        long d = ds[i];
        QPoly rhs = ghosts[i];
        for (size_t j = 0; j < i; ++j) {
            long e = ds[j];
            if (d % e != 0) continue;
            rhs -= x.coords[j].pow((unsigned long)(d / e)).scaled(e);
        }
        x.coords[i] = rhs.div_exact_int(d);
    }
    return x;
}

QPoly random_elem(const Ring& r, Rng& rng) {
    if (r.is_finite()) {
        auto all = r.enumerate();
        return all[rng.below(all.size())];
    }
    QPoly p(r.nvars());
    int nterms = (int)rng.below(3);
    for (int t = 0; t <= nterms; ++t) {
        Mono m{0, std::vector<uint32_t>(r.nvars(), 0)};
        for (size_t i = 0; i < r.nvars(); ++i) m.t[i] = (uint32_t)rng.below(3);
        p.add_term(m, rng.int_range(-9, 9));
    }
    return r.normalize(p);
}

WittVec random_witt(const WittOps& w, Rng& rng) {
    std::vector<QPoly> coords;
    for (size_t i = 0; i < w.trunc().size(); ++i) coords.push_back(random_elem(w.ring(), rng));
    return w.from_coords(coords);
}

}  // namespace

TEST_CASE("universal table small cases") {
    auto t = WittTable::get(2);
    auto names = t->var_names();  // X1 X2 Y1 Y2
    CHECK(t->add_poly[0].to_string(names) == "1*X1 + 1*Y1");
    CHECK(t->add_poly[1].to_string(names) == "-1*X1*Y1 + 1*X2 + 1*Y2");
    CHECK(t->mul_poly[0].to_string(names) == "1*X1*Y1");
    // P_2 = X1^2 Y2 + X2 Y1^2 + 2 X2 Y2
    QPoly p2 = QPoly::parse("1*X1^2*Y2 + 1*X2*Y1^2 + 2*X2*Y2", names);
    CHECK(t->mul_poly[1] == p2);
    auto t1 = WittTable::get(1);
    CHECK(t1->add_poly[0].to_string(t1->var_names()) == "1*X1 + 1*Y1");
    CHECK(t1->mul_poly[0].to_string(t1->var_names()) == "1*X1*Y1");
}

TEST_CASE("table serialization round trip and tamper detection") {
    auto t = WittTable::get(6);
    std::string s = t->serialize();
    WittTable u = WittTable::deserialize(s);
    CHECK(u.serialize() == s);
    // perturb one coefficient
    std::string bad = s;
    size_t pos = bad.find("S 6 ");
    REQUIRE(pos != std::string::npos);
    bad.insert(pos + 4, "7*X1 + ");
    CHECK_THROWS(WittTable::deserialize(bad));
}

TEST_CASE("ghost map examples") {
    Ring z(RingSpec::integers());
    WittOps w(z, 2);
    WittVec x = w.from_coords({QPoly::constant(3), QPoly::constant(5)});
    CHECK(w.ghost(x, 1) == QPoly::constant(3));
    CHECK(w.ghost(x, 2) == QPoly::constant(19));  // 3^2 + 2*5
    WittOps w6(z, 6);
    WittVec t2 = w6.teichmuller(QPoly::constant(2));
    CHECK(w6.ghost(t2, 6) == QPoly::constant(64));
    WittOps w12(z, 12);
    CHECK(w12.ghost(w12.teichmuller(QPoly::constant(7)), 1) == QPoly::constant(7));
}

TEST_CASE("witt addition matches ghost-inversion oracle over Z") {
    Ring z(RingSpec::integers());
    WittOps w(z, 2);
    WittVec one = w.from_coords({QPoly::constant(1), QPoly::constant(0)});
    WittVec s = w.add(one, one);
    CHECK(z.to_string(s.coords[0]) == "2");
    CHECK(z.to_string(s.coords[1]) == "-1");
    for (long m : {2L, 3L, 4L, 6L, 12L}) {
        WittOps wm(z, m);
        Rng rng(900 + m);
        for (int trial = 0; trial < 20; ++trial) {
            WittVec x = random_witt(wm, rng), y = random_witt(wm, rng);
            auto gx = wm.all_ghosts(x), gy = wm.all_ghosts(y);
            std::vector<QPoly> gsum, gprod;
            for (size_t i = 0; i < gx.size(); ++i) {
                gsum.push_back(gx[i] + gy[i]);
                gprod.push_back(gx[i] * gy[i]);
            }
            CHECK(wm.equal(wm.add(x, y), ghost_inverse(wm, gsum)));
            CHECK(wm.equal(wm.mul(x, y), ghost_inverse(wm, gprod)));
        }
    }
}

TEST_CASE("ghost maps are ring morphisms over torsion rings too") {
    for (const char* spec : {"zmod:4", "zmod:3", "quot:zmod:2:x:1*x^2"}) {
        Ring r(RingSpec::parse(spec));
        for (long m : {2L, 4L, 6L}) {
            WittOps w(r, m);
            Rng rng(7000 + m);
            for (int trial = 0; trial < 25; ++trial) {
                WittVec x = random_witt(w, rng), y = random_witt(w, rng);
                for (long n : w.trunc().divisors) {
                    CHECK(r.equal(w.ghost(w.add(x, y), n), r.add(w.ghost(x, n), w.ghost(y, n))));
                    CHECK(r.equal(w.ghost(w.mul(x, y), n), r.mul(w.ghost(x, n), w.ghost(y, n))));
                }
            }
        }
    }
}

TEST_CASE("additive identity and teichmuller multiplicativity") {
    Ring z(RingSpec::integers());
    WittOps w(z, 6);
    Rng rng(11);
    WittVec x = random_witt(w, rng);
    CHECK(w.equal(w.add(x, w.zero()), x));
    CHECK(w.is_zero(w.sub(x, x)));
    WittVec t2 = w.teichmuller(QPoly::constant(2));
    WittVec t3 = w.teichmuller(QPoly::constant(3));
    CHECK(w.equal(w.mul(t2, t3), w.teichmuller(QPoly::constant(6))));
    CHECK(w.is_zero(w.teichmuller(QPoly::constant(0))));
}

TEST_CASE("frobenius and verschiebung") {
    Ring z(RingSpec::integers());
    SUBCASE("V_2 on W_1 lands in slot 2") {
        WittOps w2(z, 2);
        WittOps w1(z, 1);
        WittVec a = w1.from_coords({QPoly::constant(5)});
        WittVec v = w2.verschiebung(a, 2);
        CHECK(z.to_string(v.coords[0]) == "0");
        CHECK(z.to_string(v.coords[1]) == "5");
        // F_2 V_2 = 2
        WittVec fv = w2.frobenius(v, 2);
        CHECK(z.to_string(fv.coords[0]) == "10");
    }
    SUBCASE("F_2 tau_2(3) = 9") {
        WittOps w2(z, 2);
        WittVec f = w2.frobenius(w2.teichmuller(QPoly::constant(3)), 2);
        CHECK(z.to_string(f.coords[0]) == "9");
    }
    SUBCASE("restriction forgets coordinates") {
        WittOps w6(z, 6);
        WittVec x = w6.from_coords({QPoly::constant(1), QPoly::constant(2), QPoly::constant(3),
                                    QPoly::constant(4)});
        WittVec r = w6.restriction(x, 2);
        CHECK(r.m == 2);
        CHECK(z.to_string(r.coords[0]) == "1");
        CHECK(z.to_string(r.coords[1]) == "2");
    }
    SUBCASE("chain rules and commutation") {
        std::vector<long> levels;
        for (long m = 2; m <= 12; ++m) levels.push_back(m);
        for (long m : levels) {
            for (const char* spec : {"z", "zmod:4"}) {
                Ring r(RingSpec::parse(spec));
                WittOps w(r, m);
                Rng rng(5000 + m);
                for (int trial = 0; trial < 10; ++trial) {
                    WittVec x = random_witt(w, rng);
                    // F chains: F_{d/e} F_{m/d} = F_{m/e}
                    for (long d : w.trunc().divisors)
                        for (long e : divisors_of(d)) {
                            long k1 = m / d, k2 = d / e;
                            if (k1 == 1 || k2 == 1) continue;
                            WittOps wd(r, d);
                            CHECK(wd.frobenius(w.frobenius(x, k1), k2).coords ==
                                  w.frobenius(x, k1 * k2).coords);
                        }
                    // F_n V_n = n
                    for (long n : w.trunc().divisors) {
                        if (n == 1) continue;
                        WittOps sub(r, m / n);
                        WittVec y = random_witt(sub, rng);
                        WittVec fv = w.frobenius(w.verschiebung(y, n), n);
                        CHECK(sub.equal(fv, sub.mul_int(y, n)));
                    }
                }
                // coprime commutation F_n V_k = V_k F_n (n=2, k=3 inside m)
                if (m == 6 || m == 12) {
                    WittOps w3(r, m / 2);           // F_2 : W_m -> W_{m/2}
                    WittOps wsrc(r, m / 3);         // V_3 : W_{m/3} -> W_m
                    WittOps wsmall(r, m / 6);       // F_2 on W_{m/3} -> W_{m/6}
                    Rng rng2(31 + m);
                    for (int trial = 0; trial < 10; ++trial) {
                        WittVec y = random_witt(wsrc, rng2);
                        WittVec lhs = w.frobenius(w.verschiebung(y, 3), 2);
                        WittVec rhs = w3.verschiebung(wsrc.frobenius(y, 2), 3);
                        CHECK(w3.equal(lhs, rhs));
                    }
                }
            }
        }
    }
}

TEST_CASE("V chains") {
    Ring r(RingSpec::parse("zmod:4"));
    long m = 12;
    WittOps w(r, m);
    Rng rng(606);
    for (long d : w.trunc().divisors)
        for (long e : divisors_of(d)) {
            if (d == m || e == d) continue;
            WittOps we(r, e), wd(r, d);
            WittVec y = random_witt(we, rng);
            CHECK(w.equal(w.verschiebung(wd.verschiebung(y, d / e), m / d),
                          w.verschiebung(y, m / e)));
        }
}

TEST_CASE("decompose and recompose") {
    SUBCASE("W_2 identity") {
        Ring z(RingSpec::integers());
        WittOps w(z, 2);
        WittVec x = w.from_coords({QPoly::constant(7), QPoly::constant(-3)});
        auto parts = w.decompose(x);
        CHECK(z.to_string(parts.at(2)) == "7");
        CHECK(z.to_string(parts.at(1)) == "-3");
        CHECK(w.equal(w.recompose(parts), x));
    }
    SUBCASE("random recomposition in W_6(Z/4)") {
        Ring r(RingSpec::parse("zmod:4"));
        WittOps w(r, 6);
        Rng rng(4242);
        for (int trial = 0; trial < 30; ++trial) {
            WittVec x = random_witt(w, rng);
            CHECK(w.equal(w.recompose(w.decompose(x)), x));
        }
    }
    SUBCASE("zero decomposes to zeros") {
        Ring z(RingSpec::integers());
        WittOps w(z, 6);
        for (auto& [d, c] : w.decompose(w.zero())) CHECK(c.is_zero());
    }
}

TEST_CASE("p-typical specialization: V F = multiplication by V(1) on W_4(F_2)") {
    Ring f2(RingSpec::zmod(2));
    WittOps w(f2, 4);
    WittOps w2(f2, 2);
    WittVec v1 = w.verschiebung(w2.teichmuller(f2.one()), 2);
    // enumerate all 8 elements of W_4(F_2)
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) {
                WittVec x = w.from_coords(
                    {QPoly::constant(a), QPoly::constant(b), QPoly::constant(c)});
                WittVec lhs = w.verschiebung(w.frobenius(x, 2), 2);
                CHECK(w.equal(lhs, w.mul(v1, x)));
            }
}

TEST_CASE("ghost map jointly injective over Z") {
    Ring z(RingSpec::integers());
    for (long m : {4L, 6L}) {
        WittOps w(z, m);
        Rng rng(99 + m);
        for (int trial = 0; trial < 100; ++trial) {
            WittVec x = random_witt(w, rng), y = random_witt(w, rng);
            if (w.equal(x, y)) continue;
            bool differs = false;
            for (long n : w.trunc().divisors)
                if (!(w.ghost(x, n) == w.ghost(y, n))) differs = true;
            CHECK(differs);
        }
    }
}

TEST_CASE("witt vector text io") {
    Ring z(RingSpec::integers());
    WittOps w(z, 2);
    WittVec x = w.parse("(3, -5)");
    CHECK(w.to_string(x) == "(3, -5)");
    Ring pt(RingSpec::parse("poly:z:T"));
    WittOps wt(pt, 2);
    WittVec y = wt.parse("(2*T^2 + -1, 0)");
    CHECK(wt.to_string(y) == "(2*T^2 + -1, 0)");
}
