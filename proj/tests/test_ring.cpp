#include <doctest.h>

#include "qwk/ring.hpp"
#include "qwk/rng.hpp"

using namespace qwk;

namespace {

QPoly random_elem(const Ring& r, Rng& rng) {
    if (r.is_finite()) {
        auto all = r.enumerate();
        return all[rng.below(all.size())];
    }
    QPoly p(r.nvars());
    int nterms = (int)rng.below(4);
    for (int t = 0; t <= nterms; ++t) {
        Mono m{0, std::vector<uint32_t>(r.nvars(), 0)};
        for (size_t i = 0; i < r.nvars(); ++i) m.t[i] = (uint32_t)rng.below(4);
        p.add_term(m, rng.int_range(-9, 9));
    }
    return r.normalize(p);
}

}  // namespace

TEST_CASE("ring spec parse/print round trip") {
    for (const char* s : {"z", "zmod:4", "poly:z:T", "poly:z:T1,T2", "poly:zmod:3:x",
                          "quot:zmod:2:x:1*x^2"}) {
        RingSpec spec = RingSpec::parse(s);
        CHECK(spec.to_string() == s);
    }
    CHECK_THROWS(RingSpec::parse("zmod:1"));
    CHECK_THROWS(RingSpec::parse("poly:z:T,T"));
}

TEST_CASE("zmod canonical residues") {
    Ring r(RingSpec::zmod(5));
    CHECK(r.to_string(r.from_int(-1)) == "4");
    CHECK(r.equal(r.add(r.from_int(3), r.from_int(4)), r.from_int(2)));
    CHECK(r.size() == 5);
}

TEST_CASE("finite quotient ring F_2[x]/(x^2)") {
    Ring r(RingSpec::parse("quot:zmod:2:x:1*x^2"));
    CHECK(r.is_finite());
    CHECK(r.size() == 4);
    QPoly x = r.var(0);
    CHECK(r.is_zero(r.mul(x, x)));
    auto all = r.enumerate();
    CHECK(all.size() == 4);
}

TEST_CASE("ring axioms hold on random triples") {
    std::vector<std::string> specs = {"z", "zmod:4", "zmod:3", "poly:z:T",
                                      "quot:zmod:2:x:1*x^2"};
    for (const auto& s : specs) {
        Ring r(RingSpec::parse(s));
        Rng rng(0xabc123 + std::hash<std::string>{}(s));
        for (int i = 0; i < 100; ++i) {
            QPoly a = random_elem(r, rng), b = random_elem(r, rng), c = random_elem(r, rng);
            CHECK(r.equal(r.add(a, b), r.add(b, a)));
            CHECK(r.equal(r.mul(a, b), r.mul(b, a)));
            CHECK(r.equal(r.mul(a, r.mul(b, c)), r.mul(r.mul(a, b), c)));
            CHECK(r.equal(r.add(a, r.add(b, c)), r.add(r.add(a, b), c)));
            CHECK(r.equal(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c))));
            CHECK(r.equal(r.mul(a, r.one()), a));
            CHECK(r.is_zero(r.add(a, r.neg(a))));
        }
    }
}

TEST_CASE("polynomial text format") {
    Ring r(RingSpec::parse("poly:z:T1,T2"));
    QPoly p = r.parse("3*q^0*T1^2*T2 + -1*T1 + 7");
    // canonical order: highest total T-degree first
    CHECK(r.to_string(p) == "3*T1^2*T2 + -1*T1 + 7");
    CHECK(r.parse(r.to_string(p)) == p);
    CHECK(r.to_string(r.zero()) == "0");
    CHECK(r.parse("0").is_zero());
}
