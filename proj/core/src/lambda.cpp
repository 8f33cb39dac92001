#include "qwk/lambda.hpp"

#include <set>

#include "qwk/cyclotomic.hpp"

namespace qwk {

WittVec lambda_section(const LambdaStructure& lam, const QPoly& x, long m) {
    WittOps w(lam.ring, m);
    WittVec s = w.zero();
    const auto& ds = w.trunc().divisors;
    for (size_t i = 0; i < ds.size(); ++i) {
        long d = ds[i];
        QPoly rhs = lam.adams(lam.ring.normalize(x), d);
        for (size_t j = 0; j < i; ++j) {
            long e = ds[j];
            if (d % e != 0) continue;
            rhs -= s.coords[j].pow((unsigned long)(d / e)).scaled(e);
        }
        s.coords[i] = rhs.div_exact_int(d);
    }
    return s;
}

std::map<long, QPoly> epsilon_decompose(const LambdaStructure& lam, const WittVec& x, long m) {
    WittOps w(lam.ring, m);
    const auto& ds = w.trunc().divisors;
    // gh_n(x) = sum_{k|n} k * psi^{n/k}(a_{m/k}); peel in ascending n
    std::map<long, QPoly> a;
    for (long n : ds) {
        QPoly rhs = w.ghost(x, n);
        for (long k : divisors_of(n)) {
            if (k == n) continue;
            rhs -= lam.adams(a.at(m / k), n / k).scaled(k);
        }
        a[m / n] = rhs.div_exact_int(n);
    }
    return a;
}

CycQuot c_map(const LambdaStructure& lam, const WittVec& x, long m) {
    auto a = epsilon_decompose(lam, x, m);
    CycQuotOps cyc(lam.ring, m);
    CycQuot out = cyc.zero();
    for (const auto& [e, ae] : a) {
        CycQuot term = cyc.from_ring(lam.adams(ae, e));
        out = cyc.add(out, cyc.mul_qpoly(term, q_analogue(m, e)));
    }
    return out;
}

CycQuot c_after_s(const LambdaStructure& lam, const CycQuot& x, long m) {
    CycQuotOps cyc(lam.ring, m);
    CycQuot out = cyc.zero();
    for (long j = 0; j < m; ++j) {
        if (lam.ring.is_zero(x.coeffs[j])) continue;
        WittVec s = lambda_section(lam, x.coeffs[j], m);
        out = cyc.add(out, cyc.mul(c_map(lam, s, m), cyc.q_power(j)));
    }
    return out;
}

CycQuot lambda_teichmuller(const LambdaStructure& lam, const QPoly& r, long m) {
    WittOps w(lam.ring, m);
    return c_map(lam, w.teichmuller(r), m);
}

bool BmLattice::contains(const std::vector<Int>& x) const {
    FgGroup free((size_t)m, IntMat(0, (size_t)m));
    FgGroup modL = free.quotient_by(gens);
    return modL.contains(x);
}

BmLattice bm_lattice(long m, const std::vector<uint32_t>& v) {
    BmLattice L;
    L.m = m;
    L.multidegree = v;
    for (long d : divisors_of(m)) {
        long k = m / d;  // psi^k-image must reach T^v
        bool admissible = true;
        for (uint32_t vi : v)
            if (vi % (uint32_t)k != 0) admissible = false;
        if (!admissible) continue;
        QPoly qa = q_analogue(m, m / d);  // [d]_{q^{m/d}}
        for (long j = 0; j < m; ++j) {
            std::vector<Int> row((size_t)m, 0);
            for (const auto& [mono, c] : qa.terms()) row[(mono.qexp + j) % m] += c;
            L.gens.push_back(row);
        }
    }
    IntMat g(0, (size_t)m);
    for (const auto& r : L.gens) g.append_row(r);
    L.basis = hnf(g);
    return L;
}

std::vector<Int> multidegree_component(const CycQuot& x, const std::vector<uint32_t>& v) {
    std::vector<Int> out(x.coeffs.size(), 0);
    for (size_t j = 0; j < x.coeffs.size(); ++j) {
        for (const auto& [mono, c] : x.coeffs[j].terms()) {
            std::vector<uint32_t> key = mono.t;
            key.resize(v.size(), 0);
            if (key == v) out[j] += c;
        }
    }
    return out;
}

bool bm_contains(const LambdaStructure& lam, const CycQuot& x, long m) {
    // collect the multidegrees present
    std::set<std::vector<uint32_t>> degs;
    size_t nv = lam.ring.nvars();
    for (const auto& coeff : x.coeffs)
        for (const auto& [mono, c] : coeff.terms()) {
            auto key = mono.t;
            key.resize(nv, 0);
            degs.insert(key);
        }
    for (const auto& v : degs) {
        BmLattice L = bm_lattice(m, v);
        if (!L.contains(multidegree_component(x, v))) return false;
    }
    return true;
}

}  // namespace qwk
