#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qwk {

using Int = mpz_class;

inline Int int_pow(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Int int_gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// g = u*a + v*b
inline Int int_gcdext(const Int& a, const Int& b, Int& u, Int& v) {
    Int g;
    mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// Euclidean remainder in [0, |m|)
inline Int int_mod(const Int& a, const Int& m) {
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Throws unless b divides a.
inline Int int_div_exact(const Int& a, const Int& b) {
    if (b == 0) throw std::domain_error("int_div_exact: division by zero");
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (r != 0) throw std::domain_error("int_div_exact: inexact division");
    return q;
}

inline std::vector<long> divisors_of(long m) {
    std::vector<long> ds;
    for (long d = 1; d * d <= m; ++d) {
        if (m % d == 0) {
            ds.push_back(d);
            if (d != m / d) ds.push_back(m / d);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

inline std::vector<long> prime_factors_of(long m) {
    std::vector<long> ps;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            ps.push_back(p);
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) ps.push_back(m);
    return ps;
}

inline long padic_valuation(long m, long p) {
    long v = 0;
    while (m % p == 0) { m /= p; ++v; }
    return v;
}

inline long euler_phi(long m) {
    long r = m;
    for (long p : prime_factors_of(m)) r = r / p * (p - 1);
    return r;
}

}  // namespace qwk
