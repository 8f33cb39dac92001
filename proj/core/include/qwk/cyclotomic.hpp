#pragma once

#include <map>
#include <optional>

#include "qwk/fg_abelian.hpp"
#include "qwk/qpoly.hpp"

namespace qwk {

// Phi_m(q), monic over Z; prod_{d|m} Phi_d(q) = q^m - 1. Cached; call
// warm_cyclotomic_cache before parallel phases, or rely on the internal lock.
const QPoly& cyclotomic(long m);
void warm_cyclotomic_cache(long up_to);

// [m/d]_{q^d} = (q^m-1)/(q^d-1) = 1 + q^d + ... + q^{d(m/d-1)}; requires d | m.
QPoly q_analogue(long m, long d);

// q^m - 1 as a QPoly in q only.
QPoly q_power_minus_one(long m);

struct JointQuotient {
    FgGroup group;          // Z[q]/(Phi_m, Phi_n) as abelian group on 1, q, ..., q^{phi(m)-1}
    bool is_zero;
    Int order;
    // set when m/n is a prime power p^alpha (including p^0 = 1):
    std::optional<long> char_p;
    std::optional<long> rank;  // phi(min(m, n))
    bool matches_identification;  // order == p^rank when char_p is set
};

// Z[q]/(Phi_m(q), Phi_n(q)) with its vanishing / F_p[q]/Phi_min identification.
JointQuotient cyclo_joint_quotient(long m, long n);

struct PhiIdealWitness {
    bool containment_ok;                // every [p]_{q^{m/p}} divisible by Phi_m
    bool witness_found;                 // Phi_m = sum_p c_p * [p]_{q^{m/p}}
    std::map<long, QPoly> cofactors;    // p -> c_p, degree <= bound
    long degree_bound;
};

// Bounded search for ([p]_{q^{m/p}} : p | m) = (Phi_m(q)); "witness_found =
// false" means inconclusive at this bound, not failure.
PhiIdealWitness phi_ideal_check(long m, long degree_bound);

}  // namespace qwk
