#pragma once

#include "qwk/qwitt_presented.hpp"
#include "qwk/rng.hpp"

namespace qwk {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // witness or diagnostics on failure, summary on success
};

// F_{a/d} o V_{a/d} = a/d and V_{a/d} o F_{a/d} = [a/d]_{q^d} on qW_a(R).
// Verified on every ambient generator (complete by additivity) and, when the
// order is at most `enumerate_limit`, on every single element.
std::vector<CheckResult> check_fv_relations(const QwFamily& fam, long a,
                                            const Int& enumerate_limit = Int(1) << 13);

// Exactness of the augmented Koszul complex at every spot, level m.
std::vector<CheckResult> check_koszul(const QwFamily& fam);

// Trivial kernel of V_{a/d} : qW_d -> qW_a for all d | a.
std::vector<CheckResult> check_verschiebung_injective(const QwFamily& fam, long a);

// Trivial kernel of W_a(R) -> qW_a(R), by enumeration of W_a(R).
CheckResult check_witt_to_qwitt_injective(const QwFamily& fam, long a);

// (gh_{m/d})_{d|m} : qW_m(R) -> prod_d R[zeta_d] is a ring isomorphism
// (trivial Lambda_m-structure; requires every prime factor of m invertible).
CheckResult check_ghost_tuple_iso(const QwFamily& fam);

// Compatibility of gh_{m/d} with the classical ghost map on random w in W_m(R).
CheckResult check_ghost_compat(const QwFamily& fam, long d, Rng& rng, int trials);

// p-valuation of the group exponent of qW_a(R).
long qwitt_torsion_exponent(const QwFamily& fam, long a, long p);

// Z_(p) product decomposition of qW_m(R) for a p-local finite R:
// compares cardinalities and invariant factors and checks the comparison map
// is a bijection.
std::vector<CheckResult> check_zp_decomposition(const Ring& coeff_ring, long m, long p);

}  // namespace qwk
