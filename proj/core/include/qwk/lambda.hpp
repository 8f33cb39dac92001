#pragma once

#include "qwk/cyc_quot.hpp"
#include "qwk/fg_abelian.hpp"
#include "qwk/witt.hpp"

namespace qwk {

// Adams operations on a torsion-free coefficient ring: the identity on Z,
// T_i -> T_i^k on polynomial rings. psi^k psi^l = psi^l psi^k = psi^{kl}.
struct LambdaStructure {
    Ring ring;

    explicit LambdaStructure(const Ring& r) : ring(r) {
        if (!r.is_torsion_free())
            throw std::invalid_argument("LambdaStructure: torsion-free base required");
    }

    QPoly adams(const QPoly& x, long k) const {
        if (k < 1) throw std::invalid_argument("adams: k >= 1 required");
        return x.scale_all_t_exponents((uint32_t)k);
    }
};

// s_m(x): the Witt vector with gh_n = psi^n(x) for all n | m, solved by exact
// division; a failed division means the element carries no Lambda-structure.
WittVec lambda_section(const LambdaStructure& lam, const QPoly& x, long m);

// The unique decomposition x = sum_{e|m} V_{m/e}(s_e(a_e)); returns e -> a_e.
std::map<long, QPoly> epsilon_decompose(const LambdaStructure& lam, const WittVec& x, long m);

// c_m(x) = sum_{e|m} [m/e]_{q^e} psi^e(a_e) in A[q]/(q^m-1).
CycQuot c_map(const LambdaStructure& lam, const WittVec& x, long m);

// Z[q]-linear extension of s_m followed by c_m; equals psi^m coefficientwise.
CycQuot c_after_s(const LambdaStructure& lam, const CycQuot& x, long m);

// Teichmuller lift in the c-image model: c_m(tau_m(r)).
CycQuot lambda_teichmuller(const LambdaStructure& lam, const QPoly& r, long m);

// The image lattice of c_m at a fixed T-multidegree (componentwise), as a
// sublattice of Z^m = Z[q]/(q^m-1) * T^v. Over Z the multidegree is empty.
struct BmLattice {
    long m;
    std::vector<uint32_t> multidegree;
    std::vector<std::vector<Int>> gens;  // q^j * [d]_{q^{m/d}} for admissible d
    IntMat basis;                        // HNF

    bool contains(const std::vector<Int>& x) const;
};

BmLattice bm_lattice(long m, const std::vector<uint32_t>& multidegree);

// Membership of a full element of A[q]/(q^m-1) in B_m, decided per multidegree.
bool bm_contains(const LambdaStructure& lam, const CycQuot& x, long m);

// The coefficient vector of T^v inside x (slot j = coefficient of q^j T^v).
std::vector<Int> multidegree_component(const CycQuot& x, const std::vector<uint32_t>& v);

}  // namespace qwk
