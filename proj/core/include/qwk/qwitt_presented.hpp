#pragma once

#include <memory>

#include "qwk/cyclotomic.hpp"
#include "qwk/fg_abelian.hpp"
#include "qwk/fin_ring.hpp"

namespace qwk {

// One presented ring qW_level(R) for a finite coefficient ring R.
//
// Ambient group: W_level(R)[q]/(q^level - 1), spanned by the generators
// q^j * V_{level/d}(tau_d(r)) indexed by (q-power j, divisor d, r != 0). The
// identity x = sum_d V_{level/d} tau_d(x_d) makes the expression of any
// element canonical. The relation lattice stacks the ambient addition
// relations with the two ideal generator families, closed under
// multiplication by q and by the ambient generators to a fixed point.
class QwLevel {
  public:
    using WittEl = FinWittEngine::Elem;
    using Ambient = std::vector<WittEl>;  // q-slot -> Witt element
    using Vec = std::vector<Int>;         // expression vector, length K

    QwLevel(std::shared_ptr<FinRing> R,
            const std::map<long, std::shared_ptr<FinWittEngine>>& engines, long level,
            int closure_cap = 64);

    long level() const { return level_; }
    const FinRing& ring() const { return *R_; }
    const FinWittEngine& engine() const { return *eng_; }
    size_t K() const { return K_; }
    const EchelonLattice& lattice() const { return lattice_; }
    const Int& order() const { return order_; }
    const std::vector<Int>& invariant_factors() const { return inv_factors_; }
    int closure_iterations() const { return closure_iterations_; }

    size_t gen_index(long j, size_t div_idx, uint16_t r) const;
    Ambient ambient_zero() const;
    Ambient amb_add(const Ambient& x, const Ambient& y) const;
    Ambient amb_shift(const Ambient& x, long j) const;
    // x * q^j V_{level/f}(tau_f(r)) via the projection formula
    Ambient amb_mul_single(const Ambient& x, size_t f_idx, uint16_t r, long j) const;
    Ambient amb_mul(const Ambient& x, const Ambient& y) const;

    Vec express(const Ambient& x) const;   // canonical expression
    Vec normal_form(Vec v) const;          // unique coset representative
    Ambient lift(const Vec& v) const;      // concrete representative

    // element api (normal forms)
    Vec zero() const { return Vec(K_, 0); }
    Vec one() const;
    Vec q_power(long j) const;
    Vec from_witt(const WittEl& w) const;
    Vec teichmuller(uint16_t r) const;
    Vec nf_add(const Vec& a, const Vec& b) const;
    Vec nf_mul(const Vec& a, const Vec& b) const;
    bool nf_is_zero(const Vec& a) const;

    // mixed-radix enumeration support: positions with pivot > 1 and their radii
    std::vector<std::pair<size_t, Int>> coordinate_radices() const;

    // multiplication tensor on the pivot-coordinate generators: entry (i, j)
    // is the normal form of e_{c_i} * e_{c_j}; products of arbitrary elements
    // are the bilinear integer expansion of the tensor followed by reduction
    std::vector<std::vector<Vec>> multiplication_tensor() const;

    FgGroup group() const;

  private:
    long level_;
    std::shared_ptr<FinRing> R_;
    std::shared_ptr<FinWittEngine> eng_;
    std::map<long, std::shared_ptr<FinWittEngine>> engines_;  // sub-levels for F targets
    size_t ndiv_, nR_, k_block_, K_;
    EchelonLattice lattice_;
    Int order_ = 0;
    std::vector<Int> inv_factors_;
    int closure_iterations_ = 0;
    std::vector<long> single_order_;  // additive order per (div_idx, r)

    void build(int closure_cap);
    WittEl scaled_single(size_t div_idx, uint16_t r, const Int& c) const;
};

// Presentations of qW_d(R) for every divisor d of m, plus the structure maps
// between them as matrices on expression vectors (row i = image of ambient
// generator i).
class QwFamily {
  public:
    QwFamily(const Ring& coeff_ring, long m, int closure_cap = 64);

    long m() const { return m_; }
    const FinRing& R() const { return *R_; }
    const QwLevel& at(long d) const { return *levels_.at(d); }
    const std::shared_ptr<FinWittEngine>& engine(long d) const { return engines_.at(d); }

    // qW_a -> qW_{a/k}
    const IntMat& frobenius_expr(long a, long k) const;
    // qW_{a/k} -> qW_a
    const IntMat& verschiebung_expr(long a, long k) const;
    // multiplication by [top/bot]_{q^bot} on qW_a
    IntMat mul_qanalogue_expr(long a, long top, long bot) const;
    IntMat mul_int_expr(long a, long n) const;
    IntMat q_shift_expr(long a) const;

    // R[zeta_d] = R[q]/Phi_d as a presented group on generators (slot, r)
    struct CycGroup {
        long d;
        size_t phi;
        size_t K;
        IntMat rels;
        std::shared_ptr<FinRing> R;
        size_t gen_index(size_t slot, uint16_t r) const;
        std::vector<Int> express(const std::vector<uint16_t>& slots) const;
        FgGroup group() const { return FgGroup(K, rels); }
    };
    CycGroup cyc_group(long d) const;
    // gh_1 : qW_a -> R[zeta_a]
    IntMat ghost1_expr(long a) const;
    // gh_{a/d} = gh_1 of F_{a/d} : qW_a -> R[zeta_d]
    IntMat ghost_expr(long a, long d) const;

  private:
    long m_;
    std::shared_ptr<FinRing> R_;
    std::map<long, std::shared_ptr<FinWittEngine>> engines_;
    std::map<long, std::shared_ptr<QwLevel>> levels_;
    mutable std::map<std::pair<long, long>, IntMat> frob_cache_, versch_cache_;

    IntMat build_frobenius_expr(long a, long k) const;
    IntMat build_verschiebung_expr(long a, long k) const;
    void check_descends(const IntMat& map, const QwLevel& src, const QwLevel& dst,
                        const char* what) const;
};

}  // namespace qwk
