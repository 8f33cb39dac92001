#pragma once

#include "qwk/lambda.hpp"
#include "qwk/qhodge.hpp"

namespace qwk {

// The cohomological model: H^*(qHodge/(q^m-1)) of Z[T_1..T_n], with Frobenius
// = reduction mod q^d-1, Verschiebung = multiplication by [m/d]_{q^d}, and the
// Bockstein as differential. Identities are always compared at class level.
class CohomModel {
  public:
    CohomModel(int nvars, long m) : hodge_(nvars, m) {}

    const QHodge& hodge() const { return hodge_; }
    long m() const { return hodge_.m(); }
    int nvars() const { return hodge_.nvars(); }

    bool is_cocycle(const QForm& f) const;
    bool is_coboundary(const QForm& f) const;
    bool class_equal(const QForm& a, const QForm& b) const {
        return is_coboundary(hodge_.sub(a, b));
    }

    // generating cocycles of H^degree at multidegree v
    std::vector<QForm> h_generators(const std::vector<uint32_t>& v, int degree) const;
    // presentation of H^degree at multidegree v (integral or at a modulus)
    FGModulePresentation h_presentation(const std::vector<uint32_t>& v, int degree,
                                        const Int& modulus = 0) const;

  private:
    QHodge hodge_;
};

// F_{src.m/dst.m} : H^*(src) -> H^*(dst), dst.m | src.m
QForm model_frobenius(const CohomModel& src, const CohomModel& dst, const QForm& f);
// V_{dst.m/src.m} : H^*(src) -> H^*(dst), src.m | dst.m
QForm model_verschiebung(const CohomModel& src, const CohomModel& dst, const QForm& f);
// Bockstein beta_m
QForm model_bockstein(const CohomModel& model, const QForm& f);

// Degree-0 structure map: a lambda-model q-Witt vector over Z[T_1..T_n] lands
// in H^0 as a cocycle (checked).
QForm qw_structure_map(const CohomModel& model, const CycQuot& x);
// Image of tau_m(r) through the c-map.
QForm model_teichmuller(const CohomModel& model, const LambdaStructure& lam, const QPoly& r);

struct ModelCell {
    std::string key;
    std::string status;  // pass | fail | inconclusive
    std::string witness;
    bool stabilized = true;
};

bool cells_all_pass(const std::vector<ModelCell>& cells);

// q-V axioms (V-compatibility, chains, V-Teichmueller with r = T, d-after-V,
// V-PD) on the model, for all divisor pairs of m.
std::vector<ModelCell> suite_qv(long m, int nvars, int maxdeg, uint64_t seed, int trials);
// q-FV axioms (F o d o V = d, F-Teichmueller, coprime commutation, d-after-F,
// F o V, V o F, projection formula, F multiplicative).
std::vector<ModelCell> suite_qfv(long m, int nvars, int maxdeg, uint64_t seed, int trials);
// Verschiebung-sequence exactness at p-adic precision: the quotient of
// H^*(p^alpha) by im V_p + im beta V_p per multidegree vs the predicted
// cyclotomic de Rham pattern; rerun at prec+2 for stabilization.
std::vector<ModelCell> suite_vseq(long p, long alpha, int nvars, int maxdeg, long prec_exp);
// Ghost-map identification of the same quotient with the de Rham model tensor
// Z[zeta_{p^alpha}], plus gh kills im V samples.
std::vector<ModelCell> suite_ghost(long p, long alpha, int nvars, int maxdeg, long prec_exp);
// Desk-scale main-theorem check in degree 0 (B_m lattice vs annihilator
// lattice in Z[q]/(q^m-1,(q-1)^N), N and N+2) and degree 1 (H^1 structure vs
// the p-complete and localized predictions), one variable.
std::vector<ModelCell> suite_thm52(long m, int maxdeg, long prec_q);
// Grouped p-complete complexes: cohomology is free at precision p^M (p-torsion
// freeness) with the predicted rank; stabilization at M+2.
std::vector<ModelCell> suite_pcomplete(long p, long alpha, int nvars, int maxclass,
                                       long prec_exp);

}  // namespace qwk
