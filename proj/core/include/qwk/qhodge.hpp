#pragma once

#include <map>

#include "qwk/cyclotomic.hpp"
#include "qwk/fg_abelian.hpp"

namespace qwk {

// Coefficients in Z[q]/(q^m - 1): slot j = coefficient of q^j.
struct CycZ {
    long m = 1;
    std::vector<Int> c;

    static CycZ zero(long m) { return CycZ{m, std::vector<Int>(m, 0)}; }
    static CycZ from_qpoly(long m, const QPoly& p);
    bool is_zero() const;
    bool operator==(const CycZ& o) const { return m == o.m && c == o.c; }
    CycZ operator+(const CycZ& o) const;
    CycZ operator-(const CycZ& o) const;
    CycZ operator-() const;
    CycZ operator*(const CycZ& o) const;
    CycZ scaled(const Int& k) const;
    CycZ mul_qpoly(const QPoly& p) const;   // p integer polynomial in q
    CycZ reduce_to(long d) const;           // fold exponents mod d
    CycZ lift_to(long M) const;             // canonical lift, m | M
    std::vector<Int> mod_phi(long d) const; // remainder mod Phi_d
};

// Basis element T^{v - 1_J} dT_J of the q-Hodge complex of Z[T_1..T_n] with the
// identity framing: v is the multidegree, J a subset of the support of v.
struct FormKey {
    std::vector<uint32_t> v;
    uint32_t J = 0;

    bool operator<(const FormKey& o) const { return std::tie(v, J) < std::tie(o.v, o.J); }
    bool operator==(const FormKey& o) const { return v == o.v && J == o.J; }
};

// Homogeneous-degree element of qHodge^i / (q^m - 1).
struct QForm {
    int degree = 0;
    std::map<FormKey, CycZ> comps;
};

class QHodge {
  public:
    QHodge(int nvars, long m) : n_(nvars), m_(m) {}

    int nvars() const { return n_; }
    long m() const { return m_; }

    QForm zero(int degree) const { return QForm{degree, {}}; }
    QForm monomial(const std::vector<uint32_t>& v, uint32_t J, CycZ coeff) const;
    // 0-form from a polynomial in q and the T-variables
    QForm from_poly(const QPoly& f) const;

    QForm add(const QForm& a, const QForm& b) const;
    QForm sub(const QForm& a, const QForm& b) const;
    QForm neg(const QForm& a) const;
    QForm scale(const QForm& a, const Int& k) const;
    QForm mul_qpoly(const QForm& a, const QPoly& p) const;
    bool is_zero(const QForm& a) const;

    // non-commutative wedge with the rule dT_i ^ f = gamma_i(f) dT_i
    QForm wedge(const QForm& a, const QForm& b) const;
    // (q-1) q-nabla with Koszul signs; preserves multidegree; d o d = 0
    QForm differential(const QForm& a) const;
    // Bockstein of a cocycle mod q^m-1: lift mod (q^m-1)^2, differentiate,
    // divide exactly; throws if the input is not a cocycle
    QForm bockstein(const QForm& a) const;

    // canonical projection / multiplication by [m/d]_{q^d} between levels
    QForm reduce_to(const QForm& a, const QHodge& target) const;
    QForm mul_analogue_lift(const QForm& a, const QHodge& target) const;

    // coordinates of the multidegree-v component on the basis (J asc, q asc)
    std::vector<Int> component_coords(const QForm& a, const std::vector<uint32_t>& v) const;
    QForm from_component_coords(const std::vector<uint32_t>& v, int degree,
                                const std::vector<Int>& coords) const;
    std::vector<uint32_t> subsets_of_support(const std::vector<uint32_t>& v, int size) const;

    std::string to_string(const QForm& a, const std::vector<std::string>& vars) const;

  private:
    int n_;
    long m_;
};

// gamma_i and the Jackson q-derivative on polynomials in q and T-variables
QPoly gamma_op(const QPoly& f, size_t i);
QPoly q_partial(const QPoly& f, size_t i);

// Tensor product of two-term complexes (ring --scalar--> ring) over
// Z[q]/(q^m-1); degree i has rank C(#scalars, i) * m over Z.
struct KoszulScalarComplex {
    long m = 1;
    std::vector<QPoly> scalars;  // univariate integer polynomials in q

    size_t nfac() const { return scalars.size(); }
    size_t rank(int i) const;              // number of q-blocks in degree i
    IntMat differential(int i) const;      // Z-matrix (rank(i)*m) x (rank(i+1)*m)
};

// The q-Hodge complex of Z[T_1..T_n]/(q^m-1) restricted to multidegree v.
KoszulScalarComplex multidegree_complex(long m, const std::vector<uint32_t>& v);

// H^i as a Z-module presentation with q-action carried through; modulus 0
// computes integrally, modulus p^M computes with Z/p^M coefficients.
struct FGModulePresentation {
    size_t ngens = 0;
    IntMat rels;
    IntMat q_action;
    IntMat cocycle_lifts;  // rows = chosen cocycles in the ambient degree-i space

    std::vector<Int> invariant_factors() const { return FgGroup(ngens, rels).invariant_factors(); }
};

FGModulePresentation cohomology(const KoszulScalarComplex& cx, int i, const Int& modulus = 0);

// two-term complex K_{alpha,e} over Z[q]/(q^{p^alpha}-1), scalar q^{p^e}-1
KoszulScalarComplex build_k(long p, long alpha, long e);

struct KeCohomologyReport {
    std::vector<Int> h0_factors, h1_factors;  // at precision p^M
    bool free_of_expected_rank;               // both = (Z/p^M)^{p^e}
    bool h0_generated_by_analogue;            // [p^{alpha-e}]_{q^{p^e}} generates H^0 integrally
};
KeCohomologyReport ke_cohomology(long p, long alpha, long e, long precision_exp);

// The explicit chain isomorphism K_{a,e1} (x) K_{a,e2} = K_{a,e2}[-1] (+) K_{a,e2},
// checked exactly over Z[q]/(q^{p^alpha}-1): both squares commute and the
// middle map is unipotent.
struct KeTensorIsoReport {
    bool squares_commute = false;
    bool invertible = false;
    bool pass() const { return squares_commute && invertible; }
};
KeTensorIsoReport ke_tensor_iso(long p, long alpha, long e1, long e2);

}  // namespace qwk
