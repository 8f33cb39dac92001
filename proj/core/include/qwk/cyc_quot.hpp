#pragma once

#include "qwk/ring.hpp"

namespace qwk {

// Element of R[q]/(q^m - 1): exactly m coefficients, slot j = coefficient of q^j.
struct CycQuot {
    long m = 1;
    std::vector<QPoly> coeffs;
};

class CycQuotOps {
  public:
    CycQuotOps(const Ring& ring, long m);

    const Ring& ring() const { return ring_; }
    long m() const { return m_; }

    CycQuot zero() const;
    CycQuot one() const;
    CycQuot from_ring(const QPoly& r) const;
    CycQuot q_power(long e) const;
    CycQuot from_coeffs(std::vector<QPoly> coeffs) const;
    // Integer polynomial in q, reduced mod q^m - 1, coefficients mapped into R.
    CycQuot from_qpoly(const QPoly& p) const;

    CycQuot add(const CycQuot& a, const CycQuot& b) const;
    CycQuot sub(const CycQuot& a, const CycQuot& b) const;
    CycQuot neg(const CycQuot& a) const;
    CycQuot mul(const CycQuot& a, const CycQuot& b) const;
    CycQuot mul_int(const CycQuot& a, const Int& c) const;
    // Multiply by an integer polynomial in q (e.g. a q-analogue).
    CycQuot mul_qpoly(const CycQuot& a, const QPoly& p) const;
    CycQuot pow(const CycQuot& a, unsigned long e) const;

    bool is_zero(const CycQuot& a) const;
    bool equal(const CycQuot& a, const CycQuot& b) const;

    // Canonical projection R[q]/(q^m-1) -> R[q]/(q^d-1), fold q-exponents.
    CycQuot reduce_to(const CycQuot& a, long d) const;
    // Canonical degree-preserving lift into R[q]/(q^M-1), M a multiple of m.
    CycQuot lift_to(const CycQuot& a, long M) const;

    // Remainder modulo the (monic, integer) cyclotomic Phi_d; returns the
    // phi(d) low coefficients.
    std::vector<QPoly> mod_phi(const CycQuot& a, long d) const;

    std::string to_string(const CycQuot& a) const;

  private:
    Ring ring_;
    long m_;
};

}  // namespace qwk
