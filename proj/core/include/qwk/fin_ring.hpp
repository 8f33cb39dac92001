#pragma once

#include <map>

#include "qwk/witt.hpp"

namespace qwk {

// A finite commutative ring flattened to index tables. Elements are indices
// into the enumeration order of the underlying Ring.
class FinRing {
  public:
    explicit FinRing(const Ring& ring);

    const Ring& ring() const { return ring_; }
    size_t size() const { return elems_.size(); }
    uint16_t zero() const { return zero_; }
    uint16_t one() const { return one_; }
    uint16_t add(uint16_t a, uint16_t b) const { return add_[idx(a, b)]; }
    uint16_t mul(uint16_t a, uint16_t b) const { return mul_[idx(a, b)]; }
    uint16_t neg(uint16_t a) const { return neg_[a]; }
    uint16_t from_int(const Int& c) const;
    uint16_t index_of(const QPoly& e) const;
    const QPoly& elem(uint16_t i) const { return elems_[i]; }
    uint16_t pow(uint16_t a, unsigned long e) const;

    // additive order of an element
    long add_order(uint16_t a) const;

  private:
    size_t idx(uint16_t a, uint16_t b) const { return (size_t)a * elems_.size() + b; }

    Ring ring_;
    std::vector<QPoly> elems_;
    std::map<std::string, uint16_t> index_;
    std::vector<uint16_t> add_, mul_, neg_;
    uint16_t zero_ = 0, one_ = 0;
    Int modulus_;
};

// Witt vectors over a finite ring, with the universal structure polynomials
// compiled to index-table programs. Elements are divisor-indexed index tuples.
class FinWittEngine {
  public:
    using Elem = std::vector<uint16_t>;  // one slot per divisor of level m

    FinWittEngine(const FinRing& R, long m);

    const FinRing& coeffs() const { return R_; }
    long m() const { return m_; }
    const TruncationSet& trunc() const { return trunc_; }

    Elem zero() const { return Elem(trunc_.size(), R_.zero()); }
    Elem single_slot(size_t div_index, uint16_t r) const;
    Elem teichmuller(uint16_t r) const { return single_slot(0, r); }

    Elem add(const Elem& x, const Elem& y) const;
    Elem neg(const Elem& x) const;
    Elem mul(const Elem& x, const Elem& y) const;
    Elem mul_small(const Elem& x, long c) const;
    bool is_zero(const Elem& x) const;

    uint16_t ghost(const Elem& x, long n) const;

    // F_k lands in the engine for level m/k (caller supplies it).
    Elem frobenius(const Elem& x, long k, const FinWittEngine& target) const;
    Elem verschiebung(const Elem& x, long k, const FinWittEngine& source) const;

  private:
    struct CTerm {
        uint16_t coeff;
        std::vector<std::pair<uint16_t, uint16_t>> factors;  // (slot, exponent)
    };
    struct CPoly {
        std::vector<CTerm> terms;
    };

    CPoly compile(const QPoly& p) const;
    uint16_t eval(const CPoly& p, const Elem& x, const Elem& y) const;

    FinRing R_;
    long m_;
    TruncationSet trunc_;
    std::vector<CPoly> add_c_, mul_c_, neg_c_;
    std::map<long, std::vector<CPoly>> frob_c_;
};

}  // namespace qwk
