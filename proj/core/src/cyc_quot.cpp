#include "qwk/cyc_quot.hpp"

#include <sstream>

#include "qwk/cyclotomic.hpp"

namespace qwk {

CycQuotOps::CycQuotOps(const Ring& ring, long m) : ring_(ring), m_(m) {
    if (m < 1) throw std::invalid_argument("CycQuotOps: m >= 1 required");
}

CycQuot CycQuotOps::zero() const {
    CycQuot a;
    a.m = m_;
    a.coeffs.assign((size_t)m_, ring_.zero());
    return a;
}

CycQuot CycQuotOps::one() const { return from_ring(ring_.one()); }

CycQuot CycQuotOps::from_ring(const QPoly& r) const {
    CycQuot a = zero();
    a.coeffs[0] = ring_.normalize(r);
    return a;
}

CycQuot CycQuotOps::q_power(long e) const {
    CycQuot a = zero();
    a.coeffs[(size_t)(((e % m_) + m_) % m_)] = ring_.one();
    return a;
}

CycQuot CycQuotOps::from_coeffs(std::vector<QPoly> coeffs) const {
    if ((long)coeffs.size() != m_) throw std::invalid_argument("CycQuot: wrong length");
    CycQuot a;
    a.m = m_;
    a.coeffs = std::move(coeffs);
    for (auto& c : a.coeffs) c = ring_.normalize(c);
    return a;
}

CycQuot CycQuotOps::from_qpoly(const QPoly& p) const {
    CycQuot a = zero();
    for (const auto& [mono, c] : p.terms()) {
        if (mono.tdeg() != 0) throw std::invalid_argument("from_qpoly: T-variables present");
        size_t j = mono.qexp % (uint32_t)m_;
        a.coeffs[j] = ring_.add(a.coeffs[j], ring_.from_int(c));
    }
    return a;
}

CycQuot CycQuotOps::add(const CycQuot& a, const CycQuot& b) const {
    CycQuot c = zero();
    for (long j = 0; j < m_; ++j) c.coeffs[j] = ring_.add(a.coeffs[j], b.coeffs[j]);
    return c;
}

CycQuot CycQuotOps::sub(const CycQuot& a, const CycQuot& b) const {
    CycQuot c = zero();
    for (long j = 0; j < m_; ++j) c.coeffs[j] = ring_.sub(a.coeffs[j], b.coeffs[j]);
    return c;
}

CycQuot CycQuotOps::neg(const CycQuot& a) const {
    CycQuot c = zero();
    for (long j = 0; j < m_; ++j) c.coeffs[j] = ring_.neg(a.coeffs[j]);
    return c;
}

CycQuot CycQuotOps::mul(const CycQuot& a, const CycQuot& b) const {
    CycQuot c = zero();
    for (long i = 0; i < m_; ++i) {
        if (ring_.is_zero(a.coeffs[i])) continue;
        for (long j = 0; j < m_; ++j) {
            if (ring_.is_zero(b.coeffs[j])) continue;
            long k = (i + j) % m_;
            c.coeffs[k] = ring_.add(c.coeffs[k], ring_.mul(a.coeffs[i], b.coeffs[j]));
        }
    }
    return c;
}

CycQuot CycQuotOps::mul_int(const CycQuot& a, const Int& c) const {
    CycQuot r = zero();
    for (long j = 0; j < m_; ++j) r.coeffs[j] = ring_.mul_int(a.coeffs[j], c);
    return r;
}

CycQuot CycQuotOps::mul_qpoly(const CycQuot& a, const QPoly& p) const {
    CycQuot r = zero();
    for (const auto& [mono, c] : p.terms()) {
        if (mono.tdeg() != 0) throw std::invalid_argument("mul_qpoly: T-variables present");
        for (long j = 0; j < m_; ++j) {
            long k = (j + (long)mono.qexp) % m_;
            r.coeffs[k] = ring_.add(r.coeffs[k], ring_.mul_int(a.coeffs[j], c));
        }
    }
    return r;
}

CycQuot CycQuotOps::pow(const CycQuot& a, unsigned long e) const {
    CycQuot r = one();
    CycQuot b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

bool CycQuotOps::is_zero(const CycQuot& a) const {
    for (const auto& c : a.coeffs)
        if (!c.is_zero()) return false;
    return true;
}

bool CycQuotOps::equal(const CycQuot& a, const CycQuot& b) const {
    return a.m == b.m && a.coeffs == b.coeffs;
}

CycQuot CycQuotOps::reduce_to(const CycQuot& a, long d) const {
    if (m_ % d != 0) throw std::invalid_argument("reduce_to: d must divide m");
    CycQuotOps sub(ring_, d);
    CycQuot r = sub.zero();
    for (long j = 0; j < m_; ++j) r.coeffs[j % d] = ring_.add(r.coeffs[j % d], a.coeffs[j]);
    return r;
}

CycQuot CycQuotOps::lift_to(const CycQuot& a, long M) const {
    if (M % m_ != 0) throw std::invalid_argument("lift_to: m must divide M");
    CycQuotOps up(ring_, M);
    CycQuot r = up.zero();
    for (long j = 0; j < m_; ++j) r.coeffs[j] = a.coeffs[j];
    return r;
}

std::vector<QPoly> CycQuotOps::mod_phi(const CycQuot& a, long d) const {
    const QPoly& phi = cyclotomic(d);
    long deg = (long)phi.q_degree();
    std::vector<QPoly> rem = a.coeffs;
    for (long j = m_ - 1; j >= deg; --j) {
        if (ring_.is_zero(rem[j])) continue;
        QPoly lead = rem[j];
        rem[j] = ring_.zero();
        for (const auto& [mono, c] : phi.terms()) {
            if ((long)mono.qexp == deg) continue;
            long k = j - deg + (long)mono.qexp;
            rem[k] = ring_.sub(rem[k], ring_.mul_int(lead, c));
        }
    }
    rem.resize((size_t)deg);
    return rem;
}

std::string CycQuotOps::to_string(const CycQuot& a) const {
    // as a single polynomial in q when the base ring is q-free
    std::ostringstream os;
    bool first = true;
    for (long j = m_ - 1; j >= 0; --j) {
        if (ring_.is_zero(a.coeffs[j])) continue;
        if (!first) os << " + ";
        first = false;
        std::string c = ring_.to_string(a.coeffs[j]);
        bool composite = c.find(" + ") != std::string::npos;
        if (composite) os << "(" << c << ")";
        else os << c;
        if (j == 1) os << "*q";
        else if (j > 1) os << "*q^" << j;
    }
    if (first) return "0";
    return os.str();
}

}  // namespace qwk
