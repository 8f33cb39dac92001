#include "qwk/fin_ring.hpp"

namespace qwk {

FinRing::FinRing(const Ring& ring) : ring_(ring) {
    if (!ring.is_finite()) throw std::invalid_argument("FinRing: ring must be finite");
    Int n = ring.size();
    if (n > 4096) throw std::invalid_argument("FinRing: ring too large to tabulate");
    elems_ = ring.enumerate();
    modulus_ = ring.spec().modulus;
    for (size_t i = 0; i < elems_.size(); ++i)
        index_[ring_.to_string(elems_[i])] = (uint16_t)i;
    size_t sz = elems_.size();
    add_.resize(sz * sz);
    mul_.resize(sz * sz);
    neg_.resize(sz);
    for (size_t a = 0; a < sz; ++a) {
        neg_[a] = index_.at(ring_.to_string(ring_.neg(elems_[a])));
        for (size_t b = 0; b < sz; ++b) {
            add_[a * sz + b] = index_.at(ring_.to_string(ring_.add(elems_[a], elems_[b])));
            mul_[a * sz + b] = index_.at(ring_.to_string(ring_.mul(elems_[a], elems_[b])));
        }
    }
    zero_ = index_.at(ring_.to_string(ring_.zero()));
    one_ = index_.at(ring_.to_string(ring_.one()));
}

uint16_t FinRing::from_int(const Int& c) const {
    return index_.at(ring_.to_string(ring_.from_int(c)));
}

uint16_t FinRing::index_of(const QPoly& e) const {
    return index_.at(ring_.to_string(ring_.normalize(e)));
}

uint16_t FinRing::pow(uint16_t a, unsigned long e) const {
    uint16_t r = one_;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

long FinRing::add_order(uint16_t a) const {
    long n = 1;
    uint16_t x = a;
    while (x != zero_) {
        x = add(x, a);
        ++n;
        if (n > (long)size() + 1) throw std::logic_error("FinRing: bad addition table");
    }
    return n;
}

FinWittEngine::FinWittEngine(const FinRing& R, long m) : R_(R), m_(m), trunc_(m) {
    auto table = WittTable::get(m);
    for (size_t i = 0; i < trunc_.size(); ++i) {
        add_c_.push_back(compile(table->add_poly[i]));
        mul_c_.push_back(compile(table->mul_poly[i]));
        neg_c_.push_back(compile(table->neg_poly[i]));
    }
    for (const auto& [k, fps] : table->frob_poly) {
        auto& v = frob_c_[k];
        for (const auto& p : fps) v.push_back(compile(p));
    }
}

FinWittEngine::CPoly FinWittEngine::compile(const QPoly& p) const {
    CPoly c;
    for (const auto& [mono, coef] : p.terms()) {
        CTerm t;
        t.coeff = R_.from_int(coef);
        if (t.coeff == R_.zero()) continue;
        if (mono.qexp != 0) throw std::logic_error("compile: unexpected q");
        for (size_t i = 0; i < mono.t.size(); ++i)
            if (mono.t[i]) t.factors.emplace_back((uint16_t)i, (uint16_t)mono.t[i]);
        c.terms.push_back(std::move(t));
    }
    return c;
}

uint16_t FinWittEngine::eval(const CPoly& p, const Elem& x, const Elem& y) const {
    size_t k = trunc_.size();
    uint16_t acc = R_.zero();
    for (const auto& t : p.terms) {
        uint16_t v = t.coeff;
        for (const auto& [slot, e] : t.factors) {
            uint16_t base = slot < k ? x[slot] : y[slot - k];
            v = R_.mul(v, R_.pow(base, e));
        }
        acc = R_.add(acc, v);
    }
    return acc;
}

FinWittEngine::Elem FinWittEngine::single_slot(size_t div_index, uint16_t r) const {
    Elem e = zero();
    e[div_index] = r;
    return e;
}

FinWittEngine::Elem FinWittEngine::add(const Elem& x, const Elem& y) const {
    Elem z(trunc_.size());
    for (size_t i = 0; i < z.size(); ++i) z[i] = eval(add_c_[i], x, y);
    return z;
}

FinWittEngine::Elem FinWittEngine::neg(const Elem& x) const {
    Elem z(trunc_.size());
    for (size_t i = 0; i < z.size(); ++i) z[i] = eval(neg_c_[i], x, {});
    return z;
}

FinWittEngine::Elem FinWittEngine::mul(const Elem& x, const Elem& y) const {
    Elem z(trunc_.size());
    for (size_t i = 0; i < z.size(); ++i) z[i] = eval(mul_c_[i], x, y);
    return z;
}

FinWittEngine::Elem FinWittEngine::mul_small(const Elem& x, long c) const {
    Elem acc = zero();
    Elem base = c < 0 ? neg(x) : x;
    unsigned long n = (unsigned long)(c < 0 ? -c : c);
    while (n) {
        if (n & 1) acc = add(acc, base);
        n >>= 1;
        if (n) base = add(base, base);
    }
    return acc;
}

bool FinWittEngine::is_zero(const Elem& x) const {
    for (uint16_t v : x)
        if (v != R_.zero()) return false;
    return true;
}

uint16_t FinWittEngine::ghost(const Elem& x, long n) const {
    uint16_t acc = R_.zero();
    for (size_t i = 0; i < trunc_.size(); ++i) {
        long d = trunc_.divisors[i];
        if (n % d != 0) continue;
        uint16_t t = R_.mul(R_.from_int(d), R_.pow(x[i], (unsigned long)(n / d)));
        acc = R_.add(acc, t);
    }
    return acc;
}

FinWittEngine::Elem FinWittEngine::frobenius(const Elem& x, long k,
                                             const FinWittEngine& target) const {
    if (k == 1) return x;
    if (target.m_ != m_ / k) throw std::invalid_argument("frobenius: wrong target engine");
    const auto& fp = frob_c_.at(k);
    Elem z(target.trunc_.size());
    for (size_t i = 0; i < z.size(); ++i) z[i] = eval(fp[i], x, {});
    return z;
}

FinWittEngine::Elem FinWittEngine::verschiebung(const Elem& x, long k,
                                                const FinWittEngine& source) const {
    if (source.m_ != m_ / k) throw std::invalid_argument("verschiebung: wrong source engine");
    Elem z = zero();
    for (size_t i = 0; i < source.trunc_.size(); ++i)
        z[trunc_.index_of(source.trunc_.divisors[i] * k)] = x[i];
    return z;
}

}  // namespace qwk
