#include "qwk/qpoly.hpp"

#include <sstream>

namespace qwk {

QPoly QPoly::constant(const Int& c, size_t nvars) {
    QPoly p(nvars);
    if (c != 0) p.terms_[Mono{0, std::vector<uint32_t>(nvars, 0)}] = c;
    return p;
}

QPoly QPoly::q_power(uint32_t e, size_t nvars) {
    QPoly p(nvars);
    p.terms_[Mono{e, std::vector<uint32_t>(nvars, 0)}] = 1;
    return p;
}

QPoly QPoly::variable(size_t i, size_t nvars) {
    QPoly p(nvars);
    Mono m{0, std::vector<uint32_t>(nvars, 0)};
    m.t[i] = 1;
    p.terms_[m] = 1;
    return p;
}

void QPoly::set_term(const Mono& m, const Int& c) {
    if (c == 0)
        terms_.erase(m);
    else
        terms_[m] = c;
}

void QPoly::add_term(const Mono& m, const Int& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_[m] = c;
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Int QPoly::coeff(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Int(0) : it->second;
}

QPoly QPoly::operator+(const QPoly& o) const {
    QPoly r = *this;
    r += o;
    return r;
}

QPoly& QPoly::operator+=(const QPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

QPoly QPoly::operator-(const QPoly& o) const {
    QPoly r = *this;
    r -= o;
    return r;
}

QPoly& QPoly::operator-=(const QPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

QPoly QPoly::operator-() const {
    QPoly r(nvars_);
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

QPoly QPoly::operator*(const QPoly& o) const {
    QPoly r(nvars_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            Mono m;
            m.qexp = ma.qexp + mb.qexp;
            m.t.resize(nvars_);
            for (size_t i = 0; i < nvars_; ++i) m.t[i] = ma.t[i] + mb.t[i];
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

QPoly QPoly::scaled(const Int& c) const {
    QPoly r(nvars_);
    if (c == 0) return r;
    for (const auto& [m, a] : terms_) r.terms_[m] = a * c;
    return r;
}

QPoly QPoly::pow(unsigned long e) const {
    QPoly r = constant(1, nvars_);
    QPoly b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

QPoly QPoly::div_exact_int(const Int& c) const {
    QPoly r(nvars_);
    for (const auto& [m, a] : terms_) r.terms_[m] = int_div_exact(a, c);
    return r;
}

std::pair<QPoly, QPoly> QPoly::divmod_monic_q(const QPoly& divisor) const {
    if (divisor.is_zero()) throw std::domain_error("divmod_monic_q: zero divisor");
    uint32_t dd = divisor.q_degree();
    const Mono lead{dd, std::vector<uint32_t>(divisor.nvars_, 0)};
    if (divisor.coeff(lead) != 1) throw std::domain_error("divmod_monic_q: divisor not monic in q");
    QPoly quot(nvars_), rem = *this;
    while (!rem.is_zero()) {
        // highest q-exponent term whose qexp >= dd, scanning per T-group
        const Mono* best = nullptr;
        for (const auto& [m, c] : rem.terms_)
            if (m.qexp >= dd && (!best || m.qexp > best->qexp ||
                                 (m.qexp == best->qexp && MonoLess{}(*best, m))))
                best = &m;
        if (!best) break;
        Mono shift = *best;
        shift.qexp -= dd;
        Int c = rem.coeff(*best);
        quot.add_term(shift, c);
        for (const auto& [dm, dc] : divisor.terms_) {
            Mono m = shift;
            m.qexp += dm.qexp;
            rem.add_term(m, -c * dc);
        }
    }
    return {quot, rem};
}

QPoly QPoly::div_exact_monic_q(const QPoly& divisor) const {
    auto [q, r] = divmod_monic_q(divisor);
    if (!r.is_zero()) throw std::domain_error("div_exact_monic_q: nonzero remainder");
    return q;
}

QPoly QPoly::div_exact_var(size_t i) const {
    QPoly r(nvars_);
    for (const auto& [m, c] : terms_) {
        if (m.t[i] == 0) throw std::domain_error("div_exact_var: term not divisible");
        Mono s = m;
        s.t[i] -= 1;
        r.terms_[s] = c;
    }
    return r;
}

QPoly QPoly::subst_ti_qti(size_t i) const {
    QPoly r(nvars_);
    for (const auto& [m, c] : terms_) {
        Mono s = m;
        s.qexp += m.t[i];
        r.add_term(s, c);
    }
    return r;
}

QPoly QPoly::scale_all_t_exponents(uint32_t k) const {
    QPoly r(nvars_);
    for (const auto& [m, c] : terms_) {
        Mono s = m;
        for (auto& e : s.t) e *= k;
        r.add_term(s, c);
    }
    return r;
}

QPoly QPoly::reduce_q_mod(uint32_t m) const {
    QPoly r(nvars_);
    for (const auto& [mo, c] : terms_) {
        Mono s = mo;
        s.qexp %= m;
        r.add_term(s, c);
    }
    return r;
}

QPoly QPoly::reduce_coeffs_mod(const Int& N) const {
    QPoly r(nvars_);
    for (const auto& [m, c] : terms_) r.add_term(m, int_mod(c, N));
    return r;
}

uint32_t QPoly::q_degree() const {
    uint32_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.qexp);
    return d;
}

uint32_t QPoly::t_degree(size_t i) const {
    uint32_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.t[i]);
    return d;
}

uint32_t QPoly::total_t_degree() const {
    uint32_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.tdeg());
    return d;
}

std::string QPoly::to_string(const std::vector<std::string>& var_names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // leading (highest) term first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        os << it->second.get_str();
        if (it->first.qexp == 1)
            os << "*q";
        else if (it->first.qexp > 1)
            os << "*q^" << it->first.qexp;
        for (size_t i = 0; i < nvars_; ++i) {
            uint32_t e = it->first.t[i];
            if (e == 0) continue;
            os << "*" << var_names.at(i);
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

QPoly QPoly::parse(const std::string& text, const std::vector<std::string>& var_names) {
    QPoly p(var_names.size());
    std::string s = text;
    // strip whitespace
    std::string t;
    for (char c : s)
        if (!isspace((unsigned char)c)) t.push_back(c);
    if (t.empty() || t == "0") return p;
    // split on '+' at top level; also accept "a + -b" style already normalized
    std::vector<std::string> parts;
    size_t pos = 0;
    while (pos < t.size()) {
        size_t plus = t.find('+', pos == 0 ? 0 : pos);
        // don't split a leading '-'
        if (plus == std::string::npos) {
            parts.push_back(t.substr(pos));
            break;
        }
        parts.push_back(t.substr(pos, plus - pos));
        pos = plus + 1;
    }
    for (const auto& part : parts) {
        if (part.empty()) throw std::invalid_argument("QPoly::parse: empty term");
        Mono m{0, std::vector<uint32_t>(var_names.size(), 0)};
        Int coef = 1;
        bool have_coef = false;
        size_t i = 0;
        std::vector<std::string> factors;
        while (i < part.size()) {
            size_t star = part.find('*', i);
            if (star == std::string::npos) {
                factors.push_back(part.substr(i));
                break;
            }
            factors.push_back(part.substr(i, star - i));
            i = star + 1;
        }
        for (const auto& f : factors) {
            if (f.empty()) throw std::invalid_argument("QPoly::parse: empty factor");
            if (isdigit((unsigned char)f[0]) || f[0] == '-' || f[0] == '+') {
                coef *= Int(f);
                have_coef = true;
                continue;
            }
            size_t caret = f.find('^');
            std::string name = caret == std::string::npos ? f : f.substr(0, caret);
            uint32_t e = caret == std::string::npos ? 1 : (uint32_t)std::stoul(f.substr(caret + 1));
            if (name == "q") {
                m.qexp += e;
            } else {
                auto it = std::find(var_names.begin(), var_names.end(), name);
                if (it == var_names.end())
                    throw std::invalid_argument("QPoly::parse: unknown variable " + name);
                m.t[(size_t)(it - var_names.begin())] += e;
            }
        }
        (void)have_coef;
        p.add_term(m, coef);
    }
    return p;
}

}  // namespace qwk
