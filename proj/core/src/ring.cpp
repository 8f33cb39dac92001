#include "qwk/ring.hpp"

#include <sstream>

namespace qwk {

RingSpec RingSpec::integers() { return RingSpec{}; }

RingSpec RingSpec::zmod(const Int& N) {
    if (N < 2) throw std::invalid_argument("zmod modulus must be >= 2");
    RingSpec s;
    s.kind = RingKind::ZMod;
    s.modulus = N;
    return s;
}

static void check_vars(const std::vector<std::string>& vars) {
    if (vars.empty()) throw std::invalid_argument("polynomial ring needs variables");
    for (size_t i = 0; i < vars.size(); ++i)
        for (size_t j = i + 1; j < vars.size(); ++j)
            if (vars[i] == vars[j]) throw std::invalid_argument("duplicate variable name");
}

RingSpec RingSpec::poly_z(const std::vector<std::string>& vars) {
    check_vars(vars);
    RingSpec s;
    s.kind = RingKind::Poly;
    s.vars = vars;
    return s;
}

RingSpec RingSpec::poly_zmod(const Int& N, const std::vector<std::string>& vars) {
    if (N < 2) throw std::invalid_argument("zmod modulus must be >= 2");
    check_vars(vars);
    RingSpec s;
    s.kind = RingKind::Poly;
    s.modulus = N;
    s.vars = vars;
    return s;
}

RingSpec RingSpec::quot_zmod(const Int& N, const std::string& var, const QPoly& f) {
    RingSpec s = poly_zmod(N, {var});
    if (f.nvars() != 1) throw std::invalid_argument("quotient polynomial must be univariate");
    s.quotient = f;
    return s;
}

static std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t k = s.find(sep, pos);
        if (k == std::string::npos) {
            out.push_back(s.substr(pos));
            break;
        }
        out.push_back(s.substr(pos, k - pos));
        pos = k + 1;
    }
    return out;
}

RingSpec RingSpec::parse(const std::string& text) {
    auto parts = split(text, ':');
    if (parts.empty()) throw std::invalid_argument("empty ring spec");
    if (parts[0] == "z" && parts.size() == 1) return integers();
    if (parts[0] == "zmod" && parts.size() == 2) return zmod(Int(parts[1]));
    if (parts[0] == "poly" && parts.size() >= 2) {
        if (parts[1] == "z" && parts.size() == 3) return poly_z(split(parts[2], ','));
        if (parts[1] == "zmod" && parts.size() == 4)
            return poly_zmod(Int(parts[2]), split(parts[3], ','));
    }
    if (parts[0] == "quot" && parts.size() == 5 && parts[1] == "zmod") {
        std::string var = parts[3];
        return quot_zmod(Int(parts[2]), var, QPoly::parse(parts[4], {var}));
    }
    throw std::invalid_argument("bad ring spec: " + text);
}

std::string RingSpec::to_string() const {
    std::ostringstream os;
    switch (kind) {
        case RingKind::Integers:
            return "z";
        case RingKind::ZMod:
            os << "zmod:" << modulus.get_str();
            return os.str();
        case RingKind::Poly: {
            if (quotient) {
                os << "quot:zmod:" << modulus.get_str() << ":" << vars[0] << ":"
                   << quotient->to_string(vars);
                return os.str();
            }
            if (modulus == 0)
                os << "poly:z:";
            else
                os << "poly:zmod:" << modulus.get_str() << ":";
            for (size_t i = 0; i < vars.size(); ++i) {
                if (i) os << ",";
                os << vars[i];
            }
            return os.str();
        }
    }
    return "?";
}

Ring::Ring(RingSpec spec) : spec_(std::move(spec)) {
    if (spec_.quotient) {
        quot_deg_ = spec_.quotient->t_degree(0);
        Mono lead{0, {quot_deg_}};
        if (quot_deg_ == 0 || spec_.quotient->coeff(lead) != 1)
            throw std::invalid_argument("quotient polynomial must be monic of degree >= 1");
    }
}

Ring::Elem Ring::normalize(QPoly p) const {
    if (spec_.quotient) {
        // reduce by the monic quotient in the single variable
        const QPoly& f = *spec_.quotient;
        bool again = true;
        while (again) {
            again = false;
            for (const auto& [m, c] : p.terms()) {
                if (m.t[0] >= quot_deg_) {
                    Mono shift = m;
                    shift.t[0] -= quot_deg_;
                    Int coef = c;
                    for (const auto& [fm, fc] : f.terms()) {
                        Mono mm = shift;
                        mm.t[0] += fm.t[0];
                        p.add_term(mm, -coef * fc);
                    }
                    again = true;
                    break;
                }
            }
        }
    }
    if (spec_.modulus != 0) p = p.reduce_coeffs_mod(spec_.modulus);
    return p;
}

Ring::Elem Ring::from_int(const Int& c) const { return normalize(QPoly::constant(c, nvars())); }

Ring::Elem Ring::pow(const Elem& a, unsigned long e) const {
    Elem r = one();
    Elem b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

bool Ring::is_finite() const {
    if (spec_.kind == RingKind::Integers) return false;
    if (spec_.kind == RingKind::ZMod) return true;
    return spec_.modulus != 0 && spec_.quotient.has_value();
}

Int Ring::size() const {
    if (!is_finite()) throw std::domain_error("Ring::size: ring is infinite");
    if (spec_.kind == RingKind::ZMod) return spec_.modulus;
    return int_pow(spec_.modulus, quot_deg_);
}

std::vector<Ring::Elem> Ring::enumerate() const {
    if (!is_finite()) throw std::domain_error("Ring::enumerate: ring is infinite");
    std::vector<Elem> out;
    if (spec_.kind == RingKind::ZMod) {
        for (Int c = 0; c < spec_.modulus; ++c) out.push_back(from_int(c));
        return out;
    }
    // (Z/N)[x]/(f): coefficient vectors of length deg f
    std::vector<Int> coeffs(quot_deg_, 0);
    while (true) {
        QPoly p(1);
        for (uint32_t i = 0; i < quot_deg_; ++i) p.add_term(Mono{0, {i}}, coeffs[i]);
        out.push_back(p);
        uint32_t i = 0;
        for (; i < quot_deg_; ++i) {
            coeffs[i] += 1;
            if (coeffs[i] < spec_.modulus) break;
            coeffs[i] = 0;
        }
        if (i == quot_deg_) break;
    }
    return out;
}

Ring::Elem Ring::div_exact_int(const Elem& a, const Int& n) const {
    if (!is_torsion_free())
        throw std::domain_error("div_exact_int: not torsion-free");
    return a.div_exact_int(n);
}

}  // namespace qwk
