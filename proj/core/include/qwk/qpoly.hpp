#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qwk/int_types.hpp"

namespace qwk {

// Exponent key of one term: a power of q plus one power per T-variable.
struct Mono {
    uint32_t qexp = 0;
    std::vector<uint32_t> t;

    uint32_t tdeg() const {
        uint32_t s = 0;
        for (uint32_t e : t) s += e;
        return s;
    }
    bool operator==(const Mono& o) const { return qexp == o.qexp && t == o.t; }
};

// Canonical term order: total T-degree, then lex T-exponents, then q-exponent.
struct MonoLess {
    bool operator()(const Mono& a, const Mono& b) const {
        uint32_t da = a.tdeg(), db = b.tdeg();
        if (da != db) return da < db;
        if (a.t != b.t) return a.t < b.t;
        return a.qexp < b.qexp;
    }
};

// Sparse exact polynomial in q and a fixed number of T-variables, integer
// coefficients. No zero coefficients are stored.
class QPoly {
  public:
    QPoly() = default;
    explicit QPoly(size_t nvars) : nvars_(nvars) {}

    static QPoly constant(const Int& c, size_t nvars = 0);
    static QPoly q_power(uint32_t e, size_t nvars = 0);
    static QPoly variable(size_t i, size_t nvars);

    size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const QPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const QPoly& o) const { return !(*this == o); }

    const std::map<Mono, Int, MonoLess>& terms() const { return terms_; }
    void set_term(const Mono& m, const Int& c);
    void add_term(const Mono& m, const Int& c);
    Int coeff(const Mono& m) const;

    QPoly operator+(const QPoly& o) const;
    QPoly operator-(const QPoly& o) const;
    QPoly operator-() const;
    QPoly operator*(const QPoly& o) const;
    QPoly& operator+=(const QPoly& o);
    QPoly& operator-=(const QPoly& o);

    QPoly scaled(const Int& c) const;
    QPoly pow(unsigned long e) const;

    // Throws on inexact coefficient division.
    QPoly div_exact_int(const Int& c) const;

    // Long division by a monic-in-q divisor with no T-variables; throws unless
    // the remainder vanishes.
    QPoly div_exact_monic_q(const QPoly& divisor) const;
    // Quotient/remainder by a monic-in-q divisor (no T-variables).
    std::pair<QPoly, QPoly> divmod_monic_q(const QPoly& divisor) const;

    // Divide by the single variable T_i, asserting every term has t[i] >= 1.
    QPoly div_exact_var(size_t i) const;

    // T_i -> q*T_i, used for q-shift operators.
    QPoly subst_ti_qti(size_t i) const;
    // T_j -> T_j^k for every j (Adams substitution on polynomial rings).
    QPoly scale_all_t_exponents(uint32_t k) const;

    // Reduce q-exponents modulo m and collect.
    QPoly reduce_q_mod(uint32_t m) const;
    // Reduce every coefficient modulo N into [0, N).
    QPoly reduce_coeffs_mod(const Int& N) const;

    uint32_t q_degree() const;
    uint32_t t_degree(size_t i) const;
    uint32_t total_t_degree() const;

    // Substitute ring-agnostic values for the variables via caller-provided
    // multiply/add on an accumulator type.
    template <typename Elem, typename Ctx>
    Elem evaluate(const Ctx& ctx, const std::vector<Elem>& values) const;

    std::string to_string(const std::vector<std::string>& var_names) const;
    static QPoly parse(const std::string& text, const std::vector<std::string>& var_names);

  private:
    size_t nvars_ = 0;
    std::map<Mono, Int, MonoLess> terms_;
};

// Evaluation support: Ctx must provide Elem zero(), one(), add(a,b), mul(a,b),
// from_int(Int). q must not occur (coefficient rings are q-free).
template <typename Elem, typename Ctx>
Elem QPoly::evaluate(const Ctx& ctx, const std::vector<Elem>& values) const {
    std::vector<std::vector<Elem>> pow_cache(nvars_);
    for (size_t i = 0; i < nvars_; ++i) pow_cache[i].push_back(ctx.one());
    Elem acc = ctx.zero();
    for (const auto& [mono, c] : terms_) {
        if (mono.qexp != 0) throw std::domain_error("QPoly::evaluate: q present");
        Elem term = ctx.from_int(c);
        for (size_t i = 0; i < nvars_; ++i) {
            uint32_t e = mono.t[i];
            auto& pows = pow_cache[i];
            while (pows.size() <= e) pows.push_back(ctx.mul(pows.back(), values[i]));
            if (e) term = ctx.mul(term, pows[e]);
        }
        acc = ctx.add(acc, term);
    }
    return acc;
}

}  // namespace qwk
