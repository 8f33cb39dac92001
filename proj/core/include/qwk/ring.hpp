#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qwk/qpoly.hpp"

namespace qwk {

enum class RingKind { Integers, ZMod, Poly };

// Coefficient rings: Z, Z/N, polynomials over those, and finite quotients
// (Z/N)[x]/(f) with f monic (the latter extends the base grammar so that
// rings like F_2[x]/(x^2) are expressible).
struct RingSpec {
    RingKind kind = RingKind::Integers;
    Int modulus = 0;  // 0 except for ZMod / Poly over ZMod
    std::vector<std::string> vars;
    std::optional<QPoly> quotient;  // monic univariate in vars[0]

    static RingSpec integers();
    static RingSpec zmod(const Int& N);
    static RingSpec poly_z(const std::vector<std::string>& vars);
    static RingSpec poly_zmod(const Int& N, const std::vector<std::string>& vars);
    static RingSpec quot_zmod(const Int& N, const std::string& var, const QPoly& f);

    // Grammar: z | zmod:N | poly:z:T1[,T2,...] | poly:zmod:N:T1[,...]
    //        | quot:zmod:N:x:POLY   (POLY in the polynomial text format)
    static RingSpec parse(const std::string& text);
    std::string to_string() const;
};

class Ring {
  public:
    using Elem = QPoly;

    explicit Ring(RingSpec spec);

    const RingSpec& spec() const { return spec_; }
    size_t nvars() const { return spec_.vars.size(); }

    Elem normalize(QPoly p) const;
    Elem zero() const { return QPoly(nvars()); }
    Elem one() const { return from_int(1); }
    Elem from_int(const Int& c) const;
    Elem var(size_t i) const { return QPoly::variable(i, nvars()); }

    Elem add(const Elem& a, const Elem& b) const { return normalize(a + b); }
    Elem sub(const Elem& a, const Elem& b) const { return normalize(a - b); }
    Elem neg(const Elem& a) const { return normalize(-a); }
    Elem mul(const Elem& a, const Elem& b) const { return normalize(a * b); }
    Elem mul_int(const Elem& a, const Int& c) const { return normalize(a.scaled(c)); }
    Elem pow(const Elem& a, unsigned long e) const;

    bool is_zero(const Elem& a) const { return a.is_zero(); }
    bool equal(const Elem& a, const Elem& b) const { return a == b; }

    bool is_torsion_free() const { return spec_.modulus == 0; }
    bool is_finite() const;
    Int size() const;  // throws if infinite
    std::vector<Elem> enumerate() const;

    // Exact division by an integer; throws on failure (torsion-free rings only).
    Elem div_exact_int(const Elem& a, const Int& n) const;

    std::string to_string(const Elem& a) const { return a.to_string(spec_.vars); }
    Elem parse(const std::string& s) const { return normalize(QPoly::parse(s, spec_.vars)); }

  private:
    RingSpec spec_;
    uint32_t quot_deg_ = 0;
};

}  // namespace qwk
