#include "qwk/cyclotomic.hpp"

#include <mutex>

namespace qwk {

namespace {
std::map<long, QPoly> g_cyclo;
std::mutex g_cyclo_mutex;
}  // namespace

QPoly q_power_minus_one(long m) {
    QPoly p = QPoly::q_power((uint32_t)m);
    p.add_term(Mono{0, {}}, -1);
    return p;
}

static const QPoly& cyclotomic_locked(long m) {
    auto it = g_cyclo.find(m);
    if (it != g_cyclo.end()) return it->second;
    QPoly num = q_power_minus_one(m);
    for (long d : divisors_of(m)) {
        if (d == m) continue;
        num = num.div_exact_monic_q(cyclotomic_locked(d));
    }
    return g_cyclo.emplace(m, std::move(num)).first->second;
}

const QPoly& cyclotomic(long m) {
    if (m < 1) throw std::invalid_argument("cyclotomic: m >= 1 required");
    std::lock_guard<std::mutex> lock(g_cyclo_mutex);
    return cyclotomic_locked(m);
}

void warm_cyclotomic_cache(long up_to) {
    std::lock_guard<std::mutex> lock(g_cyclo_mutex);
    for (long m = 1; m <= up_to; ++m) cyclotomic_locked(m);
}

QPoly q_analogue(long m, long d) {
    if (d < 1 || m < 1 || m % d != 0) throw std::invalid_argument("q_analogue: d must divide m");
    QPoly p;
    for (long k = 0; k < m / d; ++k) p.add_term(Mono{(uint32_t)(d * k), {}}, 1);
    return p;
}

static std::vector<Int> poly_coeff_vector(const QPoly& p, size_t len) {
    std::vector<Int> v(len, 0);
    for (const auto& [mono, c] : p.terms()) v.at(mono.qexp) = c;
    return v;
}

JointQuotient cyclo_joint_quotient(long m, long n) {
    const QPoly& phi_m = cyclotomic(m);
    const QPoly& phi_n = cyclotomic(n);
    size_t rank_m = phi_m.q_degree();
    // relations: q^j * Phi_n mod Phi_m for j = 0 .. rank_m - 1
    IntMat rels(0, rank_m);
    QPoly cur = phi_n.divmod_monic_q(phi_m).second;
    for (size_t j = 0; j < rank_m; ++j) {
        rels.append_row(poly_coeff_vector(cur, rank_m));
        cur = (cur * QPoly::q_power(1)).divmod_monic_q(phi_m).second;
    }
    FgGroup g(rank_m, hnf(rels));
    JointQuotient out{g, g.is_trivial(), g.is_finite() ? g.order() : Int(0), std::nullopt,
                      std::nullopt, false};
    long lo = std::min(m, n), hi = std::max(m, n);
    if (hi % lo == 0 && hi != lo) {
        long ratio = hi / lo;
        auto ps = prime_factors_of(ratio);
        if (ps.size() == 1) {
            out.char_p = ps[0];
            out.rank = euler_phi(lo);
            out.matches_identification =
                g.is_finite() && g.order() == int_pow(Int(ps[0]), (unsigned long)*out.rank);
        }
    }
    return out;
}

PhiIdealWitness phi_ideal_check(long m, long degree_bound) {
    if (m < 2) throw std::invalid_argument("phi_ideal_check: m >= 2 required");
    const QPoly& phi = cyclotomic(m);
    if (degree_bound < (long)phi.q_degree())
        throw std::invalid_argument("phi_ideal_check: degree bound below deg Phi_m");
    PhiIdealWitness out{true, false, {}, degree_bound};
    auto primes = prime_factors_of(m);
    std::vector<QPoly> gens;
    for (long p : primes) {
        QPoly g = q_analogue(m, m / p);
        gens.push_back(g);
        try {
            (void)g.div_exact_monic_q(phi);
        } catch (const std::domain_error&) {
            out.containment_ok = false;
        }
    }
    // Phi_m = sum_p c_p * [p]_{q^{m/p}} with deg c_p <= degree_bound
    size_t width = 0;
    for (const auto& g : gens) width = std::max(width, (size_t)g.q_degree());
    width += (size_t)degree_bound + 1;
    size_t nunknowns = primes.size() * ((size_t)degree_bound + 1);
    IntMat a(nunknowns, width);
    size_t row = 0;
    for (const auto& g : gens)
        for (long k = 0; k <= degree_bound; ++k, ++row) {
            QPoly shifted = g * QPoly::q_power((uint32_t)k);
            auto v = poly_coeff_vector(shifted, width);
            a.set_row(row, v);
        }
    std::vector<Int> b = poly_coeff_vector(phi, width);
    auto sol = solve_left(snf(a), b);
    if (sol) {
        out.witness_found = true;
        QPoly check;
        for (size_t pi = 0; pi < primes.size(); ++pi) {
            QPoly c;
            for (long k = 0; k <= degree_bound; ++k) {
                const Int& coef = (*sol)[pi * ((size_t)degree_bound + 1) + (size_t)k];
                if (coef != 0) c.add_term(Mono{(uint32_t)k, {}}, coef);
            }
            out.cofactors[primes[pi]] = c;
            check += c * gens[pi];
        }
        if (!(check == phi)) throw std::logic_error("phi_ideal_check: witness fails to verify");
    }
    return out;
}

}  // namespace qwk
