#include "qwk/qhodge.hpp"

#include <array>
#include <sstream>

namespace qwk {

CycZ CycZ::from_qpoly(long m, const QPoly& p) {
    CycZ z = zero(m);
    for (const auto& [mono, c] : p.terms()) {
        if (mono.tdeg() != 0) throw std::invalid_argument("CycZ: T-variables present");
        z.c[mono.qexp % m] += c;
    }
    return z;
}

bool CycZ::is_zero() const {
    for (const Int& x : c)
        if (x != 0) return false;
    return true;
}

CycZ CycZ::operator+(const CycZ& o) const {
    CycZ z = zero(m);
    for (long j = 0; j < m; ++j) z.c[j] = c[j] + o.c[j];
    return z;
}

CycZ CycZ::operator-(const CycZ& o) const {
    CycZ z = zero(m);
    for (long j = 0; j < m; ++j) z.c[j] = c[j] - o.c[j];
    return z;
}

CycZ CycZ::operator-() const {
    CycZ z = zero(m);
    for (long j = 0; j < m; ++j) z.c[j] = -c[j];
    return z;
}

CycZ CycZ::operator*(const CycZ& o) const {
    CycZ z = zero(m);
    for (long i = 0; i < m; ++i) {
        if (c[i] == 0) continue;
        for (long j = 0; j < m; ++j) z.c[(i + j) % m] += c[i] * o.c[j];
    }
    return z;
}

CycZ CycZ::scaled(const Int& k) const {
    CycZ z = zero(m);
    for (long j = 0; j < m; ++j) z.c[j] = c[j] * k;
    return z;
}

CycZ CycZ::mul_qpoly(const QPoly& p) const {
    CycZ z = zero(m);
    for (const auto& [mono, k] : p.terms())
        for (long j = 0; j < m; ++j) z.c[(j + mono.qexp) % m] += c[j] * k;
    return z;
}

CycZ CycZ::reduce_to(long d) const {
    if (m % d != 0) throw std::invalid_argument("CycZ::reduce_to: d must divide m");
    CycZ z = zero(d);
    for (long j = 0; j < m; ++j) z.c[j % d] += c[j];
    return z;
}

CycZ CycZ::lift_to(long M) const {
    if (M % m != 0) throw std::invalid_argument("CycZ::lift_to: m must divide M");
    CycZ z = zero(M);
    for (long j = 0; j < m; ++j) z.c[j] = c[j];
    return z;
}

std::vector<Int> CycZ::mod_phi(long d) const {
    const QPoly& phi = cyclotomic(d);
    long deg = (long)phi.q_degree();
    std::vector<Int> rem = c;
    for (long j = m - 1; j >= deg; --j) {
        if (rem[j] == 0) continue;
        Int lead = rem[j];
        rem[j] = 0;
        for (const auto& [mono, k] : phi.terms()) {
            if ((long)mono.qexp == deg) continue;
            rem[j - deg + (long)mono.qexp] -= lead * k;
        }
    }
    rem.resize(deg);
    return rem;
}

QForm QHodge::monomial(const std::vector<uint32_t>& v, uint32_t J, CycZ coeff) const {
    if ((long)coeff.m != m_) throw std::invalid_argument("monomial: wrong coefficient modulus");
    if (v.size() != (size_t)n_) throw std::invalid_argument("monomial: wrong multidegree width");
    for (int i = 0; i < n_; ++i)
        if ((J >> i & 1u) && v[i] == 0)
            throw std::invalid_argument("monomial: J must lie in the support");
    QForm f;
    f.degree = __builtin_popcount(J);
    if (!coeff.is_zero()) f.comps[FormKey{v, J}] = std::move(coeff);
    return f;
}

QForm QHodge::from_poly(const QPoly& f) const {
    QForm out = zero(0);
    for (const auto& [mono, c] : f.terms()) {
        std::vector<uint32_t> v = mono.t;
        v.resize((size_t)n_, 0);
        FormKey key{v, 0};
        auto it = out.comps.find(key);
        if (it == out.comps.end()) it = out.comps.emplace(key, CycZ::zero(m_)).first;
        it->second.c[mono.qexp % m_] += c;
    }
    for (auto it = out.comps.begin(); it != out.comps.end();)
        it = it->second.is_zero() ? out.comps.erase(it) : std::next(it);
    return out;
}

QForm QHodge::add(const QForm& a, const QForm& b) const {
    if (a.degree != b.degree) throw std::invalid_argument("form add: degree mismatch");
    QForm out = a;
    for (const auto& [k, c] : b.comps) {
        auto it = out.comps.find(k);
        if (it == out.comps.end()) {
            out.comps[k] = c;
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) out.comps.erase(it);
        }
    }
    return out;
}

QForm QHodge::neg(const QForm& a) const {
    QForm out = a;
    for (auto& [k, c] : out.comps) c = -c;
    return out;
}

QForm QHodge::sub(const QForm& a, const QForm& b) const { return add(a, neg(b)); }

QForm QHodge::scale(const QForm& a, const Int& k) const {
    QForm out = zero(a.degree);
    if (k == 0) return out;
    for (const auto& [key, c] : a.comps) out.comps[key] = c.scaled(k);
    return out;
}

QForm QHodge::mul_qpoly(const QForm& a, const QPoly& p) const {
    QForm out = zero(a.degree);
    for (const auto& [key, c] : a.comps) {
        CycZ x = c.mul_qpoly(p);
        if (!x.is_zero()) out.comps[key] = std::move(x);
    }
    return out;
}

bool QHodge::is_zero(const QForm& a) const { return a.comps.empty(); }

QForm QHodge::wedge(const QForm& a, const QForm& b) const {
    QForm out = zero(a.degree + b.degree);
    for (const auto& [ka, ca] : a.comps)
        for (const auto& [kb, cb] : b.comps) {
            if (ka.J & kb.J) continue;
            // function part of b is T^{w2}, w2 = v2 - 1_{J2}
            uint32_t twist = 0;
            for (int i = 0; i < n_; ++i)
                if (ka.J >> i & 1u) twist += kb.v[i] - ((kb.J >> i & 1u) ? 1 : 0);
            // merge sign: inversions between J1 and J2
            int inv = 0;
            for (int i = 0; i < n_; ++i)
                if (kb.J >> i & 1u)
                    for (int l = i + 1; l < n_; ++l)
                        if (ka.J >> l & 1u) ++inv;
            FormKey key;
            key.v.resize((size_t)n_);
            for (int i = 0; i < n_; ++i) key.v[i] = ka.v[i] + kb.v[i];
            key.J = ka.J | kb.J;
            CycZ term = (ca * cb).mul_qpoly(QPoly::q_power(twist % (uint32_t)m_));
            if (inv % 2) term = -term;
            auto it = out.comps.find(key);
            if (it == out.comps.end()) {
                if (!term.is_zero()) out.comps[key] = std::move(term);
            } else {
                it->second = it->second + term;
                if (it->second.is_zero()) out.comps.erase(it);
            }
        }
    return out;
}

QForm QHodge::differential(const QForm& a) const {
    QForm out = zero(a.degree + 1);
    for (const auto& [key, c] : a.comps)
        for (int j = 0; j < n_; ++j) {
            if (key.J >> j & 1u) continue;
            uint32_t wj = key.v[j];
            if (wj == 0) continue;
            int sign = __builtin_popcount(key.J & ((1u << j) - 1u)) % 2 ? -1 : 1;
            // (q-1) qpartial_j (T^{w_j}) = (q^{w_j} - 1) T^{w_j - 1}
            QPoly scalar = QPoly::q_power(wj % (uint32_t)m_);
            scalar.add_term(Mono{0, {}}, -1);
            CycZ term = c.mul_qpoly(scalar);
            if (sign < 0) term = -term;
            FormKey nk{key.v, key.J | (1u << j)};
            auto it = out.comps.find(nk);
            if (it == out.comps.end()) {
                if (!term.is_zero()) out.comps[nk] = std::move(term);
            } else {
                it->second = it->second + term;
                if (it->second.is_zero()) out.comps.erase(it);
            }
        }
    return out;
}

QForm QHodge::bockstein(const QForm& a) const {
    // differentiate the canonical lift in Z[q]/((q^m-1)^2), coefficients of
    // degree < 2m, then divide by q^m-1
    long m2 = 2 * m_;
    auto mul_scalar_sq = [&](const std::vector<Int>& coeff, uint32_t wj) {
        // coeff (len 2m) times q^{wj} - 1 modulo (q^m-1)^2; with u = q^m,
        // u^s = 1 + s(u-1) mod (u-1)^2, so q^{sm+t} = s q^{m+t} - (s-1) q^t
        std::vector<Int> out(m2, 0);
        for (long j = 0; j < m2; ++j) {
            if (coeff[j] == 0) continue;
            long e = j + (long)wj;
            long s = e / m_, t = e % m_;
            out[m_ + t] += s * coeff[j];
            out[t] -= (s - 1) * coeff[j];
            out[j] -= coeff[j];
        }
        return out;
    };
    std::map<FormKey, std::vector<Int>> lifted;
    for (const auto& [key, c] : a.comps)
        for (int j = 0; j < n_; ++j) {
            if (key.J >> j & 1u) continue;
            uint32_t wj = key.v[j];
            if (wj == 0) continue;
            int sign = __builtin_popcount(key.J & ((1u << j) - 1u)) % 2 ? -1 : 1;
            std::vector<Int> lift(m2, 0);
            for (long t = 0; t < m_; ++t) lift[t] = sign > 0 ? c.c[t] : -c.c[t];
            std::vector<Int> prod = mul_scalar_sq(lift, wj);
            FormKey nk{key.v, key.J | (1u << j)};
            auto it = lifted.find(nk);
            if (it == lifted.end()) {
                lifted[nk] = std::move(prod);
            } else {
                for (long t = 0; t < m2; ++t) it->second[t] += prod[t];
            }
        }
    QForm out = zero(a.degree + 1);
    for (auto& [key, c2] : lifted) {
        // c2 = (q^m - 1) * b requires c2[j] == -b_j, c2[m+j] == b_j
        CycZ b = CycZ::zero(m_);
        bool nonzero = false;
        for (long j = 0; j < m_; ++j) {
            if (c2[j] + c2[m_ + j] != 0)
                throw std::domain_error("bockstein: input is not a cocycle");
            b.c[j] = c2[m_ + j];
            if (b.c[j] != 0) nonzero = true;
        }
        if (nonzero) out.comps[key] = std::move(b);
    }
    return out;
}

QForm QHodge::reduce_to(const QForm& a, const QHodge& target) const {
    QForm out = target.zero(a.degree);
    for (const auto& [key, c] : a.comps) {
        CycZ r = c.reduce_to(target.m());
        if (!r.is_zero()) out.comps[key] = std::move(r);
    }
    return out;
}

QForm QHodge::mul_analogue_lift(const QForm& a, const QHodge& target) const {
    QForm out = target.zero(a.degree);
    QPoly analogue = q_analogue(target.m(), m_);
    for (const auto& [key, c] : a.comps) {
        CycZ r = c.lift_to(target.m()).mul_qpoly(analogue);
        if (!r.is_zero()) out.comps[key] = std::move(r);
    }
    return out;
}

std::vector<uint32_t> QHodge::subsets_of_support(const std::vector<uint32_t>& v,
                                                 int size) const {
    std::vector<int> support;
    for (int i = 0; i < n_; ++i)
        if (v[i] > 0) support.push_back(i);
    std::vector<uint32_t> out;
    for (uint32_t mask = 0; mask < (1u << support.size()); ++mask) {
        if (__builtin_popcount(mask) != size) continue;
        uint32_t J = 0;
        for (size_t t = 0; t < support.size(); ++t)
            if (mask >> t & 1u) J |= 1u << support[t];
        out.push_back(J);
    }
    return out;
}

std::vector<Int> QHodge::component_coords(const QForm& a,
                                          const std::vector<uint32_t>& v) const {
    auto subsets = subsets_of_support(v, a.degree);
    std::vector<Int> out(subsets.size() * (size_t)m_, 0);
    for (size_t s = 0; s < subsets.size(); ++s) {
        auto it = a.comps.find(FormKey{v, subsets[s]});
        if (it == a.comps.end()) continue;
        for (long j = 0; j < m_; ++j) out[s * (size_t)m_ + (size_t)j] = it->second.c[j];
    }
    return out;
}

QForm QHodge::from_component_coords(const std::vector<uint32_t>& v, int degree,
                                    const std::vector<Int>& coords) const {
    auto subsets = subsets_of_support(v, degree);
    QForm out = zero(degree);
    for (size_t s = 0; s < subsets.size(); ++s) {
        CycZ c = CycZ::zero(m_);
        bool nonzero = false;
        for (long j = 0; j < m_; ++j) {
            c.c[j] = coords[s * (size_t)m_ + (size_t)j];
            if (c.c[j] != 0) nonzero = true;
        }
        if (nonzero) out.comps[FormKey{v, subsets[s]}] = std::move(c);
    }
    return out;
}

std::string QHodge::to_string(const QForm& a, const std::vector<std::string>& vars) const {
    if (a.comps.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : a.comps) {
        if (!first) os << "  +  ";
        first = false;
        os << "(";
        bool f2 = true;
        for (long j = m_ - 1; j >= 0; --j) {
            if (c.c[j] == 0) continue;
            if (!f2) os << " + ";
            f2 = false;
            os << c.c[j].get_str();
            if (j == 1) os << "*q";
            if (j > 1) os << "*q^" << j;
        }
        os << ")";
        for (int i = 0; i < n_; ++i) {
            uint32_t e = key.v[i] - ((key.J >> i & 1u) ? 1 : 0);
            if (e) os << "*" << vars[i] << (e > 1 ? "^" + std::to_string(e) : "");
        }
        for (int i = 0; i < n_; ++i)
            if (key.J >> i & 1u) os << "*d" << vars[i];
    }
    return os.str();
}

QPoly gamma_op(const QPoly& f, size_t i) { return f.subst_ti_qti(i); }

QPoly q_partial(const QPoly& f, size_t i) {
    QPoly num = gamma_op(f, i) - f;
    if (num.is_zero()) return QPoly(f.nvars());
    QPoly qm1 = QPoly::q_power(1);
    qm1.add_term(Mono{0, {}}, -1);
    return num.div_exact_var(i).div_exact_monic_q(qm1);
}

size_t KoszulScalarComplex::rank(int i) const {
    if (i < 0 || (size_t)i > nfac()) return 0;
    size_t n = nfac(), r = 1;
    for (int t = 0; t < i; ++t) r = r * (n - t) / (t + 1);
    return r;
}

namespace {
std::vector<uint32_t> size_masks(size_t n, int size) {
    std::vector<uint32_t> out;
    for (uint32_t mask = 0; mask < (1u << n); ++mask)
        if (__builtin_popcount(mask) == size) out.push_back(mask);
    return out;
}
}  // namespace

IntMat KoszulScalarComplex::differential(int i) const {
    auto src = size_masks(nfac(), i);
    auto dst = size_masks(nfac(), i + 1);
    IntMat d(src.size() * (size_t)m, dst.size() * (size_t)m);
    for (size_t s = 0; s < src.size(); ++s)
        for (size_t j = 0; j < nfac(); ++j) {
            if (src[s] >> j & 1u) continue;
            uint32_t target = src[s] | (1u << j);
            size_t t = (size_t)(std::find(dst.begin(), dst.end(), target) - dst.begin());
            int sign = __builtin_popcount(src[s] & ((1u << j) - 1u)) % 2 ? -1 : 1;
            for (const auto& [mono, c] : scalars[j].terms())
                for (long a = 0; a < m; ++a) {
                    long b = (a + (long)mono.qexp) % m;
                    d.at(s * (size_t)m + (size_t)a, t * (size_t)m + (size_t)b) +=
                        sign > 0 ? c : -c;
                }
        }
    return d;
}

KoszulScalarComplex multidegree_complex(long m, const std::vector<uint32_t>& v) {
    KoszulScalarComplex cx;
    cx.m = m;
    for (uint32_t vj : v) {
        if (vj == 0) continue;
        QPoly s = QPoly::q_power(vj);
        s.add_term(Mono{0, {}}, -1);
        cx.scalars.push_back(s);
    }
    return cx;
}

FGModulePresentation cohomology(const KoszulScalarComplex& cx, int i, const Int& modulus) {
    size_t amb = cx.rank(i) * (size_t)cx.m;
    FGModulePresentation out;
    if (amb == 0) return out;

    IntMat kernel(0, amb);
    if ((size_t)i == cx.nfac()) {
        kernel = IntMat::identity(amb);
    } else {
        IntMat a = cx.differential(i);
        if (modulus == 0) {
            kernel = left_kernel(a);
        } else {
            IntMat stacked(amb + a.cols(), a.cols());
            for (size_t r = 0; r < amb; ++r)
                for (size_t c = 0; c < a.cols(); ++c) stacked.at(r, c) = a.at(r, c);
            for (size_t c = 0; c < a.cols(); ++c) stacked.at(amb + c, c) = modulus;
            IntMat big = left_kernel(stacked);
            IntMat proj(big.rows(), amb);
            for (size_t r = 0; r < big.rows(); ++r)
                for (size_t c = 0; c < amb; ++c) proj.at(r, c) = big.at(r, c);
            kernel = hnf(proj);
        }
    }

    out.ngens = kernel.rows();
    out.cocycle_lifts = kernel;
    SnfData ks = snf(kernel);

    std::vector<std::vector<Int>> relrows;
    if (i > 0) {
        IntMat b = cx.differential(i - 1);
        for (size_t r = 0; r < b.rows(); ++r) {
            auto sol = solve_left(ks, b.row(r));
            if (!sol) throw std::logic_error("cohomology: boundary not in kernel");
            relrows.push_back(*sol);
        }
    }
    if (modulus != 0) {
        // relations in kernel coordinates: all c with c * kernel = 0 mod modulus
        IntMat stacked(out.ngens + amb, amb);
        for (size_t r = 0; r < out.ngens; ++r)
            for (size_t c = 0; c < amb; ++c) stacked.at(r, c) = kernel.at(r, c);
        for (size_t c = 0; c < amb; ++c) stacked.at(out.ngens + c, c) = modulus;
        IntMat big = left_kernel(stacked);
        for (size_t r = 0; r < big.rows(); ++r) {
            std::vector<Int> crow(out.ngens);
            for (size_t c = 0; c < out.ngens; ++c) crow[c] = big.at(r, c);
            relrows.push_back(std::move(crow));
        }
    }
    IntMat rels(0, out.ngens);
    for (auto& r : relrows) rels.append_row(r);
    out.rels = hnf(rels);

    // q-action on the chosen generators
    out.q_action = IntMat(out.ngens, out.ngens);
    for (size_t g = 0; g < out.ngens; ++g) {
        std::vector<Int> row = kernel.row(g);
        std::vector<Int> shifted(amb, 0);
        for (size_t blk = 0; blk < amb / (size_t)cx.m; ++blk)
            for (long j = 0; j < cx.m; ++j)
                shifted[blk * (size_t)cx.m + (size_t)((j + 1) % cx.m)] =
                    row[blk * (size_t)cx.m + (size_t)j];
        auto sol = solve_left(ks, shifted);
        if (!sol) throw std::logic_error("cohomology: q-action does not preserve kernel");
        out.q_action.set_row(g, *sol);
    }
    return out;
}

KoszulScalarComplex build_k(long p, long alpha, long e) {
    if (e < 0 || e > alpha) throw std::invalid_argument("build_k: need 0 <= e <= alpha");
    long pa = 1, pe = 1;
    for (long t = 0; t < alpha; ++t) pa *= p;
    for (long t = 0; t < e; ++t) pe *= p;
    KoszulScalarComplex cx;
    cx.m = pa;
    QPoly s = QPoly::q_power((uint32_t)pe);
    s.add_term(Mono{0, {}}, -1);
    cx.scalars.push_back(s);
    return cx;
}

KeCohomologyReport ke_cohomology(long p, long alpha, long e, long precision_exp) {
    KoszulScalarComplex cx = build_k(p, alpha, e);
    Int prec = int_pow(Int(p), (unsigned long)precision_exp);
    long pe = 1;
    for (long t = 0; t < e; ++t) pe *= p;

    KeCohomologyReport rep;
    auto h0 = cohomology(cx, 0, prec);
    auto h1 = cohomology(cx, 1, prec);
    rep.h0_factors = h0.invariant_factors();
    rep.h1_factors = h1.invariant_factors();
    auto is_free_rank = [&](const std::vector<Int>& f) {
        long count = 0;
        for (const Int& x : f) {
            if (x != prec) return false;
            ++count;
        }
        return count == pe;
    };
    rep.free_of_expected_rank = is_free_rank(rep.h0_factors) && is_free_rank(rep.h1_factors);

    // integral H^0 is generated over Z[q] by [p^{alpha-e}]_{q^{p^e}}
    auto h0z = cohomology(cx, 0, 0);
    FgGroup free((size_t)cx.m, IntMat(0, (size_t)cx.m));
    std::vector<std::vector<Int>> lattice_a, lattice_b;
    for (size_t r = 0; r < h0z.cocycle_lifts.rows(); ++r)
        lattice_a.push_back(h0z.cocycle_lifts.row(r));
    long pa = cx.m;
    QPoly gen = q_analogue(pa, pe);
    for (long j = 0; j < pa; ++j) {
        std::vector<Int> row((size_t)pa, 0);
        for (const auto& [mono, c] : gen.terms()) row[(mono.qexp + j) % pa] += c;
        lattice_b.push_back(row);
    }
    rep.h0_generated_by_analogue = free.subgroup_equal(lattice_a, lattice_b);
    return rep;
}

KeTensorIsoReport ke_tensor_iso(long p, long alpha, long e1, long e2) {
    if (e1 < e2) throw std::invalid_argument("ke_tensor_iso: need e1 >= e2");
    long pa = 1;
    for (long t = 0; t < alpha; ++t) pa *= p;
    long pe1 = 1, pe2 = 1;
    for (long t = 0; t < e1; ++t) pe1 *= p;
    for (long t = 0; t < e2; ++t) pe2 *= p;

    auto scal = [&](long pe) {
        QPoly s = QPoly::q_power((uint32_t)(pe % pa));
        s.add_term(Mono{0, {}}, -1);
        return CycZ::from_qpoly(pa, s);
    };
    CycZ s1 = scal(pe1), s2 = scal(pe2);
    CycZ A = CycZ::from_qpoly(pa, q_analogue(pe1, pe2));  // (q^{pe1}-1)/(q^{pe2}-1)
    CycZ one = CycZ::zero(pa);
    one.c[0] = 1;
    CycZ zero = CycZ::zero(pa);

    // column convention; 2x2 middle maps
    using M2 = std::array<std::array<CycZ, 2>, 2>;
    auto mul2 = [&](const M2& x, const M2& y) {
        M2 z{{{zero, zero}, {zero, zero}}};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) z[i][j] = z[i][j] + x[i][k] * y[k][j];
        return z;
    };
    M2 f1{{{one, -A}, {zero, one}}};
    M2 g1{{{one, A}, {zero, one}}};

    KeTensorIsoReport rep;
    // d o d = 0 in both complexes
    bool dd = ((-s2) * s1 + s1 * s2).is_zero() && ((-s2) * zero + zero * s2).is_zero();
    // square at degree 0: f1 * dX0 == dY0 * f0
    bool sq0 = (one * s1 + (-A) * s2) == zero && (zero * s1 + one * s2) == s2;
    // square at degree 1: dY1 * f1 == f2 * dX1
    bool sq1 = ((-s2) * one) == (-s2) && ((-s2) * (-A) + zero * one) == s1;
    rep.squares_commute = dd && sq0 && sq1;
    M2 fg = mul2(f1, g1), gf = mul2(g1, f1);
    rep.invertible = fg[0][0] == one && fg[0][1].is_zero() && fg[1][0].is_zero() &&
                     fg[1][1] == one && gf[0][0] == one && gf[0][1].is_zero() &&
                     gf[1][0].is_zero() && gf[1][1] == one;
    return rep;
}

}  // namespace qwk
