#include "qwk/qwitt_presented.hpp"

#include <sstream>

namespace qwk {

QwLevel::QwLevel(std::shared_ptr<FinRing> R,
                 const std::map<long, std::shared_ptr<FinWittEngine>>& engines, long level,
                 int closure_cap)
    : level_(level), R_(std::move(R)), lattice_(0) {
    for (long d : divisors_of(level)) engines_[d] = engines.at(d);
    eng_ = engines_.at(level);
    ndiv_ = eng_->trunc().size();
    nR_ = R_->size();
    if (R_->from_int(0) != 0) throw std::logic_error("QwLevel: zero must have index 0");
    k_block_ = ndiv_ * (nR_ - 1);
    K_ = k_block_ * (size_t)level;
    lattice_ = EchelonLattice(K_);
    single_order_.resize(ndiv_ * nR_, 0);
    for (size_t d = 0; d < ndiv_; ++d)
        for (uint16_t r = 1; r < nR_; ++r) {
            WittEl s = eng_->single_slot(d, r);
            WittEl x = s;
            long n = 1;
            while (!eng_->is_zero(x)) {
                x = eng_->add(x, s);
                ++n;
            }
            single_order_[d * nR_ + r] = n;
        }
    build(closure_cap);
}

size_t QwLevel::gen_index(long j, size_t div_idx, uint16_t r) const {
    return (size_t)j * k_block_ + div_idx * (nR_ - 1) + (size_t)(r - 1);
}

QwLevel::Ambient QwLevel::ambient_zero() const {
    return Ambient((size_t)level_, eng_->zero());
}

QwLevel::Ambient QwLevel::amb_add(const Ambient& x, const Ambient& y) const {
    Ambient z((size_t)level_);
    for (long j = 0; j < level_; ++j) z[j] = eng_->add(x[j], y[j]);
    return z;
}

QwLevel::Ambient QwLevel::amb_shift(const Ambient& x, long j) const {
    Ambient z((size_t)level_);
    for (long s = 0; s < level_; ++s) z[(s + j) % level_] = x[s];
    return z;
}

QwLevel::Ambient QwLevel::amb_mul_single(const Ambient& x, size_t f_idx, uint16_t r,
                                         long j) const {
    // The generator with r in slot f is V_f(tau_{a/f}(r)); by the projection
    // formula, x * q^j V_f(tau_{a/f}(r)) = q^j V_f(tau_{a/f}(r) * F_f(x)).
    long f = eng_->trunc().divisors[f_idx];
    const FinWittEngine& esub = *engines_.at(level_ / f);
    Ambient z = ambient_zero();
    for (long s = 0; s < level_; ++s) {
        WittEl fx = eng_->frobenius(x[s], f, esub);
        // tau_{a/f}(r) * w has coordinates r^e * w_e
        for (size_t i = 0; i < esub.trunc().size(); ++i) {
            long e = esub.trunc().divisors[i];
            fx[i] = R_->mul(R_->pow(r, (unsigned long)e), fx[i]);
        }
        WittEl v = eng_->verschiebung(fx, f, esub);
        z[(s + j) % level_] = eng_->add(z[(s + j) % level_], v);
    }
    return z;
}

QwLevel::Ambient QwLevel::amb_mul(const Ambient& x, const Ambient& y) const {
    Ambient acc = ambient_zero();
    for (long s = 0; s < level_; ++s)
        for (size_t f = 0; f < ndiv_; ++f) {
            uint16_t r = y[s][f];
            if (r == 0) continue;
            acc = amb_add(acc, amb_mul_single(x, f, r, s));
        }
    return acc;
}

QwLevel::Vec QwLevel::express(const Ambient& x) const {
    Vec v(K_, 0);
    for (long j = 0; j < level_; ++j)
        for (size_t d = 0; d < ndiv_; ++d) {
            uint16_t r = x[j][d];
            if (r != 0) v[gen_index(j, d, r)] += 1;
        }
    return v;
}

QwLevel::WittEl QwLevel::scaled_single(size_t div_idx, uint16_t r, const Int& c) const {
    long ord = single_order_[div_idx * nR_ + r];
    long cm = (long)mpz_fdiv_ui(c.get_mpz_t(), (unsigned long)ord);
    return eng_->mul_small(eng_->single_slot(div_idx, r), cm);
}

QwLevel::Ambient QwLevel::lift(const Vec& v) const {
    Ambient x = ambient_zero();
    for (long j = 0; j < level_; ++j)
        for (size_t d = 0; d < ndiv_; ++d)
            for (uint16_t r = 1; r < nR_; ++r) {
                const Int& c = v[gen_index(j, d, r)];
                if (c == 0) continue;
                x[j] = eng_->add(x[j], scaled_single(d, r, c));
            }
    return x;
}

QwLevel::Vec QwLevel::normal_form(Vec v) const {
    lattice_.reduce(v);
    return v;
}

void QwLevel::build(int closure_cap) {
    // ambient addition relations, one q-block at a time are identical;
    // compute for block 0 and replicate
    std::vector<Vec> block0;
    for (size_t d = 0; d < ndiv_; ++d)
        for (uint16_t r = 1; r < nR_; ++r)
            for (uint16_t r2 = r; r2 < nR_; ++r2) {
                Vec rel(K_, 0);
                rel[gen_index(0, d, r)] += 1;
                rel[gen_index(0, d, r2)] += 1;
                WittEl sum = eng_->add(eng_->single_slot(d, r), eng_->single_slot(d, r2));
                for (size_t e = 0; e < ndiv_; ++e)
                    if (sum[e] != 0) rel[gen_index(0, e, sum[e])] -= 1;
                block0.push_back(std::move(rel));
            }
    for (long j = 0; j < level_; ++j)
        for (const auto& rel : block0) {
            Vec shifted(K_, 0);
            for (size_t i = 0; i < K_; ++i)
                if (rel[i] != 0) shifted[(i + (size_t)j * k_block_) % K_] = rel[i];
            lattice_.insert(std::move(shifted));
        }

    // ideal generators; family (a): (q^d - 1) V_{level/d}(x), d | level, d != level
    const auto& ds = eng_->trunc().divisors;
    for (size_t di = 0; di < ndiv_; ++di) {
        long d = ds[di];
        if (d == level_) continue;
        const FinWittEngine& ed = *engines_.at(d);
        for (size_t fi = 0; fi < ed.trunc().size(); ++fi) {
            long f = ed.trunc().divisors[fi];
            size_t slot = eng_->trunc().index_of(f * (level_ / d));
            for (uint16_t r = 1; r < nR_; ++r)
                for (long j = 0; j < level_; ++j) {
                    Vec rel(K_, 0);
                    rel[gen_index((j + d) % level_, slot, r)] += 1;
                    rel[gen_index(j, slot, r)] -= 1;
                    lattice_.insert(std::move(rel));
                }
        }
    }
    // family (b): [d/e]_{q^e} V_{level/d}(x) - V_{level/e}(F_{d/e}(x)), e | d | level
    for (size_t di = 0; di < ndiv_; ++di) {
        long d = ds[di];
        const FinWittEngine& ed = *engines_.at(d);
        for (long e : divisors_of(d)) {
            if (e == d) continue;
            const FinWittEngine& ee = *engines_.at(e);
            for (size_t fi = 0; fi < ed.trunc().size(); ++fi)
                for (uint16_t r = 1; r < nR_; ++r) {
                    WittEl x = ed.single_slot(fi, r);
                    // first part: single slots at distinct q-powers
                    long f = ed.trunc().divisors[fi];
                    size_t slot1 = eng_->trunc().index_of(f * (level_ / d));
                    // second part: V_{level/e}(F_{d/e}(x))
                    WittEl fx = ed.frobenius(x, d / e, ee);
                    WittEl vfx = eng_->verschiebung(fx, level_ / e, ee);
                    for (long j = 0; j < level_; ++j) {
                        Vec rel(K_, 0);
                        for (long t = 0; t < d / e; ++t)
                            rel[gen_index((j + e * t) % level_, slot1, r)] += 1;
                        for (size_t s = 0; s < ndiv_; ++s)
                            if (vfx[s] != 0) rel[gen_index(j, s, vfx[s])] -= 1;
                        lattice_.insert(std::move(rel));
                    }
                }
        }
    }

    // closure under multiplication by q and by the ambient generators
    int iter = 0;
    bool changed = true;
    while (changed) {
        if (iter++ >= closure_cap) {
            std::ostringstream os;
            os << "QwLevel: ideal closure did not stabilize after " << closure_cap
               << " iterations (level " << level_ << ", ring " << R_->ring().spec().to_string()
               << ", rank " << lattice_.rank() << "/" << K_ << ")";
            throw std::runtime_error(os.str());
        }
        changed = false;
        IntMat basis = lattice_.basis();
        for (size_t bi = 0; bi < basis.rows(); ++bi) {
            Vec v = basis.row(bi);
            // q-shift
            Vec shifted(K_, 0);
            for (size_t i = 0; i < K_; ++i)
                if (v[i] != 0) shifted[(i + k_block_) % K_] = v[i];
            if (lattice_.insert(std::move(shifted))) changed = true;
            // generator products
            Ambient amb = lift(v);
            for (size_t f = 0; f < ndiv_; ++f)
                for (uint16_t r = 1; r < nR_; ++r) {
                    Vec u = express(amb_mul_single(amb, f, r, 0));
                    if (lattice_.insert(std::move(u))) changed = true;
                }
        }
    }
    closure_iterations_ = iter;
    if (!lattice_.full_rank()) throw std::logic_error("QwLevel: presented group not finite");
    lattice_.hermite();
    order_ = lattice_.index_in_ambient();
    inv_factors_ = FgGroup(K_, lattice_.basis()).invariant_factors();
}

QwLevel::Vec QwLevel::one() const { return teichmuller(R_->one()); }

QwLevel::Vec QwLevel::q_power(long j) const {
    Vec v = zero();
    v[gen_index(((j % level_) + level_) % level_, 0, R_->one())] = 1;
    return normal_form(std::move(v));
}

QwLevel::Vec QwLevel::from_witt(const WittEl& w) const {
    Ambient x = ambient_zero();
    x[0] = w;
    return normal_form(express(x));
}

QwLevel::Vec QwLevel::teichmuller(uint16_t r) const {
    if (r == 0) return zero();
    Vec v = zero();
    v[gen_index(0, 0, r)] = 1;
    return normal_form(std::move(v));
}

QwLevel::Vec QwLevel::nf_add(const Vec& a, const Vec& b) const {
    // expression vectors add Z-linearly under the quotient map
    Vec c(K_);
    for (size_t i = 0; i < K_; ++i) c[i] = a[i] + b[i];
    return normal_form(std::move(c));
}

QwLevel::Vec QwLevel::nf_mul(const Vec& a, const Vec& b) const {
    Ambient x = amb_mul(lift(a), lift(b));
    return normal_form(express(x));
}

bool QwLevel::nf_is_zero(const Vec& a) const {
    for (const Int& c : a)
        if (c != 0) return false;
    return true;
}

std::vector<std::pair<size_t, Int>> QwLevel::coordinate_radices() const {
    std::vector<std::pair<size_t, Int>> out;
    for (size_t c = 0; c < K_; ++c) {
        const auto& row = lattice_.pivot_row(c);
        if (row[c] > 1) out.emplace_back(c, row[c]);
    }
    return out;
}

std::vector<std::vector<QwLevel::Vec>> QwLevel::multiplication_tensor() const {
    auto coords = coordinate_radices();
    std::vector<std::vector<Vec>> tensor(coords.size(), std::vector<Vec>(coords.size()));
    for (size_t i = 0; i < coords.size(); ++i) {
        Vec ei = zero();
        ei[coords[i].first] = 1;
        Ambient ai = lift(ei);
        for (size_t j = 0; j <= i; ++j) {
            Vec ej = zero();
            ej[coords[j].first] = 1;
            Vec prod = normal_form(express(amb_mul(ai, lift(ej))));
            tensor[i][j] = prod;
            tensor[j][i] = std::move(prod);
        }
    }
    return tensor;
}

FgGroup QwLevel::group() const { return FgGroup(K_, lattice_.basis()); }

QwFamily::QwFamily(const Ring& coeff_ring, long m, int closure_cap) : m_(m) {
    R_ = std::make_shared<FinRing>(coeff_ring);
    for (long d : divisors_of(m)) engines_[d] = std::make_shared<FinWittEngine>(*R_, d);
    for (long d : divisors_of(m))
        levels_[d] = std::make_shared<QwLevel>(R_, engines_, d, closure_cap);
}

void QwFamily::check_descends(const IntMat& map, const QwLevel& src, const QwLevel& dst,
                              const char* what) const {
    IntMat basis = src.lattice().basis();
    for (size_t i = 0; i < basis.rows(); ++i) {
        std::vector<Int> img = mat_vec_row(basis.row(i), map);
        if (!dst.lattice().contains(std::move(img)))
            throw std::logic_error(std::string(what) + ": map does not descend");
    }
}

IntMat QwFamily::build_frobenius_expr(long a, long k) const {
    const QwLevel& src = at(a);
    const QwLevel& dst = at(a / k);
    const FinWittEngine& ea = *engines_.at(a);
    const FinWittEngine& et = *engines_.at(a / k);
    IntMat map(src.K(), dst.K());
    for (long j = 0; j < a; ++j)
        for (size_t d = 0; d < ea.trunc().size(); ++d)
            for (uint16_t r = 1; r < R_->size(); ++r) {
                QwLevel::WittEl fx = ea.frobenius(ea.single_slot(d, r), k, et);
                QwLevel::Ambient img = dst.ambient_zero();
                img[j % (a / k)] = fx;
                map.set_row(src.gen_index(j, d, r), dst.express(img));
            }
    check_descends(map, src, dst, "frobenius");
    return map;
}

IntMat QwFamily::build_verschiebung_expr(long a, long k) const {
    const QwLevel& src = at(a / k);
    const QwLevel& dst = at(a);
    const FinWittEngine& es = *engines_.at(a / k);
    const FinWittEngine& ea = *engines_.at(a);
    IntMat map(src.K(), dst.K());
    for (long j = 0; j < a / k; ++j)
        for (size_t d = 0; d < es.trunc().size(); ++d) {
            size_t slot = ea.trunc().index_of(es.trunc().divisors[d] * k);
            for (uint16_t r = 1; r < R_->size(); ++r) {
                std::vector<Int> row(dst.K(), 0);
                row[dst.gen_index(j, slot, r)] = 1;
                map.set_row(src.gen_index(j, d, r), row);
            }
        }
    check_descends(map, src, dst, "verschiebung");
    return map;
}

const IntMat& QwFamily::frobenius_expr(long a, long k) const {
    auto key = std::make_pair(a, k);
    auto it = frob_cache_.find(key);
    if (it == frob_cache_.end()) it = frob_cache_.emplace(key, build_frobenius_expr(a, k)).first;
    return it->second;
}

const IntMat& QwFamily::verschiebung_expr(long a, long k) const {
    auto key = std::make_pair(a, k);
    auto it = versch_cache_.find(key);
    if (it == versch_cache_.end())
        it = versch_cache_.emplace(key, build_verschiebung_expr(a, k)).first;
    return it->second;
}

IntMat QwFamily::mul_qanalogue_expr(long a, long top, long bot) const {
    const QwLevel& lvl = at(a);
    const FinWittEngine& ea = *engines_.at(a);
    IntMat map(lvl.K(), lvl.K());
    for (long j = 0; j < a; ++j)
        for (size_t d = 0; d < ea.trunc().size(); ++d)
            for (uint16_t r = 1; r < R_->size(); ++r) {
                std::vector<Int> row(lvl.K(), 0);
                for (long t = 0; t < top / bot; ++t)
                    row[lvl.gen_index((j + bot * t) % a, d, r)] += 1;
                map.set_row(lvl.gen_index(j, d, r), row);
            }
    check_descends(map, lvl, lvl, "q-analogue multiplication");
    return map;
}

IntMat QwFamily::mul_int_expr(long a, long n) const {
    const QwLevel& lvl = at(a);
    const FinWittEngine& ea = *engines_.at(a);
    IntMat map(lvl.K(), lvl.K());
    for (long j = 0; j < a; ++j)
        for (size_t d = 0; d < ea.trunc().size(); ++d)
            for (uint16_t r = 1; r < R_->size(); ++r) {
                QwLevel::WittEl w = ea.mul_small(ea.single_slot(d, r), n);
                QwLevel::Ambient img = lvl.ambient_zero();
                img[j] = w;
                map.set_row(lvl.gen_index(j, d, r), lvl.express(img));
            }
    return map;
}

IntMat QwFamily::q_shift_expr(long a) const {
    const QwLevel& lvl = at(a);
    IntMat map(lvl.K(), lvl.K());
    size_t kb = lvl.K() / (size_t)a;
    for (size_t i = 0; i < lvl.K(); ++i) {
        std::vector<Int> row(lvl.K(), 0);
        row[(i + kb) % lvl.K()] = 1;
        map.set_row(i, row);
    }
    return map;
}

size_t QwFamily::CycGroup::gen_index(size_t slot, uint16_t r) const {
    return slot * ((size_t)R->size() - 1) + (size_t)(r - 1);
}

std::vector<Int> QwFamily::CycGroup::express(const std::vector<uint16_t>& slots) const {
    std::vector<Int> v(K, 0);
    for (size_t s = 0; s < phi; ++s)
        if (slots[s] != 0) v[gen_index(s, slots[s])] += 1;
    return v;
}

QwFamily::CycGroup QwFamily::cyc_group(long d) const {
    CycGroup g;
    g.d = d;
    g.phi = (size_t)euler_phi(d);
    g.R = R_;
    g.K = g.phi * ((size_t)R_->size() - 1);
    EchelonLattice lat(g.K);
    for (size_t s = 0; s < g.phi; ++s)
        for (uint16_t r = 1; r < R_->size(); ++r)
            for (uint16_t r2 = r; r2 < R_->size(); ++r2) {
                std::vector<Int> rel(g.K, 0);
                rel[g.gen_index(s, r)] += 1;
                rel[g.gen_index(s, r2)] += 1;
                uint16_t sum = R_->add(r, r2);
                if (sum != 0) rel[g.gen_index(s, sum)] -= 1;
                lat.insert(std::move(rel));
            }
    lat.hermite();
    g.rels = lat.basis();
    return g;
}

IntMat QwFamily::ghost1_expr(long a) const {
    const QwLevel& lvl = at(a);
    CycGroup cg = cyc_group(a);
    const FinWittEngine& ea = *engines_.at(a);
    const QPoly& phi = cyclotomic(a);
    size_t deg = cg.phi;
    // q^j mod Phi_a as integer coefficient rows
    std::vector<std::vector<Int>> qmod;
    {
        QPoly cur = QPoly::constant(1);
        for (long j = 0; j < a; ++j) {
            auto rem = cur.divmod_monic_q(phi).second;
            std::vector<Int> coeffs(deg, 0);
            for (const auto& [mono, c] : rem.terms()) coeffs.at(mono.qexp) = c;
            qmod.push_back(coeffs);
            cur = cur * QPoly::q_power(1);
        }
    }
    IntMat map(lvl.K(), cg.K);
    // slot 1 carries tau_a(r); every other slot is a Verschiebung image and dies
    for (long j = 0; j < a; ++j)
        for (size_t d = 0; d < ea.trunc().size(); ++d)
            for (uint16_t r = 1; r < R_->size(); ++r) {
                std::vector<Int> row(cg.K, 0);
                if (ea.trunc().divisors[d] == 1) {
                    // tau_a(r) q^j -> r * (q^j mod Phi_a)
                    std::vector<uint16_t> slots(deg, 0);
                    for (size_t s = 0; s < deg; ++s)
                        slots[s] = R_->mul(R_->from_int(qmod[j][s]), r);
                    row = cg.express(slots);
                }
                map.set_row(lvl.gen_index(j, d, r), row);
            }
    // descent check against the cyclic group's relations
    IntMat basis = lvl.lattice().basis();
    FgGroup target = cg.group();
    for (size_t i = 0; i < basis.rows(); ++i)
        if (!target.contains(mat_vec_row(basis.row(i), map)))
            throw std::logic_error("ghost1: map does not descend");
    return map;
}

IntMat QwFamily::ghost_expr(long a, long d) const {
    if (d == a) return ghost1_expr(a);
    return frobenius_expr(a, a / d) * ghost1_expr(d);
}

}  // namespace qwk
