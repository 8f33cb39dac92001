#include "qwk/qwitt_checks.hpp"

#include <functional>
#include <sstream>

namespace qwk {

namespace {

std::string vec_str(const std::vector<Int>& v) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << v[i].get_str();
    }
    os << "]";
    return os.str();
}

// order of the subgroup of `target` generated by the rows of `map`
Int image_order(const FgGroup& target, const IntMat& map) {
    std::vector<std::vector<Int>> rows;
    for (size_t i = 0; i < map.rows(); ++i) rows.push_back(map.row(i));
    return int_div_exact(target.order(), target.quotient_by(rows).order());
}

// all rows of `mat` lie in the lattice presented by `g`
bool rows_vanish(const FgGroup& g, const IntMat& mat) {
    for (size_t i = 0; i < mat.rows(); ++i)
        if (!g.contains(mat.row(i))) return false;
    return true;
}

}  // namespace

std::vector<CheckResult> check_fv_relations(const QwFamily& fam, long a,
                                            const Int& enumerate_limit) {
    std::vector<CheckResult> out;
    const QwLevel& top = fam.at(a);
    for (long d : divisors_of(a)) {
        if (d == a) continue;
        long k = a / d;
        const QwLevel& bot = fam.at(d);
        const IntMat& F = fam.frobenius_expr(a, k);
        const IntMat& V = fam.verschiebung_expr(a, k);

        // F o V = k on qW_d: x -> x*V*F
        {
            CheckResult r{"fv: F_" + std::to_string(k) + " o V_" + std::to_string(k) + " = " +
                              std::to_string(k) + " on qW_" + std::to_string(d),
                          true, ""};
            IntMat lhs = V * F;
            IntMat rhs = fam.mul_int_expr(d, k);
            FgGroup g = bot.group();
            for (size_t i = 0; i < lhs.rows() && r.pass; ++i) {
                std::vector<Int> diff = lhs.row(i);
                auto rr = rhs.row(i);
                for (size_t j = 0; j < diff.size(); ++j) diff[j] -= rr[j];
                if (!g.contains(diff)) {
                    r.pass = false;
                    r.detail = "generator " + std::to_string(i) + " differs";
                }
            }
            if (r.pass && bot.order() <= enumerate_limit) {
                // walk every element in mixed-radix coordinate order
                auto radices = bot.coordinate_radices();
                std::vector<Int> counter(radices.size(), 0);
                std::vector<Int> x(bot.K(), 0);
                long checked = 0;
                while (true) {
                    std::vector<Int> l = mat_vec_row(x, lhs), rr2 = mat_vec_row(x, rhs);
                    if (bot.normal_form(l) != bot.normal_form(rr2)) {
                        r.pass = false;
                        r.detail = "element " + vec_str(x) + " differs";
                        break;
                    }
                    ++checked;
                    size_t p = 0;
                    for (; p < radices.size(); ++p) {
                        counter[p] += 1;
                        x[radices[p].first] += 1;
                        if (counter[p] < radices[p].second) break;
                        counter[p] = 0;
                        x[radices[p].first] = 0;
                    }
                    if (p == radices.size()) break;
                }
                if (r.pass) r.detail = "exhaustive over " + std::to_string(checked) + " elements";
            } else if (r.pass) {
                r.detail = "verified on all generators (complete by additivity)";
            }
            out.push_back(std::move(r));
        }

        // V o F = [a/d]_{q^d} on qW_a: x -> x*F*V
        {
            CheckResult r{"fv: V_" + std::to_string(k) + " o F_" + std::to_string(k) +
                              " = [" + std::to_string(a) + "/" + std::to_string(d) + "]_{q^" +
                              std::to_string(d) + "} on qW_" + std::to_string(a),
                          true, ""};
            IntMat lhs = F * V;
            IntMat rhs = fam.mul_qanalogue_expr(a, a, d);
            FgGroup g = top.group();
            for (size_t i = 0; i < lhs.rows() && r.pass; ++i) {
                std::vector<Int> diff = lhs.row(i);
                auto rr = rhs.row(i);
                for (size_t j = 0; j < diff.size(); ++j) diff[j] -= rr[j];
                if (!g.contains(diff)) {
                    r.pass = false;
                    r.detail = "generator " + std::to_string(i) + " differs";
                }
            }
            if (r.pass && top.order() <= enumerate_limit) {
                auto radices = top.coordinate_radices();
                std::vector<Int> counter(radices.size(), 0);
                std::vector<Int> x(top.K(), 0);
                long checked = 0;
                while (true) {
                    std::vector<Int> l = mat_vec_row(x, lhs), rr2 = mat_vec_row(x, rhs);
                    if (top.normal_form(l) != top.normal_form(rr2)) {
                        r.pass = false;
                        r.detail = "element " + vec_str(x) + " differs";
                        break;
                    }
                    ++checked;
                    size_t p = 0;
                    for (; p < radices.size(); ++p) {
                        counter[p] += 1;
                        x[radices[p].first] += 1;
                        if (counter[p] < radices[p].second) break;
                        counter[p] = 0;
                        x[radices[p].first] = 0;
                    }
                    if (p == radices.size()) break;
                }
                if (r.pass) r.detail = "exhaustive over " + std::to_string(checked) + " elements";
            } else if (r.pass) {
                r.detail = "verified on all generators (complete by additivity)";
            }
            out.push_back(std::move(r));
        }
    }
    return out;
}

std::vector<CheckResult> check_koszul(const QwFamily& fam) {
    long m = fam.m();
    auto primes = prime_factors_of(m);
    size_t r = primes.size();
    std::vector<CheckResult> out;

    // positions 0..r: position i = direct sum over |S| = i of qW_{m/p_S}
    // enumerate subsets of fixed size with their levels
    auto subsets_of_size = [&](size_t sz) {
        std::vector<std::vector<size_t>> subs;
        std::vector<size_t> cur;
        std::function<void(size_t)> rec = [&](size_t start) {
            if (cur.size() == sz) {
                subs.push_back(cur);
                return;
            }
            for (size_t i = start; i < r; ++i) {
                cur.push_back(i);
                rec(i + 1);
                cur.pop_back();
            }
        };
        rec(0);
        return subs;
    };
    auto level_of = [&](const std::vector<size_t>& s) {
        long lvl = m;
        for (size_t i : s) lvl /= primes[i];
        return lvl;
    };

    struct Position {
        std::vector<std::vector<size_t>> subsets;
        std::vector<long> levels;
        std::vector<size_t> offsets;
        size_t K = 0;
        IntMat rels;
        Int order;
    };
    std::vector<Position> pos(r + 1);
    for (size_t i = 0; i <= r; ++i) {
        Position& p = pos[i];
        p.subsets = subsets_of_size(i);
        p.rels = IntMat(0, 0);
        size_t K = 0;
        for (const auto& s : p.subsets) {
            long lvl = level_of(s);
            p.levels.push_back(lvl);
            p.offsets.push_back(K);
            K += fam.at(lvl).K();
        }
        p.K = K;
        IntMat rels(0, K);
        p.order = 1;
        for (size_t t = 0; t < p.subsets.size(); ++t) {
            IntMat basis = fam.at(p.levels[t]).lattice().basis();
            for (size_t i2 = 0; i2 < basis.rows(); ++i2) {
                std::vector<Int> row(K, 0);
                auto b = basis.row(i2);
                for (size_t j = 0; j < b.size(); ++j) row[p.offsets[t] + j] = b[j];
                rels.append_row(row);
            }
            p.order *= fam.at(p.levels[t]).order();
        }
        p.rels = rels;
    }

    // differential d_i : position i -> position i-1 with Koszul signs
    auto differential = [&](size_t i) {
        const Position& src = pos[i];
        const Position& dst = pos[i - 1];
        IntMat map(src.K, dst.K);
        for (size_t t = 0; t < src.subsets.size(); ++t) {
            const auto& S = src.subsets[t];
            for (size_t jj = 0; jj < S.size(); ++jj) {
                size_t removed = S[jj];
                std::vector<size_t> T = S;
                T.erase(T.begin() + jj);
                size_t dst_t =
                    (size_t)(std::find(dst.subsets.begin(), dst.subsets.end(), T) -
                             dst.subsets.begin());
                int sign = jj % 2 == 0 ? 1 : -1;  // #{l in T : l < removed} = jj
                const IntMat& V =
                    fam.verschiebung_expr(dst.levels[dst_t], primes[removed]);
                for (size_t g = 0; g < fam.at(src.levels[t]).K(); ++g) {
                    auto row = V.row(g);
                    for (size_t c = 0; c < row.size(); ++c)
                        map.at(src.offsets[t] + g, dst.offsets[dst_t] + c) += sign * row[c];
                }
            }
        }
        return map;
    };

    std::vector<IntMat> diffs(r + 1);
    for (size_t i = 1; i <= r; ++i) diffs[i] = differential(i);
    IntMat aug = fam.ghost1_expr(m);
    auto cg = fam.cyc_group(m);
    FgGroup cyc = cg.group();
    Int cyc_order = cyc.order();

    std::vector<FgGroup> groups;
    for (size_t i = 0; i <= r; ++i) groups.emplace_back(pos[i].K, pos[i].rels);

    // exactness at the augmentation: gh_1 surjective
    {
        CheckResult c{"koszul: gh_1 surjective onto R[zeta_" + std::to_string(m) + "]", false,
                      ""};
        Int img = image_order(cyc, aug);
        c.pass = img == cyc_order;
        c.detail = "image order " + img.get_str() + " of " + cyc_order.get_str();
        out.push_back(std::move(c));
    }
    // composite vanishing
    {
        CheckResult c{"koszul: gh_1 o d_1 = 0", rows_vanish(cyc, diffs[1] * aug), ""};
        out.push_back(std::move(c));
        for (size_t i = 2; i <= r; ++i) {
            CheckResult c2{"koszul: d_" + std::to_string(i - 1) + " o d_" + std::to_string(i) +
                               " = 0",
                           rows_vanish(groups[i - 2], diffs[i] * diffs[i - 1]), ""};
            out.push_back(std::move(c2));
        }
    }
    // exactness at position 0: |qW_m| = |im gh_1| * |im d_1|
    {
        CheckResult c{"koszul: exact at qW_" + std::to_string(m), false, ""};
        Int im_aug = image_order(cyc, aug);
        Int im_d1 = image_order(groups[0], diffs[1]);
        c.pass = pos[0].order == im_aug * im_d1;
        c.detail = "|qW| = " + pos[0].order.get_str() + ", |im gh_1| = " + im_aug.get_str() +
                   ", |im d_1| = " + im_d1.get_str();
        out.push_back(std::move(c));
    }
    // middle spots
    for (size_t i = 1; i < r; ++i) {
        CheckResult c{"koszul: exact at position " + std::to_string(i), false, ""};
        Int im_di = image_order(groups[i - 1], diffs[i]);
        Int im_dnext = image_order(groups[i], diffs[i + 1]);
        c.pass = pos[i].order == im_di * im_dnext;
        c.detail = "|pos| = " + pos[i].order.get_str() + ", |im d_i| = " + im_di.get_str() +
                   ", |im d_{i+1}| = " + im_dnext.get_str();
        out.push_back(std::move(c));
    }
    // leftmost: d_r injective
    if (r >= 1) {
        CheckResult c{"koszul: leftmost map injective", false, ""};
        Int im = image_order(groups[r - 1], diffs[r]);
        c.pass = im == pos[r].order;
        c.detail = "|im| = " + im.get_str() + ", |src| = " + pos[r].order.get_str();
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<CheckResult> check_verschiebung_injective(const QwFamily& fam, long a) {
    std::vector<CheckResult> out;
    for (long d : divisors_of(a)) {
        if (d == a) continue;
        const IntMat& V = fam.verschiebung_expr(a, a / d);
        Int img = image_order(fam.at(a).group(), V);
        CheckResult c{"V_" + std::to_string(a / d) + " : qW_" + std::to_string(d) + " -> qW_" +
                          std::to_string(a) + " injective",
                      img == fam.at(d).order(),
                      "|im| = " + img.get_str() + ", |src| = " + fam.at(d).order().get_str()};
        out.push_back(std::move(c));
    }
    return out;
}

CheckResult check_witt_to_qwitt_injective(const QwFamily& fam, long a) {
    const QwLevel& lvl = fam.at(a);
    const FinWittEngine& eng = lvl.engine();
    size_t nd = eng.trunc().size();
    size_t nR = lvl.ring().size();
    std::vector<uint16_t> w(nd, 0);
    long kernel = 0, total = 0;
    while (true) {
        QwLevel::Ambient x = lvl.ambient_zero();
        x[0] = w;
        bool in_lattice = lvl.lattice().contains(lvl.express(x));
        bool is_zero = eng.is_zero(w);
        if (in_lattice && !is_zero) ++kernel;
        ++total;
        size_t p = 0;
        for (; p < nd; ++p) {
            if (++w[p] < nR) break;
            w[p] = 0;
        }
        if (p == nd) break;
    }
    return CheckResult{"W_" + std::to_string(a) + "(R) -> qW_" + std::to_string(a) +
                           "(R) injective",
                       kernel == 0,
                       "checked " + std::to_string(total) + " elements, kernel size " +
                           std::to_string(kernel + 1)};
}

CheckResult check_ghost_tuple_iso(const QwFamily& fam) {
    long m = fam.m();
    const QwLevel& lvl = fam.at(m);
    // assemble (gh_{m/d})_{d|m} into one map to the direct sum
    std::vector<long> ds = divisors_of(m);
    size_t Ksum = 0;
    std::vector<size_t> offs;
    IntMat rels(0, 0);
    Int prod_order = 1;
    std::vector<QwFamily::CycGroup> cgs;
    for (long d : ds) {
        cgs.push_back(fam.cyc_group(d));
        offs.push_back(Ksum);
        Ksum += cgs.back().K;
    }
    IntMat sum_rels(0, Ksum);
    for (size_t t = 0; t < ds.size(); ++t) {
        FgGroup g = cgs[t].group();
        prod_order *= g.order();
        for (size_t i = 0; i < cgs[t].rels.rows(); ++i) {
            std::vector<Int> row(Ksum, 0);
            auto b = cgs[t].rels.row(i);
            for (size_t j = 0; j < b.size(); ++j) row[offs[t] + j] = b[j];
            sum_rels.append_row(row);
        }
    }
    FgGroup target(Ksum, sum_rels);
    IntMat map(lvl.K(), Ksum);
    for (size_t t = 0; t < ds.size(); ++t) {
        IntMat gh = fam.ghost_expr(m, ds[t]);
        for (size_t i = 0; i < gh.rows(); ++i)
            for (size_t j = 0; j < gh.cols(); ++j) map.at(i, offs[t] + j) += gh.at(i, j);
    }
    Int img = image_order(target, map);
    bool pass = img == prod_order && prod_order == lvl.order();
    return CheckResult{"ghost tuple qW_" + std::to_string(m) + " -> prod_d R[zeta_d] bijective",
                       pass,
                       "|qW| = " + lvl.order().get_str() + ", |prod| = " + prod_order.get_str() +
                           ", |im| = " + img.get_str()};
}

CheckResult check_ghost_compat(const QwFamily& fam, long d, Rng& rng, int trials) {
    long m = fam.m();
    const QwLevel& lvl = fam.at(m);
    const FinWittEngine& eng = lvl.engine();
    IntMat gh = fam.ghost_expr(m, d);
    auto cg = fam.cyc_group(d);
    FgGroup target = cg.group();
    for (int t = 0; t < trials; ++t) {
        std::vector<uint16_t> w(eng.trunc().size());
        for (auto& c : w) c = (uint16_t)rng.below(lvl.ring().size());
        // classical ghost gh_{m/d}(w) in R, viewed as the constant slot
        uint16_t g = eng.ghost(w, m / d);
        std::vector<uint16_t> slots(cg.phi, 0);
        slots[0] = g;
        std::vector<Int> classical = cg.express(slots);
        QwLevel::Ambient x = lvl.ambient_zero();
        x[0] = w;
        std::vector<Int> through_qwitt = mat_vec_row(lvl.express(x), gh);
        for (size_t j = 0; j < classical.size(); ++j) through_qwitt[j] -= classical[j];
        if (!target.contains(through_qwitt))
            return CheckResult{"ghost compatibility square d=" + std::to_string(d), false,
                               "witness trial " + std::to_string(t)};
    }
    return CheckResult{"ghost compatibility square d=" + std::to_string(d), true,
                       std::to_string(trials) + " random Witt vectors"};
}

long qwitt_torsion_exponent(const QwFamily& fam, long a, long p) {
    long v = 0;
    for (const Int& f : fam.at(a).invariant_factors()) {
        if (f == 0) throw std::logic_error("torsion exponent of infinite group");
        Int x = f;
        long vp = 0;
        while (x % p == 0) {
            x /= p;
            ++vp;
        }
        v = std::max(v, vp);
    }
    return v;
}

std::vector<CheckResult> check_zp_decomposition(const Ring& coeff_ring, long m, long p) {
    std::vector<CheckResult> out;
    long alpha = padic_valuation(m, p);
    long n = m;
    for (long i = 0; i < alpha; ++i) n /= p;
    QwFamily fam(coeff_ring, m);
    const QwLevel& left = fam.at(m);
    long pa = m / n;  // p^alpha
    const QwLevel& base = fam.at(pa);

    // right-hand side: for D | n, qW_{p^alpha}(R) tensored along q -> q^D with
    // Z[q]/(Phi_D ... Phi_{p^alpha D})
    struct Factor {
        long D;
        size_t NB;  // q-basis size = deg of the cyclotomic product
        QPoly G;    // the monic modulus
        size_t K;
        IntMat rels;
        Int order;
    };
    std::vector<Factor> factors;
    IntMat qshift = fam.q_shift_expr(pa);
    for (long D : divisors_of(n)) {
        Factor f;
        f.D = D;
        f.G = QPoly::constant(1);
        for (long i = 0; i <= alpha; ++i) {
            long idx = D;
            for (long t = 0; t < i; ++t) idx *= p;
            f.G = f.G * cyclotomic(idx);
        }
        f.NB = f.G.q_degree();
        f.K = base.K() * f.NB;
        EchelonLattice lat(f.K);
        IntMat basis = base.lattice().basis();
        for (size_t t = 0; t < f.NB; ++t)
            for (size_t i = 0; i < basis.rows(); ++i) {
                std::vector<Int> row(f.K, 0);
                auto b = basis.row(i);
                for (size_t j = 0; j < b.size(); ++j) row[t * base.K() + j] = b[j];
                lat.insert(std::move(row));
            }
        // q-compatibility: (q.x) tensor q^t = x tensor q^{D+t}
        // q^{D+t} mod G as integer coefficients
        for (size_t t = 0; t < f.NB; ++t) {
            QPoly qq = QPoly::q_power((uint32_t)(f.D + (long)t));
            QPoly rem = qq.divmod_monic_q(f.G).second;
            for (size_t i = 0; i < base.K(); ++i) {
                std::vector<Int> row(f.K, 0);
                auto shifted = qshift.row(i);
                for (size_t j = 0; j < base.K(); ++j) row[t * base.K() + j] = shifted[j];
                for (const auto& [mono, c] : rem.terms())
                    row[(size_t)mono.qexp * base.K() + i] -= c;
                lat.insert(std::move(row));
            }
        }
        if (!lat.full_rank())
            throw std::logic_error("zp decomposition: factor not finite");
        lat.hermite();
        f.rels = lat.basis();
        f.order = lat.index_in_ambient();
        factors.push_back(std::move(f));
    }

    Int rhs_order = 1;
    for (const auto& f : factors) rhs_order *= f.order;
    {
        CheckResult c{"zp: cardinalities match (m=" + std::to_string(m) + ", p=" +
                          std::to_string(p) + ")",
                      rhs_order == left.order(),
                      "|qW| = " + left.order().get_str() + ", |prod| = " + rhs_order.get_str()};
        out.push_back(std::move(c));
    }

    // comparison map: generator (j, slot d, r) of qW_m -> per factor D:
    // Res_{p^alpha}(F_{n/D}(w)) tensor (q^j mod G_D)
    size_t Ksum = 0;
    std::vector<size_t> offs;
    for (const auto& f : factors) {
        offs.push_back(Ksum);
        Ksum += f.K;
    }
    IntMat sum_rels(0, Ksum);
    for (size_t t = 0; t < factors.size(); ++t)
        for (size_t i = 0; i < factors[t].rels.rows(); ++i) {
            std::vector<Int> row(Ksum, 0);
            auto b = factors[t].rels.row(i);
            for (size_t j = 0; j < b.size(); ++j) row[offs[t] + j] = b[j];
            sum_rels.append_row(row);
        }
    FgGroup target(Ksum, sum_rels);

    const FinWittEngine& em = *fam.engine(m);
    const FinWittEngine& eb = *fam.engine(pa);
    IntMat map(left.K(), Ksum);
    for (long j = 0; j < m; ++j)
        for (size_t dslot = 0; dslot < em.trunc().size(); ++dslot)
            for (uint16_t r = 1; r < fam.R().size(); ++r) {
                std::vector<Int> row(Ksum, 0);
                for (size_t t = 0; t < factors.size(); ++t) {
                    long D = factors[t].D;
                    // F_{n/D} : W_m -> W_{pa*D}, then restrict to divisors of pa
                    const FinWittEngine& emid = *fam.engine(pa * D);
                    auto w = em.single_slot(dslot, r);
                    auto fw = em.frobenius(w, n / D, emid);
                    std::vector<uint16_t> res(eb.trunc().size());
                    for (size_t s = 0; s < eb.trunc().size(); ++s)
                        res[s] = fw[emid.trunc().index_of(eb.trunc().divisors[s])];
                    QwLevel::Ambient amb = base.ambient_zero();
                    amb[0] = res;
                    std::vector<Int> expr = base.express(amb);
                    QPoly rem =
                        QPoly::q_power((uint32_t)j).divmod_monic_q(factors[t].G).second;
                    for (const auto& [mono, c] : rem.terms())
                        for (size_t i = 0; i < base.K(); ++i)
                            row[offs[t] + (size_t)mono.qexp * base.K() + i] += c * expr[i];
                }
                map.set_row(left.gen_index(j, dslot, r), row);
            }

    // descends + bijective
    {
        IntMat basis = left.lattice().basis();
        bool ok = true;
        for (size_t i = 0; i < basis.rows() && ok; ++i)
            ok = target.contains(mat_vec_row(basis.row(i), map));
        out.push_back(CheckResult{"zp: comparison map well defined", ok, ""});
        Int img = image_order(target, map);
        bool bij = img == rhs_order && rhs_order == left.order();
        out.push_back(CheckResult{"zp: comparison map bijective", bij,
                                  "|im| = " + img.get_str()});
    }
    // invariant factors
    {
        std::vector<Int> lf = left.invariant_factors();
        std::vector<Int> rf = target.invariant_factors();
        std::vector<Int> lf2, rf2;
        for (auto& x : lf)
            if (x != 1) lf2.push_back(x);
        for (auto& x : rf)
            if (x != 1) rf2.push_back(x);
        out.push_back(CheckResult{"zp: invariant factors match", lf2 == rf2,
                                  vec_str(lf2) + " vs " + vec_str(rf2)});
    }
    return out;
}

}  // namespace qwk
