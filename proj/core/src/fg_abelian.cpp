#include "qwk/fg_abelian.hpp"

namespace qwk {

const SnfData& FgGroup::snf_data() const {
    if (!snf_) snf_ = snf(rels_);
    return *snf_;
}

std::vector<Int> FgGroup::invariant_factors() const {
    const SnfData& s = snf_data();
    std::vector<Int> out;
    for (size_t i = 0; i < s.rank; ++i)
        if (s.diag[i] != 1) out.push_back(s.diag[i]);
    for (size_t i = s.rank; i < n_; ++i) out.push_back(0);
    return out;
}

bool FgGroup::is_finite() const { return snf_data().rank == n_; }

Int FgGroup::order() const {
    if (!is_finite()) throw std::domain_error("FgGroup::order: infinite group");
    Int o = 1;
    for (size_t i = 0; i < n_; ++i) o *= snf_data().diag[i];
    return o;
}

bool FgGroup::is_trivial() const { return is_finite() && order() == 1; }

std::vector<Int> FgGroup::coords(const std::vector<Int>& x) const {
    const SnfData& s = snf_data();
    std::vector<Int> y = mat_vec_row(x, s.v);
    for (size_t i = 0; i < n_; ++i)
        if (i < s.rank && s.diag[i] != 0) y[i] = int_mod(y[i], s.diag[i]);
    return y;
}

bool FgGroup::contains(const std::vector<Int>& x) const {
    for (const Int& c : coords(x))
        if (c != 0) return false;
    return true;
}

FgGroup FgGroup::quotient_by(const std::vector<std::vector<Int>>& extra) const {
    IntMat rels = rels_;
    for (const auto& r : extra) rels.append_row(r);
    return FgGroup(n_, hnf(rels));
}

bool FgGroup::subgroup_equal(const std::vector<std::vector<Int>>& gens_a,
                             const std::vector<std::vector<Int>>& gens_b) const {
    FgGroup mod_b = quotient_by(gens_b);
    for (const auto& a : gens_a)
        if (!mod_b.contains(a)) return false;
    FgGroup mod_a = quotient_by(gens_a);
    for (const auto& b : gens_b)
        if (!mod_a.contains(b)) return false;
    return true;
}

Int FgGroup::subgroup_order(const std::vector<std::vector<Int>>& gens) const {
    return int_div_exact(order(), quotient_by(gens).order());
}

}  // namespace qwk
