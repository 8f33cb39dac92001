#pragma once

#include <optional>

#include "qwk/int_matrix.hpp"

namespace qwk {

// Finitely generated abelian group Z^n / (row span of rels).
class FgGroup {
  public:
    FgGroup(size_t n, IntMat rels) : n_(n), rels_(std::move(rels)) {
        if (rels_.cols() != n_ && rels_.rows() != 0)
            throw std::invalid_argument("FgGroup: relation width mismatch");
        if (rels_.rows() == 0) rels_ = IntMat(0, n_);
    }

    size_t generators() const { return n_; }
    const IntMat& relations() const { return rels_; }
    const SnfData& snf_data() const;

    // Invariant factors > 1, ascending divisibility chain, with 0 for each
    // free summand.
    std::vector<Int> invariant_factors() const;
    bool is_finite() const;
    Int order() const;  // throws if infinite
    bool is_trivial() const;

    // Lattice membership: x in row span of relations, i.e. x == 0 in the group.
    bool contains(const std::vector<Int>& x) const;

    // The two generated subgroups coincide.
    bool subgroup_equal(const std::vector<std::vector<Int>>& gens_a,
                        const std::vector<std::vector<Int>>& gens_b) const;

    // Invariant factors of the quotient by the subgroup generated by extra rows.
    FgGroup quotient_by(const std::vector<std::vector<Int>>& extra) const;

    // Order of the subgroup generated by the given vectors (finite groups).
    Int subgroup_order(const std::vector<std::vector<Int>>& gens) const;

    // Coordinates of x in the canonical cyclic decomposition (see snf_data):
    // position i carries Z/diag_i (diag_i = 0 meaning Z).
    std::vector<Int> coords(const std::vector<Int>& x) const;

  private:
    size_t n_;
    IntMat rels_;
    mutable std::optional<SnfData> snf_;
};

}  // namespace qwk
