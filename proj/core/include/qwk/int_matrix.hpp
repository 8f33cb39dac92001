#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qwk/int_types.hpp"

namespace qwk {

// Dense matrix over Z. Lattices are row spans throughout.
class IntMat {
  public:
    IntMat() = default;
    IntMat(size_t rows, size_t cols) : r_(rows), c_(cols), a_(rows * cols, 0) {}

    static IntMat identity(size_t n);

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    Int& at(size_t i, size_t j) { return a_[i * c_ + j]; }
    const Int& at(size_t i, size_t j) const { return a_[i * c_ + j]; }

    std::vector<Int> row(size_t i) const;
    void set_row(size_t i, const std::vector<Int>& v);
    void append_row(const std::vector<Int>& v);

    IntMat operator*(const IntMat& o) const;
    bool operator==(const IntMat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    IntMat transpose() const;

    void swap_rows(size_t i, size_t j);
    void swap_cols(size_t i, size_t j);
    void add_row_multiple(size_t dst, size_t src, const Int& f);  // row dst += f*row src
    void add_col_multiple(size_t dst, size_t src, const Int& f);
    void negate_row(size_t i);
    void negate_col(size_t j);

    Int det() const;  // Bareiss fraction-free; square only

    bool is_zero() const;

  private:
    size_t r_ = 0, c_ = 0;
    std::vector<Int> a_;
};

std::vector<Int> mat_vec_row(const std::vector<Int>& x, const IntMat& a);  // x * a

struct SnfData {
    IntMat u, v, d;  // u*a*v = d
    size_t rank = 0;
    std::vector<Int> diag;  // nonnegative, divisibility chain, length min(r,c)
};

// Smith normal form with unimodular transforms. Pivot choice: nonzero entry of
// minimal absolute value, ties broken by lowest (row, col).
SnfData snf(const IntMat& a, bool verify = false);

// Row-style Hermite normal form (echelon, positive pivots, entries above
// reduced); returns the nonzero rows only.
IntMat hnf(const IntMat& a);

// Basis of { x : x*a = 0 } as rows.
IntMat left_kernel(const IntMat& a);

// Solve x*a = b over Z; empty optional if unsolvable.
std::optional<std::vector<Int>> solve_left(const SnfData& s, const std::vector<Int>& b);

// Row lattice maintained online in echelon form (one pivot row per pivot
// column, gcd-merged). Insertions keep entries small; call hermite() at the
// end for unique coset representatives.
class EchelonLattice {
  public:
    explicit EchelonLattice(size_t cols) : cols_(cols), rows_(cols) {}

    size_t cols() const { return cols_; }
    // true if the lattice grew
    bool insert(std::vector<Int> row);
    bool contains(std::vector<Int> row) const;
    // reduce by pivot rows (echelon reduction; unique rep only after hermite())
    void reduce(std::vector<Int>& row) const;
    // reduce entries above each pivot into [0, pivot)
    void hermite();
    IntMat basis() const;  // pivot rows, top to bottom
    size_t rank() const;
    bool full_rank() const { return rank() == cols_; }
    // product of pivots; only meaningful at full rank
    Int index_in_ambient() const;
    const std::vector<Int>& pivot_row(size_t col) const { return rows_[col]; }
    bool has_pivot(size_t col) const { return !rows_[col].empty(); }

  private:
    size_t cols_;
    std::vector<std::vector<Int>> rows_;  // rows_[c] = pivot row at column c (may be empty)
};

}  // namespace qwk
