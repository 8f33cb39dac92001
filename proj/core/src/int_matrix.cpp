#include "qwk/int_matrix.hpp"

#include <optional>
#include <stdexcept>

namespace qwk {

IntMat IntMat::identity(size_t n) {
    IntMat m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

std::vector<Int> IntMat::row(size_t i) const {
    return std::vector<Int>(a_.begin() + i * c_, a_.begin() + (i + 1) * c_);
}

void IntMat::set_row(size_t i, const std::vector<Int>& v) {
    for (size_t j = 0; j < c_; ++j) at(i, j) = v[j];
}

void IntMat::append_row(const std::vector<Int>& v) {
    if (c_ == 0) c_ = v.size();
    if (v.size() != c_) throw std::invalid_argument("append_row: width mismatch");
    a_.insert(a_.end(), v.begin(), v.end());
    ++r_;
}

IntMat IntMat::operator*(const IntMat& o) const {
    if (c_ != o.r_) throw std::invalid_argument("matrix product shape mismatch");
    IntMat m(r_, o.c_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t k = 0; k < c_; ++k) {
            const Int& f = at(i, k);
            if (f == 0) continue;
            for (size_t j = 0; j < o.c_; ++j) m.at(i, j) += f * o.at(k, j);
        }
    return m;
}

IntMat IntMat::transpose() const {
    IntMat m(c_, r_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
    return m;
}

void IntMat::swap_rows(size_t i, size_t j) {
    if (i == j) return;
    for (size_t k = 0; k < c_; ++k) std::swap(at(i, k), at(j, k));
}

void IntMat::swap_cols(size_t i, size_t j) {
    if (i == j) return;
    for (size_t k = 0; k < r_; ++k) std::swap(at(k, i), at(k, j));
}

void IntMat::add_row_multiple(size_t dst, size_t src, const Int& f) {
    if (f == 0) return;
    for (size_t k = 0; k < c_; ++k) at(dst, k) += f * at(src, k);
}

void IntMat::add_col_multiple(size_t dst, size_t src, const Int& f) {
    if (f == 0) return;
    for (size_t k = 0; k < r_; ++k) at(k, dst) += f * at(k, src);
}

void IntMat::negate_row(size_t i) {
    for (size_t k = 0; k < c_; ++k) at(i, k) = -at(i, k);
}

void IntMat::negate_col(size_t j) {
    for (size_t k = 0; k < r_; ++k) at(k, j) = -at(k, j);
}

bool IntMat::is_zero() const {
    for (const auto& x : a_)
        if (x != 0) return false;
    return true;
}

Int IntMat::det() const {
    if (r_ != c_) throw std::invalid_argument("det: not square");
    if (r_ == 0) return 1;
    IntMat m = *this;
    Int prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < r_; ++k) {
        if (m.at(k, k) == 0) {
            size_t p = k + 1;
            while (p < r_ && m.at(p, k) == 0) ++p;
            if (p == r_) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (size_t i = k + 1; i < r_; ++i)
            for (size_t j = k + 1; j < r_; ++j)
                m.at(i, j) = int_div_exact(m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j), prev);
        prev = m.at(k, k);
    }
    return sign > 0 ? m.at(r_ - 1, r_ - 1) : -m.at(r_ - 1, r_ - 1);
}

std::vector<Int> mat_vec_row(const std::vector<Int>& x, const IntMat& a) {
    if (x.size() != a.rows()) throw std::invalid_argument("mat_vec_row shape mismatch");
    std::vector<Int> y(a.cols(), 0);
    for (size_t i = 0; i < a.rows(); ++i) {
        if (x[i] == 0) continue;
        for (size_t j = 0; j < a.cols(); ++j) y[j] += x[i] * a.at(i, j);
    }
    return y;
}

SnfData snf(const IntMat& a, bool verify) {
    SnfData s;
    s.d = a;
    s.u = IntMat::identity(a.rows());
    s.v = IntMat::identity(a.cols());
    IntMat& d = s.d;
    size_t n = std::min(a.rows(), a.cols());
    size_t t = 0;
    while (t < n) {
        // minimal |entry| in the remaining block, ties at lowest (row, col)
        size_t pi = 0, pj = 0;
        bool found = false;
        Int best = 0;
        for (size_t i = t; i < d.rows(); ++i)
            for (size_t j = t; j < d.cols(); ++j) {
                const Int& x = d.at(i, j);
                if (x == 0) continue;
                Int ax = abs(x);
                if (!found || ax < best) {
                    found = true;
                    best = ax;
                    pi = i;
                    pj = j;
                }
            }
        if (!found) break;
        d.swap_rows(t, pi);
        s.u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        s.v.swap_cols(t, pj);

        bool clean = true;
        for (size_t i = t + 1; i < d.rows(); ++i) {
            Int q = d.at(i, t) / d.at(t, t);
            if (d.at(i, t) - q * d.at(t, t) != 0 || q != 0) {
                d.add_row_multiple(i, t, -q);
                s.u.add_row_multiple(i, t, -q);
                if (d.at(i, t) != 0) clean = false;
            }
        }
        for (size_t j = t + 1; j < d.cols(); ++j) {
            Int q = d.at(t, j) / d.at(t, t);
            if (d.at(t, j) - q * d.at(t, t) != 0 || q != 0) {
                d.add_col_multiple(j, t, -q);
                s.v.add_col_multiple(j, t, -q);
                if (d.at(t, j) != 0) clean = false;
            }
        }
        if (!clean) continue;  // smaller pivot now exists; repeat

        // ensure pivot divides the rest of the block
        bool divides = true;
        for (size_t i = t + 1; i < d.rows() && divides; ++i)
            for (size_t j = t + 1; j < d.cols() && divides; ++j)
                if (d.at(i, j) % d.at(t, t) != 0) {
                    d.add_row_multiple(t, i, 1);
                    s.u.add_row_multiple(t, i, 1);
                    divides = false;
                }
        if (!divides) continue;

        if (d.at(t, t) < 0) {
            d.negate_row(t);
            s.u.negate_row(t);
        }
        ++t;
    }
    s.rank = t;
    s.diag.resize(n);
    for (size_t i = 0; i < n; ++i) s.diag[i] = d.at(i, i);
    if (verify) {
        if (!(s.u * a * s.v == s.d)) throw std::logic_error("snf: U*A*V != D");
        Int du = s.u.det(), dv = s.v.det();
        if (abs(du) != 1 || abs(dv) != 1) throw std::logic_error("snf: transform not unimodular");
    }
    return s;
}

IntMat hnf(const IntMat& a) {
    IntMat m = a;
    size_t row = 0;
    for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        // reduce column below `row` to a single entry via gcd steps
        while (true) {
            size_t pivot = row;
            bool found = false;
            Int best = 0;
            for (size_t i = row; i < m.rows(); ++i) {
                if (m.at(i, col) == 0) continue;
                Int ax = abs(m.at(i, col));
                if (!found || ax < best) {
                    found = true;
                    best = ax;
                    pivot = i;
                }
            }
            if (!found) break;
            m.swap_rows(row, pivot);
            bool done = true;
            for (size_t i = row + 1; i < m.rows(); ++i) {
                if (m.at(i, col) == 0) continue;
                Int q = m.at(i, col) / m.at(row, col);
                m.add_row_multiple(i, row, -q);
                if (m.at(i, col) != 0) done = false;
            }
            if (done) break;
        }
        if (m.at(row, col) == 0) continue;
        if (m.at(row, col) < 0) m.negate_row(row);
        for (size_t i = 0; i < row; ++i) {
            Int q = m.at(i, col);
            mpz_fdiv_q(q.get_mpz_t(), q.get_mpz_t(), m.at(row, col).get_mpz_t());
            m.add_row_multiple(i, row, -q);
        }
        ++row;
    }
    IntMat out(0, m.cols());
    for (size_t i = 0; i < row; ++i) out.append_row(m.row(i));
    return out;
}

IntMat left_kernel(const IntMat& a) {
    SnfData s = snf(a);
    IntMat out(0, a.rows());
    for (size_t i = 0; i < a.rows(); ++i) {
        bool zero_diag = i >= std::min(a.rows(), a.cols()) || s.diag[i] == 0;
        if (zero_diag) out.append_row(s.u.row(i));
    }
    return out;
}

bool EchelonLattice::insert(std::vector<Int> row) {
    bool grew = false;
    size_t c = 0;
    while (c < cols_) {
        if (row[c] == 0) {
            ++c;
            continue;
        }
        if (rows_[c].empty()) {
            if (row[c] < 0)
                for (auto& x : row) x = -x;
            rows_[c] = std::move(row);
            return true;
        }
        std::vector<Int>& piv = rows_[c];
        if (row[c] % piv[c] == 0) {
            Int q = row[c] / piv[c];
            for (size_t j = c; j < cols_; ++j) row[j] -= q * piv[j];
        } else {
            Int u, v;
            Int g = int_gcdext(piv[c], row[c], u, v);
            Int a = piv[c] / g, b = row[c] / g;
            // new pivot = u*piv + v*row has entry g at column c;
            // replacement row = a*row - b*piv has entry 0 at column c
            std::vector<Int> np(cols_, 0), nr(cols_, 0);
            for (size_t j = c; j < cols_; ++j) {
                np[j] = u * piv[j] + v * row[j];
                nr[j] = a * row[j] - b * piv[j];
            }
            rows_[c] = std::move(np);
            row = std::move(nr);
            grew = true;
        }
    }
    return grew;
}

void EchelonLattice::reduce(std::vector<Int>& row) const {
    for (size_t c = 0; c < cols_; ++c) {
        if (row[c] == 0 || rows_[c].empty()) continue;
        const auto& piv = rows_[c];
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), row[c].get_mpz_t(), piv[c].get_mpz_t());
        if (q == 0) continue;
        for (size_t j = c; j < cols_; ++j) row[j] -= q * piv[j];
    }
}

bool EchelonLattice::contains(std::vector<Int> row) const {
    for (size_t c = 0; c < cols_; ++c) {
        if (row[c] == 0) continue;
        if (rows_[c].empty()) return false;
        const auto& piv = rows_[c];
        if (row[c] % piv[c] != 0) return false;
        Int q = row[c] / piv[c];
        for (size_t j = c; j < cols_; ++j) row[j] -= q * piv[j];
    }
    return true;
}

void EchelonLattice::hermite() {
    for (size_t c = 0; c < cols_; ++c) {
        if (rows_[c].empty()) continue;
        for (size_t above = 0; above < c; ++above) {
            if (rows_[above].empty() || rows_[above][c] == 0) continue;
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), rows_[above][c].get_mpz_t(), rows_[c][c].get_mpz_t());
            if (q == 0) continue;
            for (size_t j = c; j < cols_; ++j) rows_[above][j] -= q * rows_[c][j];
        }
    }
}

IntMat EchelonLattice::basis() const {
    IntMat out(0, cols_);
    for (size_t c = 0; c < cols_; ++c)
        if (!rows_[c].empty()) out.append_row(rows_[c]);
    return out;
}

size_t EchelonLattice::rank() const {
    size_t r = 0;
    for (size_t c = 0; c < cols_; ++c)
        if (!rows_[c].empty()) ++r;
    return r;
}

Int EchelonLattice::index_in_ambient() const {
    Int idx = 1;
    for (size_t c = 0; c < cols_; ++c) {
        if (rows_[c].empty()) throw std::domain_error("index_in_ambient: not full rank");
        idx *= rows_[c][c];
    }
    return idx;
}

std::optional<std::vector<Int>> solve_left(const SnfData& s, const std::vector<Int>& b) {
    // x * a = b with u*a*v = d: y = b*v, y_i = z_i*d_i, x = z*u
    std::vector<Int> y = mat_vec_row(b, s.v);
    std::vector<Int> z(s.u.rows(), 0);
    size_t n = s.diag.size();
    for (size_t j = 0; j < y.size(); ++j) {
        if (j < n && s.diag[j] != 0) {
            Int q = y[j] / s.diag[j];
            if (y[j] - q * s.diag[j] != 0) return std::nullopt;
            if (j < z.size()) z[j] = q;
        } else if (y[j] != 0) {
            return std::nullopt;
        }
    }
    return mat_vec_row(z, s.u);
}

}  // namespace qwk
