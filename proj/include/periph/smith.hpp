#pragma once

// Dense integer matrices and Smith normal form with unimodular transforms.

#include "periph/error.hpp"
#include "periph/integer.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace periph {

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<long long>>& rows) {
        const std::size_t c = rows.empty() ? 0 : rows[0].size();
        Matrix m(rows.size(), c);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != c) throw InvalidArgument("ragged matrix rows");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_zero() const {
        for (const Integer& v : data_)
            if (v != 0) return false;
        return true;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw InvalidArgument("matrix shape mismatch in product");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Integer& v = a(i, k);
                if (v == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += v * b(k, j);
            }
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }
    /// row[dst] += k * row[src]
    void add_row(std::size_t dst, std::size_t src, const Integer& k) {
        if (k == 0) return;
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(src, j) != 0) (*this)(dst, j) += k * (*this)(src, j);
    }
    /// col[dst] += k * col[src]
    void add_col(std::size_t dst, std::size_t src, const Integer& k) {
        if (k == 0) return;
        for (std::size_t i = 0; i < rows_; ++i)
            if ((*this)(i, src) != 0) (*this)(i, dst) += k * (*this)(i, src);
    }
    void negate_row(std::size_t r) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Integer> data_;
};

/// U * A * V == D with D diagonal, d1 | d2 | ..., all d >= 0.  U and V are
/// unimodular; their inverses are tracked alongside.
struct SmithForm {
    Matrix U, U_inv, D, V, V_inv;
    std::size_t rank = 0;

    std::vector<Integer> diagonal() const {
        std::vector<Integer> d;
        for (std::size_t i = 0; i < rank; ++i) d.push_back(D(i, i));
        return d;
    }
    /// Diagonal entries greater than one.
    std::vector<Integer> invariant_factors() const {
        std::vector<Integer> d;
        for (std::size_t i = 0; i < rank; ++i)
            if (D(i, i) > 1) d.push_back(D(i, i));
        return d;
    }
};

/// Pivot choice: smallest nonzero absolute value in the remaining block, ties
/// broken by column then row index, so the output is deterministic.
inline SmithForm smith_normal_form(const Matrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    SmithForm f{Matrix::identity(m), Matrix::identity(m), a, Matrix::identity(n), Matrix::identity(n), 0};
    Matrix& D = f.D;

    // Row and column operations, mirrored into the transforms.
    auto row_swap = [&](std::size_t i, std::size_t j) {
        D.swap_rows(i, j);
        f.U.swap_rows(i, j);
        f.U_inv.swap_cols(i, j);
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        D.swap_cols(i, j);
        f.V.swap_cols(i, j);
        f.V_inv.swap_rows(i, j);
    };
    auto row_add = [&](std::size_t dst, std::size_t src, const Integer& k) {
        D.add_row(dst, src, k);
        f.U.add_row(dst, src, k);
        f.U_inv.add_col(src, dst, -k);
    };
    auto col_add = [&](std::size_t dst, std::size_t src, const Integer& k) {
        D.add_col(dst, src, k);
        f.V.add_col(dst, src, k);
        f.V_inv.add_row(src, dst, -k);
    };
    auto row_negate = [&](std::size_t r) {
        D.negate_row(r);
        f.U.negate_row(r);
        for (std::size_t i = 0; i < m; ++i) f.U_inv(i, r) = -f.U_inv(i, r);
    };

    std::size_t t = 0;
    while (t < m && t < n) {
        // Locate the pivot.
        bool found = false;
        std::size_t pr = 0, pc = 0;
        Integer best;
        for (std::size_t j = t; j < n; ++j)
            for (std::size_t i = t; i < m; ++i) {
                const Integer& v = D(i, j);
                if (v == 0) continue;
                Integer av = abs(v);
                if (!found || av < best) {
                    found = true;
                    best = av;
                    pr = i;
                    pc = j;
                }
            }
        if (!found) break;
        row_swap(t, pr);
        col_swap(t, pc);

        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (D(i, t) == 0) continue;
                Integer q = D(i, t) / D(t, t);
                row_add(i, t, -q);
                if (D(i, t) != 0) {
                    row_swap(t, i);
                    dirty = true;
                }
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (D(t, j) == 0) continue;
                Integer q = D(t, j) / D(t, t);
                col_add(j, t, -q);
                if (D(t, j) != 0) {
                    col_swap(t, j);
                    dirty = true;
                }
            }
            if (dirty) continue;
            // Divisibility of the remaining block.
            bool fixed = false;
            for (std::size_t i = t + 1; i < m && !fixed; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (D(i, j) % D(t, t) != 0) {
                        row_add(t, i, 1);
                        fixed = true;
                        break;
                    }
            if (!fixed) break;
        }
        if (D(t, t) < 0) row_negate(t);
        ++t;
    }
    f.rank = t;
    return f;
}

/// Rank of an integer matrix.
inline std::size_t integer_rank(const Matrix& a) { return smith_normal_form(a).rank; }

}  // namespace periph
