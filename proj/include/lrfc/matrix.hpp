#pragma once

#include "lrfc/gf.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace lrfc {

// Dense row-major matrix over GF(q). Entries are bytes; all arithmetic goes
// through the owning Field so the op counter sees it.
class Matrix {
public:
    Matrix(const Field& f, int rows, int cols)
        : f_(&f), rows_(rows), cols_(cols), d_(static_cast<size_t>(rows) * cols, 0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Field& field() const { return *f_; }

    std::uint8_t& at(int r, int c) { return d_[static_cast<size_t>(r) * cols_ + c]; }
    std::uint8_t at(int r, int c) const { return d_[static_cast<size_t>(r) * cols_ + c]; }
    std::uint8_t* row(int r) { return d_.data() + static_cast<size_t>(r) * cols_; }
    const std::uint8_t* row(int r) const { return d_.data() + static_cast<size_t>(r) * cols_; }

    static Matrix identity(const Field& f, int n) {
        Matrix m(f, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    Matrix transposed() const {
        Matrix t(*f_, cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
        return t;
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && d_ == o.d_;
    }

private:
    const Field* f_;
    int rows_, cols_;
    std::vector<std::uint8_t> d_;
};

inline Matrix mat_mul(const Matrix& a, const Matrix& b) {
    const Field& f = a.field();
    Matrix r(f, a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) {
            std::uint8_t acc = 0;
            for (int h = 0; h < a.cols(); ++h) acc = f.add(acc, f.mul(a.at(i, h), b.at(h, j)));
            r.at(i, j) = acc;
        }
    return r;
}

inline std::vector<std::uint8_t> mat_vec(const Matrix& a, const std::vector<std::uint8_t>& x) {
    const Field& f = a.field();
    std::vector<std::uint8_t> y(a.rows(), 0);
    for (int i = 0; i < a.rows(); ++i) {
        std::uint8_t acc = 0;
        for (int j = 0; j < a.cols(); ++j) acc = f.add(acc, f.mul(a.at(i, j), x[j]));
        y[i] = acc;
    }
    return y;
}

struct GeResult {
    bool solved = false;        // rank == cols and system consistent
    bool inconsistent = false;  // zero coefficient row with non-zero rhs
    int rank = 0;
    std::vector<std::uint8_t> solution;  // defined when solved
};

// Gaussian elimination on a working copy (callers keep their matrix).
// Pivot choice: first row, top-down, with a non-zero entry in the column.
inline GeResult ge_solve(Matrix a, std::vector<std::uint8_t> y) {
    const Field& f = a.field();
    const int r = a.rows(), c = a.cols();
    GeResult res;
    int prow = 0;
    for (int col = 0; col < c && prow < r; ++col) {
        int sel = -1;
        for (int i = prow; i < r; ++i)
            if (a.at(i, col) != 0) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        if (sel != prow) {
            for (int j = col; j < c; ++j) std::swap(a.at(sel, j), a.at(prow, j));
            std::swap(y[sel], y[prow]);
        }
        const std::uint8_t piv_inv = f.inv(a.at(prow, col));
        for (int j = col; j < c; ++j) a.at(prow, j) = f.mul(a.at(prow, j), piv_inv);
        y[prow] = f.mul(y[prow], piv_inv);
        for (int i = prow + 1; i < r; ++i) {
            const std::uint8_t fac = a.at(i, col);
            if (fac == 0) continue;
            for (int j = col; j < c; ++j)
                a.at(i, j) = f.add(a.at(i, j), f.mul(fac, a.at(prow, j)));
            y[i] = f.add(y[i], f.mul(fac, y[prow]));
        }
        ++prow;
    }
    res.rank = prow;
    for (int i = prow; i < r; ++i)
        if (y[i] != 0) res.inconsistent = true;
    if (res.rank == c && !res.inconsistent) {
        // full column rank: pivot i sits at column i, back-substitute
        std::vector<std::uint8_t> x(c, 0);
        for (int i = c - 1; i >= 0; --i) {
            std::uint8_t acc = y[i];
            for (int j = i + 1; j < c; ++j) acc = f.add(acc, f.mul(a.at(i, j), x[j]));
            x[i] = acc;
        }
        res.solved = true;
        res.solution = std::move(x);
    }
    return res;
}

inline int rank_of(Matrix a) {
    const Field& f = a.field();
    const int r = a.rows(), c = a.cols();
    int prow = 0;
    for (int col = 0; col < c && prow < r; ++col) {
        int sel = -1;
        for (int i = prow; i < r; ++i)
            if (a.at(i, col) != 0) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        if (sel != prow)
            for (int j = col; j < c; ++j) std::swap(a.at(sel, j), a.at(prow, j));
        const std::uint8_t piv_inv = f.inv(a.at(prow, col));
        for (int i = prow + 1; i < r; ++i) {
            const std::uint8_t fac = f.mul(a.at(i, col), piv_inv);
            if (fac == 0) continue;
            for (int j = col; j < c; ++j)
                a.at(i, j) = f.add(a.at(i, j), f.mul(fac, a.at(prow, j)));
        }
        ++prow;
    }
    return prow;
}

}  // namespace lrfc
