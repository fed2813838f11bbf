#pragma once

#include "mcremona/integer.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

namespace mcremona {

using IntVector = std::vector<Integer>;

/// Dense row-major integer matrix with value semantics.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    IntMatrix(std::initializer_list<std::initializer_list<long long>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_)
                throw ContractError("ragged matrix literal");
            for (long long x : row)
                data_.emplace_back(x);
        }
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    /// Builds a matrix whose j-th column is columns[j]; all columns must share a length.
    static IntMatrix from_columns(std::span<const IntVector> columns, std::size_t rows) {
        IntMatrix m(rows, columns.size());
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (columns[j].size() != rows)
                throw ContractError("column length mismatch");
            for (std::size_t i = 0; i < rows; ++i)
                m(i, j) = columns[j][i];
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntVector column(std::size_t j) const {
        IntVector c(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            c[i] = (*this)(i, j);
        return c;
    }

    IntVector row(std::size_t i) const {
        return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                         data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }

    std::vector<IntVector> columns() const {
        std::vector<IntVector> out;
        out.reserve(cols_);
        for (std::size_t j = 0; j < cols_; ++j)
            out.push_back(column(j));
        return out;
    }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    IntMatrix select_columns(std::span<const std::size_t> idx) const {
        IntMatrix m(rows_, idx.size());
        for (std::size_t k = 0; k < idx.size(); ++k)
            for (std::size_t i = 0; i < rows_; ++i)
                m(i, k) = (*this)(i, idx[k]);
        return m;
    }

    /// Result(k, l) = this(row_order[k], col_order[l]).
    IntMatrix permuted(std::span<const std::size_t> row_order, std::span<const std::size_t> col_order) const {
        IntMatrix m(row_order.size(), col_order.size());
        for (std::size_t k = 0; k < row_order.size(); ++k)
            for (std::size_t l = 0; l < col_order.size(); ++l)
                m(k, l) = (*this)(row_order[k], col_order[l]);
        return m;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        if (a.cols_ != b.rows_)
            throw ContractError("matrix product dimension mismatch");
        IntMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Integer& aik = a(i, k);
                if (aik == 0)
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend IntVector operator*(const IntMatrix& a, const IntVector& x) {
        if (a.cols_ != x.size())
            throw ContractError("matrix-vector dimension mismatch");
        IntVector y(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k)
                y[i] += a(i, k) * x[k];
        return y;
    }

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

    friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
        os << '[';
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << (i ? ",[" : "[");
            for (std::size_t j = 0; j < m.cols_; ++j)
                os << (j ? "," : "") << m(i, j);
            os << ']';
        }
        return os << ']';
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

namespace detail {

inline Integer exact_div(const Integer& num, const Integer& den) {
    Integer q, r;
    boost::multiprecision::divide_qr(num, den, q, r);
    if (r != 0)
        throw InternalError("fraction-free elimination produced an inexact division");
    return q;
}

} // namespace detail

/// Bareiss fraction-free determinant.
inline Integer determinant(IntMatrix a) {
    if (!a.square())
        throw ContractError("determinant of a non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0)
        return 1;
    int sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0)
                ++p;
            if (p == n)
                return 0;
            for (std::size_t j = k; j < n; ++j)
                std::swap(a(k, j), a(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = detail::exact_div(a(k, k) * a(i, j) - a(i, k) * a(k, j), prev);
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign > 0 ? a(n - 1, n - 1) : Integer(-a(n - 1, n - 1));
}

struct AdjugateResult {
    Integer det;
    IntMatrix adjugate; // a * adjugate == det * I
};

/// Fraction-free Gauss-Jordan on [A | I]. The left block ends as D*I and the
/// right block as D*A^{-1}; both are rescaled by the row-swap sign.
inline AdjugateResult adjugate(const IntMatrix& a) {
    if (!a.square())
        throw ContractError("adjugate of a non-square matrix");
    const std::size_t n = a.rows();
    IntMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = a(i, j);
        aug(i, n + i) = 1;
    }
    int sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && aug(p, k) == 0)
            ++p;
        if (p == n)
            return {0, IntMatrix()}; // singular; adjugate not needed by callers
        if (p != k) {
            for (std::size_t j = 0; j < 2 * n; ++j)
                std::swap(aug(k, j), aug(p, j));
            sign = -sign;
        }
        const Integer pivot = aug(k, k);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k)
                continue;
            const Integer factor = aug(i, k);
            for (std::size_t j = 0; j < 2 * n; ++j) {
                if (j == k)
                    continue;
                aug(i, j) = detail::exact_div(pivot * aug(i, j) - factor * aug(k, j), prev);
            }
            aug(i, k) = 0;
        }
        prev = pivot;
    }
    AdjugateResult out{sign > 0 ? prev : Integer(-prev), IntMatrix(n, n)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out.adjugate(i, j) = sign > 0 ? aug(i, n + j) : Integer(-aug(i, n + j));
    // The row left untouched at its own pivot step has not been rescaled; all
    // diagonal entries of the left block must agree with the last pivot.
    for (std::size_t i = 0; i < n; ++i)
        if (aug(i, i) != prev)
            throw InternalError("fraction-free Gauss-Jordan lost the diagonal invariant");
    return out;
}

/// Rank over Q by fraction-free elimination.
inline std::size_t rank(IntMatrix a) {
    const std::size_t m = a.rows(), n = a.cols();
    std::size_t r = 0;
    Integer prev = 1;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t p = r;
        while (p < m && a(p, c) == 0)
            ++p;
        if (p == m)
            continue;
        for (std::size_t j = 0; j < n; ++j)
            std::swap(a(r, j), a(p, j));
        for (std::size_t i = r + 1; i < m; ++i) {
            for (std::size_t j = c + 1; j < n; ++j)
                a(i, j) = detail::exact_div(a(r, c) * a(i, j) - a(i, c) * a(r, j), prev);
            a(i, c) = 0;
        }
        prev = a(r, c);
        ++r;
    }
    return r;
}

} // namespace mcremona
