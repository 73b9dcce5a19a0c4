#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "mvol/error.hpp"
#include "mvol/rational.hpp"

namespace mvol {

/// Dense row-major matrix.
template <typename T>
using DenseMatrix = std::vector<std::vector<T>>;

using Matrix = DenseMatrix<Rational>;

inline Matrix zero_matrix(std::size_t rows, std::size_t cols) {
    return Matrix(rows, Vector(cols, Rational(0)));
}

inline Matrix transpose(const Matrix& a) {
    if (a.empty()) return {};
    Matrix t = zero_matrix(a[0].size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    return t;
}

inline Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.empty() || b.empty()) return {};
    if (a[0].size() != b.size()) throw DimensionError("matrix product: inner dimensions differ");
    Matrix c = zero_matrix(a.size(), b[0].size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

/**
 * Reduced row echelon form over a field, in place. Returns the pivot column
 * of each nonzero row, in order.
 */
template <typename Field>
std::vector<std::size_t> reduce_to_rref(DenseMatrix<Field>& a) {
    std::vector<std::size_t> pivots;
    if (a.empty()) return pivots;
    const std::size_t rows = a.size(), cols = a[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        const Field inv = Field(1) / a[r][c];
        for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const Field f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <typename Field>
std::size_t rank(DenseMatrix<Field> a) {
    return reduce_to_rref(a).size();
}

/// Determinant over a field by Gaussian elimination.
template <typename Field>
Field determinant(DenseMatrix<Field> a) {
    const std::size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw DimensionError("determinant of a non-square matrix");
    Field det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return Field(0);
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a[i][c] == 0) continue;
            const Field f = a[i][c] / a[c][c];
            for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return det;
}

/// Fraction-free (Bareiss) determinant over the integers.
inline Integer determinant_bareiss(DenseMatrix<Integer> a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[p], a[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

/**
 * Basis of the right null space {x : A x = 0}, one basis vector per free
 * column of the reduced echelon form. Returned as the columns of an
 * (cols x nullity) matrix.
 */
inline Matrix null_space(const Matrix& a, std::size_t cols) {
    Matrix r = a;
    const auto pivots = reduce_to_rref(r);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < cols; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    Matrix k = zero_matrix(cols, free_cols.size());
    for (std::size_t f = 0; f < free_cols.size(); ++f) {
        k[free_cols[f]][f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) k[pivots[i]][f] = -r[i][free_cols[f]];
    }
    return k;
}

/// Unique solution of a square nonsingular system, or nullopt when singular.
inline std::optional<Vector> solve_square(Matrix a, Vector b) {
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
    const auto pivots = reduce_to_rref(a);
    if (pivots.size() < n || pivots.back() >= n) return std::nullopt;
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
    return x;
}

}  // namespace mvol
