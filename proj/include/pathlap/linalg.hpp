#pragma once

#include <cstddef>
#include <vector>

#include "pathlap/errors.hpp"
#include "pathlap/matrix.hpp"

namespace pathlap {

struct rref_result {
    rational_matrix m;
    std::vector<std::size_t> pivot_cols;
};

// Gauss-Jordan to reduced row echelon form, exact over the rationals.
inline rref_result rref(rational_matrix a) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t sel = row;
        while (sel < a.rows() && a(sel, col) == 0) ++sel;
        if (sel == a.rows()) continue;
        if (sel != row)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(sel, j), a(row, j));
        const rational inv = rational(1) / a(row, col);
        for (std::size_t j = col; j < a.cols(); ++j) a(row, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row || a(i, col) == 0) continue;
            const rational f = a(i, col);
            for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(a), std::move(pivots)};
}

// Fraction-free rank: scale each row to integers, then Bareiss elimination.
// Intermediate entries stay integral, so no coefficient blow-up from fractions.
inline std::size_t rank(const rational_matrix& a) {
    const std::size_t r = a.rows(), c = a.cols();
    if (r == 0 || c == 0) return 0;
    std::vector<std::vector<bigint>> m(r, std::vector<bigint>(c));
    for (std::size_t i = 0; i < r; ++i) {
        bigint scale = 1;
        for (std::size_t j = 0; j < c; ++j) scale = lcm(scale, denominator(a(i, j)));
        for (std::size_t j = 0; j < c; ++j)
            m[i][j] = numerator(a(i, j)) * (scale / denominator(a(i, j)));
    }
    bigint prev = 1;
    std::size_t row = 0;
    for (std::size_t col = 0; col < c && row < r; ++col) {
        std::size_t sel = row;
        while (sel < r && m[sel][col] == 0) ++sel;
        if (sel == r) continue;
        std::swap(m[sel], m[row]);
        for (std::size_t i = row + 1; i < r; ++i) {
            for (std::size_t j = col + 1; j < c; ++j)
                m[i][j] = (m[row][col] * m[i][j] - m[i][col] * m[row][j]) / prev;
            m[i][col] = 0;
        }
        prev = m[row][col];
        ++row;
    }
    return row;
}

// Scale a rational vector to coprime integer entries with a positive leading
// nonzero entry. Zero vectors pass through.
inline void normalize_integer_vector(std::vector<rational>& v) {
    bigint den = 1;
    for (const auto& x : v) den = lcm(den, denominator(x));
    bigint g = 0;
    for (const auto& x : v) g = gcd(g, numerator(x) * (den / denominator(x)));
    if (g == 0) return;
    int lead_sign = 0;
    for (const auto& x : v) {
        if (x != 0) {
            lead_sign = x < 0 ? -1 : 1;
            break;
        }
    }
    const rational factor = rational(lead_sign * den, g);
    for (auto& x : v) x *= factor;
}

// Canonical kernel basis: columns are the reduced-echelon kernel vectors built
// from the free columns of rref(a), scaled to coprime integers with positive
// leading entry. a * result == 0 exactly; result has full column rank.
inline rational_matrix kernel_basis(const rational_matrix& a) {
    const std::size_t n = a.cols();
    const auto r = rref(a);
    std::vector<bool> is_pivot(n, false);
    for (auto p : r.pivot_cols) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < n; ++j)
        if (!is_pivot[j]) free_cols.push_back(j);

    rational_matrix k(n, free_cols.size());
    for (std::size_t fi = 0; fi < free_cols.size(); ++fi) {
        std::vector<rational> v(n);
        v[free_cols[fi]] = 1;
        for (std::size_t pi = 0; pi < r.pivot_cols.size(); ++pi)
            v[r.pivot_cols[pi]] = -r.m(pi, free_cols[fi]);
        normalize_integer_vector(v);
        for (std::size_t i = 0; i < n; ++i) k(i, fi) = v[i];
    }
    return k;
}

// Canonical basis of the column span: RREF applied to the transpose, nonzero
// rows scaled to coprime integers. Any two matrices with the same column span
// map to the same result.
inline rational_matrix canonical_columns(const rational_matrix& a) {
    const auto r = rref(a.transpose());
    const std::size_t dim = r.pivot_cols.size();
    rational_matrix out(a.rows(), dim);
    for (std::size_t i = 0; i < dim; ++i) {
        std::vector<rational> v(a.rows());
        for (std::size_t j = 0; j < a.rows(); ++j) v[j] = r.m(i, j);
        normalize_integer_vector(v);
        for (std::size_t j = 0; j < a.rows(); ++j) out(j, i) = v[j];
    }
    return out;
}

inline bool same_column_span(const rational_matrix& a, const rational_matrix& b) {
    return canonical_columns(a) == canonical_columns(b);
}

// Least-squares solution of a X = b via the exact normal equations
// (a^T a) X = a^T b. Free variables are set to zero. The normal system is
// always consistent; a contradiction row means a bug upstream.
inline rational_matrix solve_least_squares(const rational_matrix& a, const rational_matrix& b) {
    if (a.rows() != b.rows()) throw internal_error("solve_least_squares: row mismatch");
    const rational_matrix at = a.transpose();
    const rational_matrix g = at * a;
    const rational_matrix h = at * b;
    const std::size_t n = a.cols(), k = b.cols();
    const auto r = rref(hcat(g, h));
    rational_matrix x(n, k);
    for (std::size_t pi = 0; pi < r.pivot_cols.size(); ++pi) {
        const std::size_t p = r.pivot_cols[pi];
        if (p >= n) throw internal_error("solve_least_squares: inconsistent normal equations");
        for (std::size_t j = 0; j < k; ++j) x(p, j) = r.m(pi, n + j);
    }
    return x;
}

// Least squares plus the guarantee that the residual vanishes; used where the
// right-hand side is known to lie in the column span of a.
inline rational_matrix solve_exact(const rational_matrix& a, const rational_matrix& b) {
    rational_matrix x = solve_least_squares(a, b);
    if (!(a * x + (-b)).is_zero())
        throw internal_error("solve_exact: right-hand side outside column span");
    return x;
}

inline rational_matrix inverse(const rational_matrix& a) {
    if (a.rows() != a.cols()) throw internal_error("inverse: matrix not square");
    const std::size_t n = a.rows();
    const auto r = rref(hcat(a, rational_matrix::identity(n)));
    if (r.pivot_cols.size() != n || (n > 0 && r.pivot_cols.back() >= n))
        throw internal_error("inverse: singular matrix");
    rational_matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = r.m(i, n + j);
    return inv;
}

} // namespace pathlap
