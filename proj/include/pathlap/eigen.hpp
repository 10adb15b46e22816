#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "pathlap/matrix.hpp"

namespace pathlap {

// Eigenvalues of a Laplacian in ascending order, with the harmonic part split
// off by the zero tolerance actually used.
struct spectrum {
    std::vector<double> eigenvalues;
    std::size_t zero_count = 0;
    std::optional<double> fiedler; // smallest eigenvalue above the tolerance
    double tolerance = 0.0;
};

namespace detail {

inline double off_diagonal_frobenius(const std::vector<double>& a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) s += a[i * n + j] * a[i * n + j];
    return std::sqrt(s);
}

} // namespace detail

// Cyclic Jacobi eigensolver. Rotations are applied until the off-diagonal
// Frobenius norm falls below 1e-12 times the Frobenius norm of the input.
inline std::vector<double> jacobi_eigenvalues(const symmetric_matrix& m) {
    const std::size_t n = m.order();
    std::vector<double> a(n * n);
    double frob = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            a[i * n + j] = m(i, j);
            frob += m(i, j) * m(i, j);
        }
    frob = std::sqrt(frob);
    const double target = 1e-12 * frob;

    if (n > 1 && frob > 0.0) {
        for (int sweep = 0; sweep < 128; ++sweep) {
            if (detail::off_diagonal_frobenius(a, n) <= target) break;
            for (std::size_t p = 0; p + 1 < n; ++p) {
                for (std::size_t q = p + 1; q < n; ++q) {
                    const double apq = a[p * n + q];
                    if (apq == 0.0) continue;
                    const double app = a[p * n + p], aqq = a[q * n + q];
                    const double theta = (aqq - app) / (2.0 * apq);
                    const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                     (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    const double c = 1.0 / std::sqrt(t * t + 1.0);
                    const double s = t * c;
                    for (std::size_t k = 0; k < n; ++k) {
                        const double akp = a[k * n + p], akq = a[k * n + q];
                        a[k * n + p] = c * akp - s * akq;
                        a[k * n + q] = s * akp + c * akq;
                    }
                    for (std::size_t k = 0; k < n; ++k) {
                        const double apk = a[p * n + k], aqk = a[q * n + k];
                        a[p * n + k] = c * apk - s * aqk;
                        a[q * n + k] = s * apk + c * aqk;
                    }
                }
            }
        }
    }

    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a[i * n + i];
    std::sort(eig.begin(), eig.end());
    return eig;
}

// Default zero tolerance: 1e-8 scaled by the largest eigenvalue (at least 1).
inline double default_zero_tolerance(const std::vector<double>& ascending) {
    const double lmax = ascending.empty() ? 0.0 : ascending.back();
    return 1e-8 * std::max(1.0, lmax);
}

inline spectrum symmetric_eigenvalues(const symmetric_matrix& m,
                                      std::optional<double> tolerance_override = {}) {
    spectrum s;
    s.eigenvalues = jacobi_eigenvalues(m);
    s.tolerance = tolerance_override.value_or(default_zero_tolerance(s.eigenvalues));
    for (double v : s.eigenvalues) {
        if (v <= s.tolerance) {
            ++s.zero_count;
        } else {
            s.fiedler = v;
            break;
        }
    }
    return s;
}

} // namespace pathlap
