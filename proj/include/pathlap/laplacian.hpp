#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <vector>

#include "pathlap/digraph.hpp"
#include "pathlap/eigen.hpp"
#include "pathlap/linalg.hpp"
#include "pathlap/path_complex.hpp"

namespace pathlap {

struct analyzer_options {
    std::size_t max_paths = default_max_paths;
    std::optional<double> zero_tolerance; // absolute override for the eigensolver
};

struct laplacian_report {
    int dimension = 0;
    std::size_t omega_dim = 0;
    rational_matrix laplacian_exact; // assembled over rationals, then rounded once
    symmetric_matrix matrix;
    long long betti = 0; // exact, from rational ranks
    spectrum spec;
    bool nullity_matches = true; // betti == spec.zero_count
};

// Per-digraph computation cache. Allowed paths, omega bases and boundary
// matrices are computed lazily per dimension and shared by every report.
// Idempotent inserts behind one lock make concurrent use safe.
class path_analyzer {
public:
    explicit path_analyzer(digraph g, analyzer_options opt = {})
        : g_(std::move(g)), opt_(opt) {}

    const digraph& graph() const { return g_; }
    const analyzer_options& options() const { return opt_; }

    const path_basis& allowed(int n) const {
        std::lock_guard<std::recursive_mutex> lock(mu_);
        auto it = allowed_.find(n);
        if (it == allowed_.end())
            it = allowed_.emplace(n, allowed_paths(g_, n, opt_.max_paths)).first;
        return it->second;
    }

    const omega_basis& omega(int n) const {
        std::lock_guard<std::recursive_mutex> lock(mu_);
        auto it = omega_.find(n);
        if (it == omega_.end())
            it = omega_.emplace(n, compute_omega_basis(g_, n, opt_.max_paths)).first;
        return it->second;
    }

    // Boundary of A_n expressed over the allowed (n-1)-paths only; rows whose
    // path is not allowed are dropped here (they are exactly the rows used to
    // carve out the omega basis).
    rational_matrix allowed_boundary(int n) const {
        const path_basis& upper = allowed(n);
        const path_basis& lower = allowed(n - 1);
        rational_matrix m(lower.size(), upper.size());
        for (std::size_t j = 0; j < upper.size(); ++j) {
            const path_chain b = regular_boundary(upper.paths[j]);
            for (const auto& [q, c] : b.terms())
                if (auto i = lower.index_of(q)) m(*i, j) = c;
        }
        return m;
    }

    // B_n: the boundary restricted to the omega bases, defined by
    // O_{n-1} B_n = M~_n O_n and solved exactly. B_0 maps into the truncated
    // dimension -1, a 0 x dim(Omega_0) matrix.
    const rational_matrix& boundary(int n) const {
        std::lock_guard<std::recursive_mutex> lock(mu_);
        auto it = boundary_.find(n);
        if (it != boundary_.end()) return it->second;
        rational_matrix b;
        if (n == 0) {
            b = rational_matrix(0, omega(0).dim());
        } else {
            const omega_basis& hi = omega(n);
            const omega_basis& lo = omega(n - 1);
            if (hi.dim() == 0) {
                b = rational_matrix(lo.dim(), 0);
            } else {
                b = solve_exact(lo.vectors, allowed_boundary(n) * hi.vectors);
            }
        }
        return boundary_.emplace(n, std::move(b)).first->second;
    }

    laplacian_report laplacian(int n) const {
        std::lock_guard<std::recursive_mutex> lock(mu_);
        auto it = report_.find(n);
        if (it != report_.end()) return it->second;

        laplacian_report r;
        r.dimension = n;
        const omega_basis& on = omega(n);
        r.omega_dim = on.dim();
        if (r.omega_dim == 0) {
            r.spec.tolerance = opt_.zero_tolerance.value_or(default_zero_tolerance({}));
        } else {
            const rational_matrix& bn = boundary(n);
            const rational_matrix& bn1 = boundary(n + 1);
            r.laplacian_exact = bn1 * bn1.transpose() + bn.transpose() * bn;
            r.matrix = to_symmetric(r.laplacian_exact);
            r.betti = static_cast<long long>(r.omega_dim) -
                      static_cast<long long>(rank(bn)) - static_cast<long long>(rank(bn1));
            r.spec = symmetric_eigenvalues(r.matrix, opt_.zero_tolerance);
            r.nullity_matches = (r.betti == static_cast<long long>(r.spec.zero_count));
        }
        report_.emplace(n, r);
        return r;
    }

private:
    digraph g_;
    analyzer_options opt_;
    mutable std::recursive_mutex mu_;
    mutable std::map<int, path_basis> allowed_;
    mutable std::map<int, omega_basis> omega_;
    mutable std::map<int, rational_matrix> boundary_;
    mutable std::map<int, laplacian_report> report_;
};

// Boundary of A_n over every regular (n-1)-path that occurs in a boundary
// (allowed or not), rows in lexicographic order.
inline rational_matrix build_full_boundary(const digraph& g, int n,
                                           std::vector<elementary_path>* row_paths = nullptr,
                                           std::size_t max_paths = default_max_paths) {
    const path_basis upper = allowed_paths(g, n, max_paths);
    std::set<elementary_path> occurring;
    std::vector<path_chain> boundaries;
    boundaries.reserve(upper.size());
    for (const auto& p : upper.paths) {
        boundaries.push_back(regular_boundary(p));
        for (const auto& [q, c] : boundaries.back().terms()) occurring.insert(q);
    }
    std::map<elementary_path, std::size_t> row;
    std::size_t next = 0;
    for (const auto& q : occurring) row.emplace(q, next++);

    rational_matrix m(row.size(), upper.size());
    for (std::size_t j = 0; j < boundaries.size(); ++j)
        for (const auto& [q, c] : boundaries[j].terms()) m(row.at(q), j) = c;
    if (row_paths) {
        row_paths->clear();
        for (const auto& q : occurring) row_paths->push_back(q);
    }
    return m;
}

inline rational_matrix build_B(const digraph& g, int n, analyzer_options opt = {}) {
    return path_analyzer(g, opt).boundary(n);
}

inline laplacian_report path_laplacian(const digraph& g, int n, analyzer_options opt = {}) {
    return path_analyzer(g, opt).laplacian(n);
}

} // namespace pathlap
