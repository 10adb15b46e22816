#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "pathlap/digraph.hpp"
#include "pathlap/errors.hpp"
#include "pathlap/linalg.hpp"
#include "pathlap/matrix.hpp"
#include "pathlap/rational.hpp"

namespace pathlap {

// An elementary n-path is a sequence of n+1 vertices.
using elementary_path = std::vector<vertex_id>;

inline int path_dimension(const elementary_path& p) {
    return static_cast<int>(p.size()) - 1;
}

// Regular: consecutive vertices differ.
inline bool is_regular(const elementary_path& p) {
    for (std::size_t i = 1; i < p.size(); ++i)
        if (p[i - 1] == p[i]) return false;
    return true;
}

// Sparse rational combination of same-dimension elementary paths.
// Zero coefficients are never stored.
class path_chain {
public:
    void add(const elementary_path& p, const rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(p, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    const std::map<elementary_path, rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    friend bool operator==(const path_chain& a, const path_chain& b) {
        return a.terms_ == b.terms_;
    }

private:
    std::map<elementary_path, rational> terms_;
};

// Regular boundary: alternating-sign omission of one vertex at a time,
// dropping results that are no longer regular. 0-paths map to the zero chain
// (truncated complex).
inline path_chain regular_boundary(const elementary_path& p) {
    path_chain out;
    const int n = path_dimension(p);
    if (n <= 0) return out;
    for (int q = 0; q <= n; ++q) {
        // Omitting vertex q creates one new adjacency; the others are unchanged.
        if (q > 0 && q < n && p[q - 1] == p[q + 1]) continue;
        elementary_path face;
        face.reserve(p.size() - 1);
        for (int i = 0; i <= n; ++i)
            if (i != q) face.push_back(p[i]);
        out.add(face, (q % 2 == 0) ? rational(1) : rational(-1));
    }
    return out;
}

inline path_chain regular_boundary(const path_chain& chain) {
    path_chain out;
    for (const auto& [p, c] : chain.terms()) {
        const path_chain faces = regular_boundary(p);
        for (const auto& [q, d] : faces.terms()) out.add(q, c * d);
    }
    return out;
}

inline constexpr std::size_t default_max_paths = 1'000'000;

// Ordered basis of the allowed n-paths A_n.
struct path_basis {
    int dimension = 0;
    std::vector<elementary_path> paths; // lexicographically sorted

    std::size_t size() const { return paths.size(); }

    std::optional<std::size_t> index_of(const elementary_path& p) const {
        auto it = std::lower_bound(paths.begin(), paths.end(), p);
        if (it == paths.end() || *it != p) return std::nullopt;
        return static_cast<std::size_t>(it - paths.begin());
    }
};

// All directed walks of edge-length n, in lexicographic order. Enumeration is
// aborted with a resource error once max_paths is exceeded; results are never
// silently truncated.
inline path_basis allowed_paths(const digraph& g, int n,
                                std::size_t max_paths = default_max_paths) {
    if (n < 0) throw std::invalid_argument("allowed_paths: negative dimension");
    path_basis basis;
    basis.dimension = n;
    std::vector<elementary_path> current;
    for (vertex_id v : g.sorted_vertices()) current.push_back({v});
    for (int level = 1; level <= n; ++level) {
        std::vector<elementary_path> next;
        for (const auto& p : current) {
            for (vertex_id w : g.out_neighbors(p.back())) {
                if (next.size() >= max_paths)
                    throw resource_limit_error("allowed path count exceeds cap of " +
                                               std::to_string(max_paths));
                elementary_path q = p;
                q.push_back(w);
                next.push_back(std::move(q));
            }
        }
        current = std::move(next);
        if (current.empty()) break;
    }
    if (current.size() > max_paths)
        throw resource_limit_error("allowed path count exceeds cap of " +
                                   std::to_string(max_paths));
    basis.paths = std::move(current);
    return basis;
}

// Basis of the boundary-invariant space: chains of allowed n-paths whose
// regular boundary is supported on allowed (n-1)-paths. Columns of `vectors`
// are coordinates over `ambient`, in canonical reduced-echelon form with
// coprime integer entries and positive leading entry.
struct omega_basis {
    int dimension = 0;
    path_basis ambient;
    rational_matrix vectors;

    std::size_t dim() const { return vectors.cols(); }

    path_chain chain(std::size_t column) const {
        path_chain c;
        for (std::size_t i = 0; i < ambient.size(); ++i)
            c.add(ambient.paths[i], vectors(i, column));
        return c;
    }
};

// Kernel of the "non-allowed rows" matrix: one row per regular non-allowed
// (n-1)-path occurring in a boundary, one column per allowed n-path.
inline omega_basis compute_omega_basis(const digraph& g, int n,
                                       std::size_t max_paths = default_max_paths) {
    omega_basis result;
    result.dimension = n;
    result.ambient = allowed_paths(g, n, max_paths);
    const std::size_t cols = result.ambient.size();
    if (n == 0) {
        result.vectors = rational_matrix::identity(cols);
        return result;
    }
    if (cols == 0) {
        result.vectors = rational_matrix(0, 0);
        return result;
    }
    const path_basis lower = allowed_paths(g, n - 1, max_paths);

    std::map<elementary_path, std::size_t> row_index;
    std::vector<std::pair<std::size_t, path_chain>> boundaries;
    for (std::size_t j = 0; j < cols; ++j) {
        path_chain b = regular_boundary(result.ambient.paths[j]);
        for (const auto& [q, c] : b.terms())
            if (!lower.index_of(q)) row_index.try_emplace(q, 0);
        boundaries.emplace_back(j, std::move(b));
    }
    std::size_t next = 0;
    for (auto& [path, idx] : row_index) idx = next++;

    rational_matrix constraints(row_index.size(), cols);
    for (const auto& [j, b] : boundaries)
        for (const auto& [q, c] : b.terms()) {
            auto it = row_index.find(q);
            if (it != row_index.end()) constraints(it->second, j) = c;
        }
    result.vectors = kernel_basis(constraints);
    return result;
}

} // namespace pathlap
