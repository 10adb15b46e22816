#pragma once

#include <future>
#include <optional>
#include <thread>
#include <vector>

#include "pathlap/digraph.hpp"
#include "pathlap/laplacian.hpp"

namespace pathlap {

// Two snapshots of one filtration, g_t contained in g_s.
struct filtration_pair {
    double t = 0.0, s = 0.0;
    digraph graph_t, graph_s;

    filtration_pair(double t_, double s_, digraph gt, digraph gs)
        : t(t_), s(s_), graph_t(std::move(gt)), graph_s(std::move(gs)) {
        if (t > s) throw std::invalid_argument("filtration_pair: t must be <= s");
        if (!graph_t.is_subgraph_of(graph_s))
            throw std::invalid_argument("filtration_pair: graphs are not nested");
    }
};

inline filtration_pair make_filtration_pair(const weighted_digraph& g, double t, double s,
                                            bool keep_isolated) {
    return filtration_pair(t, s, subgraph_at(g, t, keep_isolated),
                           subgraph_at(g, s, keep_isolated));
}

struct persistent_report {
    int dimension = 0;
    double t = 0.0, s = 0.0;
    std::size_t omega_t_dim = 0; // order of the Laplacian
    std::size_t pair_dim = 0;    // dim of the pair space one level up
    rational_matrix laplacian_exact;
    symmetric_matrix matrix;
    long long betti = 0;
    spectrum spec;
    bool nullity_matches = true;
};

namespace detail {

// Rows of `m` are indexed by the paths of `from`; re-embed them into the row
// space indexed by `to`. Every path of `from` must appear in `to`.
inline rational_matrix embed_rows(const rational_matrix& m, const path_basis& from,
                                  const path_basis& to) {
    rational_matrix out(to.size(), m.cols());
    for (std::size_t i = 0; i < from.size(); ++i) {
        auto idx = to.index_of(from.paths[i]);
        if (!idx) throw internal_error("embed_rows: path missing from ambient basis");
        for (std::size_t j = 0; j < m.cols(); ++j) out(*idx, j) = m(i, j);
    }
    return out;
}

} // namespace detail

// Coordinates (in the canonical basis of Omega_n of g_s) of the canonical
// basis of the pair space {a in Omega_n^s : boundary(a) in Omega_{n-1}^t}.
// Computed as the kernel of [D | -W] projected to its first block, where D
// holds the boundaries of the Omega_n^s basis and W the embedded Omega_{n-1}^t
// basis; W has full column rank, so the projection is injective.
inline rational_matrix omega_pair_coords(const path_analyzer& at, const path_analyzer& as,
                                         int n) {
    const omega_basis& os = as.omega(n);
    if (n == 0) return rational_matrix::identity(os.dim());
    if (os.dim() == 0) return rational_matrix(0, 0);

    const rational_matrix d = as.allowed_boundary(n) * os.vectors;
    const omega_basis& ot = at.omega(n - 1);
    rational_matrix block;
    if (ot.dim() == 0) {
        block = kernel_basis(d);
    } else {
        const rational_matrix w =
            detail::embed_rows(ot.vectors, ot.ambient, as.allowed(n - 1));
        block = kernel_basis(hcat(d, -w)).top_rows(os.dim());
    }
    return canonical_columns(block);
}

// Pair space as chains over the allowed n-paths of g_s.
inline omega_basis omega_pair_basis(const filtration_pair& pair, int n,
                                    analyzer_options opt = {}) {
    path_analyzer at(pair.graph_t, opt), as(pair.graph_s, opt);
    const rational_matrix coords = omega_pair_coords(at, as, n);
    omega_basis out;
    out.dimension = n;
    out.ambient = as.allowed(n);
    out.vectors = as.omega(n).vectors * coords;
    return out;
}

namespace detail {

// L_n^{t,s} = B P^{-1} B^T + (B_n^t)^T B_n^t where B expresses the boundary of
// the chosen pair basis in Omega_n^t coordinates and P is the Gram matrix of
// that basis in the (declared orthonormal) Omega_{n+1}^s coordinates. With the
// canonical basis at t = s this collapses to the ordinary path Laplacian.
inline persistent_report persistent_laplacian_impl(const path_analyzer& at,
                                                   const path_analyzer& as, double t, double s,
                                                   int n,
                                                   const rational_matrix* pair_basis) {
    persistent_report r;
    r.dimension = n;
    r.t = t;
    r.s = s;
    const omega_basis& ot = at.omega(n);
    r.omega_t_dim = ot.dim();
    const analyzer_options& opt = at.options();
    if (r.omega_t_dim == 0) {
        r.spec.tolerance = opt.zero_tolerance.value_or(default_zero_tolerance({}));
        return r;
    }

    const rational_matrix coords =
        pair_basis ? *pair_basis : omega_pair_coords(at, as, n + 1);
    r.pair_dim = coords.cols();

    rational_matrix up_term(r.omega_t_dim, r.omega_t_dim);
    std::size_t up_rank = 0;
    if (coords.cols() > 0) {
        const omega_basis& os_hi = as.omega(n + 1);
        const rational_matrix rhs = as.allowed_boundary(n + 1) * (os_hi.vectors * coords);
        const rational_matrix ot_embedded =
            detail::embed_rows(ot.vectors, ot.ambient, as.allowed(n));
        const rational_matrix b = solve_exact(ot_embedded, rhs);
        const rational_matrix gram = coords.transpose() * coords;
        up_term = b * inverse(gram) * b.transpose();
        up_rank = rank(b);
    }

    const rational_matrix& bt = at.boundary(n);
    r.laplacian_exact = up_term + bt.transpose() * bt;
    r.matrix = to_symmetric(r.laplacian_exact);
    r.betti = static_cast<long long>(r.omega_t_dim) - static_cast<long long>(rank(bt)) -
              static_cast<long long>(up_rank);
    r.spec = symmetric_eigenvalues(r.matrix, opt.zero_tolerance);
    r.nullity_matches = (r.betti == static_cast<long long>(r.spec.zero_count));
    return r;
}

} // namespace detail

inline persistent_report persistent_laplacian(const filtration_pair& pair, int n,
                                              analyzer_options opt = {}) {
    path_analyzer at(pair.graph_t, opt), as(pair.graph_s, opt);
    return detail::persistent_laplacian_impl(at, as, pair.t, pair.s, n, nullptr);
}

// Same computation with an explicit (not necessarily canonical) basis of the
// pair space one level up, given as coordinate columns over the canonical
// Omega_{n+1}^s basis. The spectrum must not depend on this choice.
inline persistent_report persistent_laplacian_with_basis(const filtration_pair& pair, int n,
                                                         const rational_matrix& pair_basis,
                                                         analyzer_options opt = {}) {
    path_analyzer at(pair.graph_t, opt), as(pair.graph_s, opt);
    return detail::persistent_laplacian_impl(at, as, pair.t, pair.s, n, &pair_basis);
}

struct sweep_result {
    std::vector<int> dims;
    bool keep_isolated = false;
    std::vector<double> thresholds;
    // reports[i][k] is the diagonal report at thresholds[i] for dims[k]
    std::vector<std::vector<persistent_report>> reports;
};

// Diagonal reports (t = s = delta) at every critical threshold. Work items are
// independent; thresholds are processed in parallel and written to fixed slots
// so the result order is deterministic.
inline sweep_result sweep(const weighted_digraph& g, const std::vector<int>& dims,
                          bool keep_isolated, analyzer_options opt = {}) {
    if (dims.empty()) throw std::invalid_argument("sweep: dims must be non-empty");
    sweep_result out;
    out.dims = dims;
    out.keep_isolated = keep_isolated;
    out.thresholds = filtration_thresholds(g);
    out.reports.resize(out.thresholds.size());

    const auto run_one = [&](std::size_t i) {
        const double delta = out.thresholds[i];
        path_analyzer an(subgraph_at(g, delta, keep_isolated), opt);
        std::vector<persistent_report> row;
        row.reserve(dims.size());
        for (int n : dims)
            row.push_back(detail::persistent_laplacian_impl(an, an, delta, delta, n, nullptr));
        out.reports[i] = std::move(row);
    };

    const std::size_t workers =
        std::min<std::size_t>(out.thresholds.size(),
                              std::max(1u, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < out.thresholds.size(); ++i) run_one(i);
    } else {
        std::vector<std::future<void>> futures;
        futures.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
            futures.push_back(std::async(std::launch::async, [&, w] {
                for (std::size_t i = w; i < out.thresholds.size(); i += workers) run_one(i);
            }));
        for (auto& f : futures) f.get();
    }
    return out;
}

} // namespace pathlap
