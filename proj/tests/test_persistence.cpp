#include <cmath>
#include <random>

#include "doctest.h"
#include "pathlap/pathlap.hpp"
#include "test_util.hpp"

using namespace pathlap;
using testutil::mat;

namespace {

// Independent dimension oracle for the pair space: with D the boundaries of
// the omega basis of g_s and W the embedded omega basis of g_t one dimension
// down, dim = dim Omega_n^s - (rank [D W] - rank W), all ranks via the naive
// elimination in test_util.
std::size_t pair_dim_oracle(const digraph& gt, const digraph& gs, int n) {
    path_analyzer at(gt), as(gs);
    const auto& os = as.omega(n);
    if (os.dim() == 0) return 0;
    const rational_matrix d = as.allowed_boundary(n) * os.vectors;
    const auto& ot = at.omega(n - 1);
    if (ot.dim() == 0) return os.dim() - testutil::naive_rank(d);
    const auto& lower_s = as.allowed(n - 1);
    rational_matrix w(lower_s.size(), ot.dim());
    for (std::size_t i = 0; i < ot.ambient.size(); ++i) {
        const auto idx = lower_s.index_of(ot.ambient.paths[i]);
        REQUIRE(idx.has_value());
        for (std::size_t j = 0; j < ot.dim(); ++j) w(*idx, j) = ot.vectors(i, j);
    }
    return os.dim() - (testutil::naive_rank(hcat(d, w)) - testutil::naive_rank(w));
}

rational_matrix random_invertible(std::mt19937& rng, std::size_t k) {
    std::uniform_int_distribution<int> entry(-2, 2);
    while (true) {
        rational_matrix r(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) r(i, j) = entry(rng);
        if (rank(r) == k) return r;
    }
}

} // namespace

TEST_CASE("pair space at t = s is the plain omega space") {
    const auto g = testutil::fig2c();
    const filtration_pair pair(1.0, 1.0, g, g);
    for (int n = 0; n <= 2; ++n) {
        const auto pair_basis = omega_pair_basis(pair, n);
        const auto plain = compute_omega_basis(g, n);
        CHECK(same_column_span(pair_basis.vectors, plain.vectors));
    }
}

TEST_CASE("cycle over its vertex set: every boundary already lands in omega_0") {
    const auto gs = testutil::fig2a();
    const digraph gt({1, 2, 3}, {}); // vertices kept, no edges
    const filtration_pair pair(0.0, 1.0, gt, gs);
    const auto basis = omega_pair_basis(pair, 1);
    CHECK(basis.vectors == rational_matrix::identity(3));
    CHECK(pair_dim_oracle(gt, gs, 1) == 3);
}

TEST_CASE("cycle over the empty digraph: only the closed loop survives") {
    const auto gs = testutil::fig2a();
    const digraph gt; // no vertices at all, so omega_0^t = {0}
    const filtration_pair pair(0.0, 1.0, gt, gs);
    const auto basis = omega_pair_basis(pair, 1);
    REQUIRE(basis.vectors.cols() == 1);
    // ambient edges are {12, 23, 31}: the generator is e12 + e23 + e31
    CHECK(basis.vectors == mat({{1}, {1}, {1}}));
    CHECK(pair_dim_oracle(gt, gs, 1) == 1);
}

TEST_CASE("square minus its closing edge has an empty pair space in dim 2") {
    const auto gs = testutil::fig2c();
    const digraph gt({1, 2, 3, 4}, {{1, 2}, {1, 4}, {2, 3}});
    const filtration_pair pair(0.0, 1.0, gt, gs);
    CHECK(omega_pair_basis(pair, 2).vectors.cols() == 0);
    CHECK(pair_dim_oracle(gt, gs, 2) == 0);
}

TEST_CASE("pair dimensions match the rank oracle on random nested digraphs") {
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> wdist(0.1, 1.0);
    for (int trial = 0; trial < 15; ++trial) {
        const digraph base = testutil::random_digraph(rng, 6, 0.35);
        if (base.edge_count() == 0) continue;
        std::map<edge, double> w;
        for (const auto& e : base.edges()) w[e] = wdist(rng);
        const weighted_digraph g(base, w);
        const auto thresholds = filtration_thresholds(g);
        const double t = thresholds[thresholds.size() / 2];
        const double s = thresholds.back();
        const auto pair = make_filtration_pair(g, t, s, true);
        for (int n = 1; n <= 2; ++n) {
            const auto basis = omega_pair_basis(pair, n);
            CHECK(basis.vectors.cols() == pair_dim_oracle(pair.graph_t, pair.graph_s, n));
            // monotone: never exceeds the omega dimension of the larger graph
            CHECK(basis.vectors.cols() <= compute_omega_basis(pair.graph_s, n).dim());
        }
    }
}

TEST_CASE("pair spaces grow with t") {
    const auto g = testutil::pyra2();
    const auto thresholds = filtration_thresholds(g);
    REQUIRE(thresholds.size() == 5); // 0, 1, sqrt3, 2, sqrt5
    const double s = thresholds.back();
    path_analyzer as(subgraph_at(g, s, true));
    rational_matrix prev;
    bool first = true;
    for (double t : thresholds) {
        path_analyzer at(subgraph_at(g, t, true));
        const rational_matrix c = omega_pair_coords(at, as, 2);
        if (!first) {
            // span(prev) must be contained in span(c)
            CHECK(rank(hcat(c, prev)) == rank(c));
        }
        prev = c;
        first = false;
    }
    CHECK(prev.cols() == compute_omega_basis(as.graph(), 2).dim());
}

TEST_CASE("diagonal persistent laplacian collapses to the plain one") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> wdist(0.1, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const digraph base = testutil::random_digraph(rng, 6, 0.35);
        std::map<edge, double> w;
        for (const auto& e : base.edges()) w[e] = wdist(rng);
        const weighted_digraph g(base, w);
        for (double delta : filtration_thresholds(g)) {
            const auto pair = make_filtration_pair(g, delta, delta, false);
            for (int n = 0; n <= 2; ++n) {
                const auto pr = persistent_laplacian(pair, n);
                const auto lr = path_laplacian(pair.graph_t, n);
                CHECK(pr.laplacian_exact == lr.laplacian_exact);
                CHECK(pr.betti == lr.betti);
            }
        }
    }
}

TEST_CASE("tetra 1 full graph: no 1- or 2-dimensional homology") {
    const auto g = testutil::tetra1();
    const double s = std::sqrt(2.0);
    const auto pair = make_filtration_pair(g, s, s, false);
    CHECK(persistent_laplacian(pair, 1).betti == 0);
    CHECK(persistent_laplacian(pair, 2).betti == 0);
}

TEST_CASE("pyra 1 at sqrt3 kills the base loop") {
    const auto pair = make_filtration_pair(testutil::pyra1(), std::sqrt(3.0), std::sqrt(3.0), false);
    CHECK(persistent_laplacian(pair, 1).betti == 0);
}

TEST_CASE("pyra 2 off-diagonal pair from sqrt3 to sqrt5") {
    const auto g = testutil::pyra2();
    const auto pair = make_filtration_pair(g, std::sqrt(3.0), std::sqrt(5.0), false);
    // exactly one 2-chain of the full pyramid has boundary inside the sqrt3 graph
    const auto basis = omega_pair_basis(pair, 2);
    CHECK(basis.vectors.cols() == 1);
    const auto pr = persistent_laplacian(pair, 1);
    CHECK(pr.omega_t_dim == 5);
    CHECK(pr.pair_dim == 1);
    CHECK(pr.betti == 0);
    CHECK(pr.nullity_matches);
}

TEST_CASE("spectra do not depend on the pair-basis choice") {
    std::mt19937 rng(37);
    const auto g = testutil::pyra2();
    const auto thresholds = filtration_thresholds(g);
    for (std::size_t ti = 0; ti < thresholds.size(); ++ti) {
        for (std::size_t si = ti; si < thresholds.size(); ++si) {
            const auto pair = make_filtration_pair(g, thresholds[ti], thresholds[si], true);
            for (int n = 0; n <= 1; ++n) {
                const auto canonical = persistent_laplacian(pair, n);
                if (canonical.pair_dim == 0) continue;
                path_analyzer at(pair.graph_t), as(pair.graph_s);
                const rational_matrix c = omega_pair_coords(at, as, n + 1);
                const rational_matrix r = random_invertible(rng, c.cols());
                const auto changed = persistent_laplacian_with_basis(pair, n, c * r);
                CHECK(changed.betti == canonical.betti);
                REQUIRE(changed.spec.eigenvalues.size() == canonical.spec.eigenvalues.size());
                for (std::size_t i = 0; i < changed.spec.eigenvalues.size(); ++i)
                    CHECK(std::abs(changed.spec.eigenvalues[i] -
                                   canonical.spec.eigenvalues[i]) <= 1e-8);
                // in exact arithmetic the laplacian itself is invariant
                CHECK(changed.laplacian_exact == canonical.laplacian_exact);
            }
        }
    }
}

TEST_CASE("sweep of pyra 2 with isolated vertices kept") {
    const auto result = sweep(testutil::pyra2(), {0, 1, 2}, true);
    REQUIRE(result.thresholds.size() == 5);
    CHECK(result.thresholds[0] == 0.0);
    CHECK(result.thresholds[1] == 1.0);

    // delta = 0: five isolated vertices
    CHECK(result.reports[0][0].betti == 5);
    testutil::check_spectrum(result.reports[0][0].spec.eigenvalues, {0, 0, 0, 0, 0});

    // delta = 1: base square plus the isolated apex. The published table lists
    // {0,0,0.6571,2.5293,4.8136} here, but that contradicts its own boundary
    // matrix: appending an isolated vertex adds exactly one zero eigenvalue to
    // the spectrum of the square alone, giving {0,0,2,2,4}.
    const auto& r10 = result.reports[1][0];
    CHECK(r10.betti == 2);
    testutil::check_spectrum(r10.spec.eigenvalues, {0, 0, 2, 2, 4});
    const auto& r11 = result.reports[1][1];
    CHECK(r11.betti == 1);
    testutil::check_spectrum(r11.spec.eigenvalues, {0, 2, 2, 4});
    REQUIRE(r11.spec.fiedler.has_value());
    CHECK(*r11.spec.fiedler == doctest::Approx(2.0));
}

TEST_CASE("sweep of pyra 2 without isolated vertices") {
    const auto result = sweep(testutil::pyra2(), {0, 1}, false);
    // delta = 0: empty digraph, empty reports
    CHECK(result.reports[0][0].omega_t_dim == 0);
    CHECK(result.reports[0][0].betti == 0);
    // delta = 1: the square alone
    CHECK(result.reports[1][0].betti == 1);
    testutil::check_spectrum(result.reports[1][0].spec.eigenvalues, {0, 2, 2, 4});
    CHECK(result.reports[1][1].betti == 1);
    testutil::check_spectrum(result.reports[1][1].spec.eigenvalues, {0, 2, 2, 4});
}

TEST_CASE("pyra 1 terminal graph matches the published spectra") {
    const auto g = testutil::pyra1();
    // sqrt5 is past the last critical value sqrt3; the graphs coincide
    const auto pair = make_filtration_pair(g, std::sqrt(5.0), std::sqrt(5.0), false);
    const auto r2 = persistent_laplacian(pair, 2);
    CHECK(r2.betti == 0);
    testutil::check_spectrum(r2.spec.eigenvalues, {1, 3, 3, 5});
    const auto result = sweep(g, {2}, false);
    CHECK(result.thresholds.back() == doctest::Approx(std::sqrt(3.0)));
    CHECK(result.reports.back()[0].laplacian_exact == r2.laplacian_exact);
}

TEST_CASE("single-edge sweep") {
    const weighted_digraph g(digraph({1, 2}, {{1, 2}}), {{{1, 2}, 0.5}});
    const auto kept = sweep(g, {0}, true);
    CHECK(kept.thresholds == std::vector<double>{0.0, 0.5});
    CHECK(kept.reports[0][0].betti == 2);
    CHECK(kept.reports[1][0].betti == 1);
    const auto dropped = sweep(g, {0}, false);
    CHECK(dropped.reports[0][0].betti == 0);
    CHECK(dropped.reports[1][0].betti == 1);
}

TEST_CASE("filtration pair validation") {
    CHECK_THROWS_AS(filtration_pair(1.0, 0.0, digraph(), digraph()), std::invalid_argument);
    const auto small = testutil::fig2b();
    const auto big = testutil::fig2a(); // not a supergraph of fig2b
    CHECK_THROWS_AS(filtration_pair(0.0, 1.0, small, big), std::invalid_argument);
}
