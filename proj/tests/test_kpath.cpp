#include "kpath/errors.hpp"
#include "kpath/kpath.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace kpath;
using namespace kpath::testing;

TEST_CASE("walk probability: leaf to center of a star") {
    const Graph g = star_graph(3);
    const std::vector<vertex_t> path = {1, 0};
    CHECK(walk_probability(g, path) == 1.0);
}

TEST_CASE("walk probability: forced continuation on a path graph") {
    const Graph g = path_graph(3);
    const std::vector<vertex_t> path = {0, 1, 2};
    // at vertex 1 the unvisited set is {2} alone
    CHECK(walk_probability(g, path) == 1.0);
}

TEST_CASE("walk probability: inverse-weight choice") {
    const Graph g = from_edges(GraphKind::directed, true, {{0, 1, 1.0}, {0, 2, 3.0}});
    const std::vector<vertex_t> to_v = {0, 1};
    const std::vector<vertex_t> to_x = {0, 2};
    CHECK(walk_probability(g, to_v) == doctest::Approx(0.75));
    CHECK(walk_probability(g, to_x) == doctest::Approx(0.25));
}

TEST_CASE("walk probability: exclusion of earlier path vertices") {
    // 4-cycle: from 1, path (0,1,3): unvisited neighbors of 1 are {3} only
    // because 0 is already on the path.
    const Graph g = four_cycle();
    const std::vector<vertex_t> path = {0, 1, 3};
    CHECK(walk_probability(g, path) == doctest::Approx(0.5)); // 1/2 * 1
}

TEST_CASE("walk probability: errors") {
    const Graph g = path_graph(3);
    const std::vector<vertex_t> not_simple = {0, 1, 0};
    CHECK_THROWS_AS(walk_probability(g, not_simple), std::invalid_argument);
    const std::vector<vertex_t> no_edge = {0, 2};
    CHECK_THROWS_AS(walk_probability(g, no_edge), std::invalid_argument);
    const std::vector<vertex_t> too_short = {0};
    CHECK_THROWS_AS(walk_probability(g, too_short), std::invalid_argument);
}

TEST_CASE("kpath oracle: star with three leaves, kappa 2") {
    const auto scores = exact_kpath_centrality(star_graph(3), 2);
    CHECK(scores.values[0] == doctest::Approx(6.0));
    // each leaf: 1/3 (from center, l=1) + 2 * 1/2 (two-edge paths via center)
    for (vertex_t leaf = 1; leaf <= 3; ++leaf) {
        CHECK(scores.values[leaf] ==
              doctest::Approx(1.0 / 3.0 + 2.0 * 0.5).epsilon(1e-12));
    }
}

TEST_CASE("kpath oracle: path of three, kappa 2") {
    const auto scores = exact_kpath_centrality(path_graph(3), 2);
    CHECK(scores.values[1] == doctest::Approx(4.0));
    CHECK(scores.values[0] == doctest::Approx(1.5));
    CHECK(scores.values[2] == doctest::Approx(1.5));
}

TEST_CASE("kpath oracle: isolated vertex scores zero") {
    GraphBuilder b(GraphKind::undirected, false);
    b.add_edge(0, 1);
    b.ensure_vertex(2);
    const auto scores = exact_kpath_centrality(b.build(), 3);
    CHECK(scores.values[2] == 0.0);
}

TEST_CASE("kpath oracle: kappa beyond the longest simple path changes nothing") {
    const auto two = exact_kpath_centrality(path_graph(3), 2);
    const auto five = exact_kpath_centrality(path_graph(3), 5);
    for (std::size_t v = 0; v < 3; ++v) {
        CHECK(two.values[v] == five.values[v]);
    }
}

TEST_CASE("kpath oracle: guards") {
    Rng rng(3);
    const Graph g = random_graph(rng, 20, 0.3, GraphKind::undirected, false);
    CHECK_THROWS_AS(exact_kpath_centrality(g, 3), EnumerationLimitError);
    CHECK_NOTHROW(exact_kpath_centrality(g, 3, 32));
    CHECK_THROWS_AS(exact_kpath_centrality(g, 8, 32, 1000), EnumerationLimitError);
}

TEST_CASE("ra-kpath: edgeless graph estimates zero everywhere") {
    GraphBuilder b(GraphKind::undirected, false);
    for (int i = 0; i < 6; ++i) b.ensure_vertex(i);
    KPathParams params;
    params.kappa = 3;
    params.iterations_override = 500;
    const auto scores = ra_kpath(b.build(), params);
    for (const double v : scores.values) CHECK(v == 0.0);
}

TEST_CASE("ra-kpath: iteration count formula") {
    // 2 * kappa^2 * n^(1-2*alpha) * ln n, rounded up
    const double expected = 2.0 * 9.0 * std::pow(100.0, 0.6) * std::log(100.0);
    CHECK(ra_kpath_iterations(100, 3, 0.2) ==
          static_cast<std::uint64_t>(std::ceil(expected)));
    CHECK(ra_kpath_iterations(1, 3, 0.2) == 0);
    CHECK(ra_kpath_iterations(0, 3, 0.2) == 0);
    CHECK_THROWS_AS(ra_kpath_iterations(10, 0, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(ra_kpath_iterations(10, 3, 0.7), std::invalid_argument);
}

TEST_CASE("scripted walks: scaling of a single completed walk") {
    // star with center 0 and leaves 1..3: one walk leaf->center with
    // kappa=2, T=1 gives the center kappa*n*1/1 = 8.
    const Graph g = star_graph(3);
    KPathParams params;
    params.kappa = 2;
    const std::vector<ScriptedWalk> script = {{1, 1, {0}}};
    const auto scores = ra_kpath_scripted(g, params, script);
    CHECK(scores.values[0] == doctest::Approx(8.0));
    CHECK(scores.values[1] == 0.0);
    CHECK(scores.values[2] == 0.0);
    CHECK(scores.values[3] == 0.0);
}

TEST_CASE("scripted walks: early stop rolls the tallies back") {
    const Graph g = path_graph(3);
    WalkSimulator sim(g);
    // first walk completes and tallies vertex 1
    CHECK(sim.perform_scripted_walk(0, 1, std::vector<vertex_t>{1}));
    CHECK(sim.counts()[1] == 1);
    // second walk stalls after visiting vertex 1 again; its increment must
    // vanish while the first walk's tally stays
    CHECK_FALSE(sim.perform_scripted_walk(2, 2, std::vector<vertex_t>{1}));
    CHECK(sim.counts()[1] == 1);
    CHECK(sim.counts()[0] == 0);
    CHECK(sim.explored_clear());
}

TEST_CASE("scripted walks: natural stall at a dead end also rolls back") {
    const Graph g = path_graph(3);
    WalkSimulator sim(g);
    // 1 -> 0 wants two edges but 0 has no unvisited neighbor left
    CHECK_FALSE(sim.perform_scripted_walk(1, 2, std::vector<vertex_t>{0, 0}));
    CHECK(sim.counts()[0] == 0);
    CHECK(sim.explored_clear());
}

TEST_CASE("scripted walks: visiting an explored vertex is an error") {
    const Graph g = four_cycle();
    WalkSimulator sim(g);
    CHECK_THROWS_AS(
        sim.perform_scripted_walk(0, 3, std::vector<vertex_t>{1, 3, 1}),
        std::invalid_argument);
}

TEST_CASE("scripted walks: empty script with zero override gives zeros") {
    const Graph g = path_graph(3);
    KPathParams params;
    params.kappa = 2;
    params.iterations_override = 0;
    const auto scores = ra_kpath_scripted(g, params, {});
    for (const double v : scores.values) CHECK(v == 0.0);
}

TEST_CASE("scripted walks: override must match script length") {
    const Graph g = path_graph(3);
    KPathParams params;
    params.kappa = 2;
    params.iterations_override = 5;
    const std::vector<ScriptedWalk> script = {{0, 1, {1}}};
    CHECK_THROWS_AS(ra_kpath_scripted(g, params, script), std::invalid_argument);
}

TEST_CASE("walk hygiene: flags clear, no repeats, tallies exact") {
    Rng graph_rng(71);
    const Graph g = random_graph(graph_rng, 24, 0.2, GraphKind::undirected, false);
    WalkSimulator sim(g);
    Rng rng(2);
    std::uint64_t expected_total = 0;
    for (int walk = 0; walk < 500; ++walk) {
        const auto source = static_cast<vertex_t>(rng.below(g.vertex_count()));
        const auto length = static_cast<std::uint32_t>(1 + rng.below(5));
        const bool completed = sim.perform_walk(source, length, rng);
        CHECK(sim.explored_clear());
        const auto visited = sim.last_walk();
        for (std::size_t i = 0; i < visited.size(); ++i) {
            for (std::size_t j = i + 1; j < visited.size(); ++j) {
                CHECK(visited[i] != visited[j]);
            }
        }
        if (completed) {
            CHECK(visited.size() == static_cast<std::size_t>(length) + 1);
            expected_total += length;
        }
        const std::uint64_t total = std::accumulate(
            sim.counts().begin(), sim.counts().end(), std::uint64_t{0});
        CHECK(total == expected_total);
    }
}

TEST_CASE("ra-kpath: deterministic per seed, including multi-worker") {
    Rng graph_rng(73);
    const Graph g = random_graph(graph_rng, 30, 0.15, GraphKind::undirected, true);
    KPathParams params;
    params.kappa = 4;
    params.alpha = 0.2;
    params.seed = 12345;
    const auto a = ra_kpath(g, params);
    const auto b = ra_kpath(g, params);
    CHECK(a.values == b.values);
    params.workers = 3;
    const auto c = ra_kpath(g, params);
    const auto d = ra_kpath(g, params);
    CHECK(c.values == d.values);
}

TEST_CASE("ra-kpath: pooling two streams reproduces the two-worker run") {
    Rng graph_rng(79);
    const Graph g = random_graph(graph_rng, 20, 0.25, GraphKind::undirected, false);
    const std::uint32_t kappa = 3;
    const std::uint64_t iterations = 1000;
    const std::uint64_t seed = 7;

    WalkSimulator sim0(g), sim1(g);
    Rng stream0(seed, 0), stream1(seed, 1);
    detail::run_estimator_walks(g, kappa, iterations / 2, stream0, sim0);
    detail::run_estimator_walks(g, kappa, iterations / 2, stream1, sim1);

    KPathParams params;
    params.kappa = kappa;
    params.iterations_override = iterations;
    params.seed = seed;
    params.workers = 2;
    const auto pooled = ra_kpath_counts(g, params);
    REQUIRE(pooled.iterations == iterations);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        CHECK(pooled.counts[v] == sim0.counts()[v] + sim1.counts()[v]);
        const double expected =
            static_cast<double>(kappa) * static_cast<double>(g.vertex_count()) /
            static_cast<double>(iterations) *
            static_cast<double>(pooled.counts[v]);
        CHECK(pooled.scores.values[v] == expected);
    }
}

TEST_CASE("ra-kpath: unbiased on the 8-vertex fixture") {
    const Graph g = fixture8();
    const std::uint32_t kappa = 3;
    const auto exact = exact_kpath_centrality(g, kappa);
    const std::size_t runs = 5000;
    const std::size_t n = g.vertex_count();
    std::vector<double> sum(n, 0.0), sumsq(n, 0.0);
    for (std::size_t r = 0; r < runs; ++r) {
        KPathParams params;
        params.kappa = kappa;
        params.iterations_override = 64;
        params.seed = r;
        const auto est = ra_kpath(g, params);
        for (std::size_t v = 0; v < n; ++v) {
            sum[v] += est.values[v];
            sumsq[v] += est.values[v] * est.values[v];
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
        const double mean = sum[v] / static_cast<double>(runs);
        const double var =
            (sumsq[v] - static_cast<double>(runs) * mean * mean) /
            static_cast<double>(runs - 1);
        const double se = std::sqrt(std::max(var, 0.0) / static_cast<double>(runs));
        CHECK(std::abs(mean - exact.values[v]) <= 3.0 * se + 1e-12);
    }
}

TEST_CASE("ra-kpath: unbiased on a small weighted graph") {
    const Graph g = from_edges(GraphKind::undirected, true,
                               {{0, 1, 0.5}, {0, 2, 2.0}, {1, 2, 1.0},
                                {2, 3, 0.25}, {3, 4, 1.0}, {1, 4, 4.0}});
    const std::uint32_t kappa = 3;
    const auto exact = exact_kpath_centrality(g, kappa);
    const std::size_t runs = 4000;
    const std::size_t n = g.vertex_count();
    std::vector<double> sum(n, 0.0), sumsq(n, 0.0);
    for (std::size_t r = 0; r < runs; ++r) {
        KPathParams params;
        params.kappa = kappa;
        params.iterations_override = 50;
        params.seed = 1000 + r;
        const auto est = ra_kpath(g, params);
        for (std::size_t v = 0; v < n; ++v) {
            sum[v] += est.values[v];
            sumsq[v] += est.values[v] * est.values[v];
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
        const double mean = sum[v] / static_cast<double>(runs);
        const double var =
            (sumsq[v] - static_cast<double>(runs) * mean * mean) /
            static_cast<double>(runs - 1);
        const double se = std::sqrt(std::max(var, 0.0) / static_cast<double>(runs));
        CHECK(std::abs(mean - exact.values[v]) <= 3.0 * se + 1e-12);
    }
}

TEST_CASE("ra-kpath: additive error bound holds with slack at n=50") {
    // fixture8 plus isolated padding: exact values are unchanged on the core
    // and zero on the padding, so the oracle stays tractable while n (and
    // therefore T and the error bound) reflect the padded size.
    GraphBuilder builder(GraphKind::undirected, false);
    const Graph core = fixture8();
    for (vertex_t u = 0; u < core.vertex_count(); ++u) {
        for (const Graph::Neighbor& nb : core.neighbors(u)) {
            if (nb.id > u) builder.add_edge(u, nb.id);
        }
    }
    for (int v = 8; v < 50; ++v) builder.ensure_vertex(v);
    const Graph padded = builder.build();
    const std::size_t n = padded.vertex_count();
    REQUIRE(n == 50);

    const double alpha = 0.2;
    const std::uint32_t kappa = 4;
    const auto exact = exact_kpath_centrality(padded, kappa, n);
    const double bound = std::pow(static_cast<double>(n), 0.5 + alpha);

    std::size_t violations = 0;
    const std::size_t runs = 200;
    for (std::size_t r = 0; r < runs; ++r) {
        KPathParams params;
        params.kappa = kappa;
        params.alpha = alpha;
        params.seed = r;
        const auto est = ra_kpath(padded, params);
        for (std::size_t v = 0; v < n; ++v) {
            if (std::abs(est.values[v] - exact.values[v]) > bound) ++violations;
        }
    }
    // theorem-level rate is 1/n^2; allow generous small-sample slack
    const double fraction = static_cast<double>(violations) /
                            static_cast<double>(runs * n);
    CHECK(fraction <= 0.02);
}
