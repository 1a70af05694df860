#include "kpath/brandes.hpp"
#include "kpath/eval.hpp"
#include "kpath/kpath.hpp"
#include "kpath/synth.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace kpath;
using namespace kpath::testing;

TEST_CASE("correlation: identical vectors") {
    const std::vector<double> x = {1, 2, 3, 5};
    CHECK(*correlation(x, x, CorrelationMethod::pearson) == doctest::Approx(1.0));
    CHECK(*correlation(x, x, CorrelationMethod::spearman) == doctest::Approx(1.0));
}

TEST_CASE("correlation: perfect inversion") {
    const std::vector<double> x = {1, 2, 3};
    const std::vector<double> y = {3, 2, 1};
    CHECK(*correlation(x, y, CorrelationMethod::pearson) == doctest::Approx(-1.0));
    CHECK(*correlation(x, y, CorrelationMethod::spearman) == doctest::Approx(-1.0));
}

TEST_CASE("correlation: spearman via the rank-difference formula") {
    const std::vector<double> x = {1, 2, 3, 4};
    const std::vector<double> y = {1, 3, 2, 4};
    // 1 - 6*sum(d^2)/(n(n^2-1)) with sum(d^2) = 2
    CHECK(*correlation(x, y, CorrelationMethod::spearman) == doctest::Approx(0.8));
}

TEST_CASE("correlation: undefined cases return no value") {
    const std::vector<double> constant = {2, 2, 2};
    const std::vector<double> moving = {1, 2, 3};
    CHECK_FALSE(correlation(constant, moving, CorrelationMethod::pearson));
    CHECK_FALSE(correlation(moving, constant, CorrelationMethod::pearson));
    CHECK_FALSE(correlation(constant, moving, CorrelationMethod::spearman));
    const std::vector<double> single = {1};
    CHECK_FALSE(correlation(single, single, CorrelationMethod::pearson));
    const std::vector<double> mismatched = {1, 2};
    CHECK_THROWS_AS(correlation(moving, mismatched, CorrelationMethod::pearson),
                    std::invalid_argument);
}

TEST_CASE("correlation: symmetric and monotone-invariant") {
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> x(12), y(12);
        for (auto& v : x) v = rng.unit();
        for (auto& v : y) v = rng.unit();
        for (const auto method :
             {CorrelationMethod::pearson, CorrelationMethod::spearman}) {
            const auto xy = correlation(x, y, method);
            const auto yx = correlation(y, x, method);
            REQUIRE(xy);
            CHECK(*xy == doctest::Approx(*yx).epsilon(1e-12));
        }
        // strictly monotone transforms leave spearman unchanged
        std::vector<double> tx(12);
        for (std::size_t i = 0; i < x.size(); ++i) {
            tx[i] = std::exp(3.0 * x[i]) + 1.0;
        }
        CHECK(*correlation(tx, y, CorrelationMethod::spearman) ==
              doctest::Approx(*correlation(x, y, CorrelationMethod::spearman))
                  .epsilon(1e-12));
    }
}

TEST_CASE("top overlap: identical vectors hit every level") {
    Rng rng(23);
    std::vector<double> x(40);
    for (auto& v : x) v = rng.unit();
    for (const double pct : {1.0, 5.0, 10.0, 50.0, 100.0}) {
        CHECK(top_n_overlap(x, x, pct) == 100.0);
    }
}

TEST_CASE("top overlap: disjoint top sets") {
    const std::vector<double> exact = {10, 9, 1, 2, 3};
    const std::vector<double> approx = {1, 2, 10, 9, 8};
    CHECK(top_n_overlap(exact, approx, 40.0) == 0.0);
}

TEST_CASE("top overlap: partial intersection") {
    // n=10, K=3: exact top {0,1,2}, approx top {0,1,5} -> 2/3
    const std::vector<double> exact = {10, 9, 8, 1, 1, 1, 1, 1, 1, 0};
    const std::vector<double> approx = {10, 9, 0, 1, 1, 8, 1, 1, 1, 0};
    CHECK(top_n_overlap(exact, approx, 30.0) == doctest::Approx(100.0 * 2 / 3));
}

TEST_CASE("top overlap: ties break by ascending external id") {
    const std::vector<double> exact = {10, 9, 1, 2};
    const std::vector<double> tied = {5, 5, 5, 5};
    // identity ids: the tied side picks indices {0, 1}, matching exact's top
    CHECK(top_n_overlap(exact, tied, 50.0) == 100.0);
    // reversed ids: the tied side now picks indices {3, 2} instead
    const std::vector<std::int64_t> reversed_ids = {40, 30, 20, 10};
    CHECK(top_n_overlap(exact, tied, 50.0, reversed_ids) == 0.0);
}

TEST_CASE("top overlap: invariant under increasing rescaling") {
    Rng rng(29);
    std::vector<double> exact(30), approx(30);
    for (auto& v : exact) v = rng.unit();
    for (auto& v : approx) v = rng.unit();
    std::vector<double> scaled(30);
    for (std::size_t i = 0; i < approx.size(); ++i) {
        scaled[i] = 10.0 * approx[i] + 3.0;
    }
    for (const double pct : {10.0, 30.0, 70.0}) {
        CHECK(top_n_overlap(exact, approx, pct) ==
              top_n_overlap(exact, scaled, pct));
    }
}

TEST_CASE("top overlap: argument validation") {
    const std::vector<double> x = {1, 2};
    CHECK_THROWS_AS(top_n_overlap(x, x, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(top_n_overlap(x, x, 101.0), std::invalid_argument);
}

TEST_CASE("default kpath parameters") {
    // Kazaa-sized graph: round(ln(2424 + 13354)) = 10
    GenParams gen;
    gen.n = 4;
    const Graph small = generate_social_graph(gen);
    KPathParams params = default_kpath_params(small);
    CHECK(params.alpha == 0.2);

    GraphBuilder b(GraphKind::undirected, false);
    b.ensure_vertex(0);
    const Graph lone = b.build();
    CHECK(default_kpath_params(lone).kappa == 1); // floor guard

    // n + m = 7 -> ln 7 = 1.946 -> kappa 2
    const Graph path4 = path_graph(4);
    CHECK(default_kpath_params(path4).kappa == 2);
}

TEST_CASE("default kpath parameters match the published operating point") {
    // directly check round(ln(15778)) = 10 the way the harness computes it
    const double kazaa = std::log(2424.0 + 13354.0);
    CHECK(std::llround(kazaa) == 10);
}

TEST_CASE("match speedup parameters") {
    const MatchedParams m = match_speedup_params(100.0, 100000);
    CHECK(m.epsilon == doctest::Approx(0.2146).epsilon(1e-3));
    CHECK(m.s == 200.0);
    CHECK_FALSE(m.epsilon_clamped);

    CHECK(match_speedup_params(25.0, 1000).s == 50.0);

    const MatchedParams clamped = match_speedup_params(1e9, 100);
    CHECK(clamped.epsilon == 1.0);
    CHECK(clamped.epsilon_clamped);

    CHECK_THROWS_AS(match_speedup_params(0.0, 100), std::invalid_argument);
    CHECK_THROWS_AS(match_speedup_params(5.0, 1), std::invalid_argument);
}

TEST_CASE("run comparison: algorithm against itself is perfect") {
    GenParams gen;
    gen.n = 60;
    gen.seed = 5;
    const Graph g = generate_social_graph(gen);
    const auto exact = brandes_betweenness(g);
    CHECK(*correlation(exact.values, exact.values, CorrelationMethod::spearman) ==
          doctest::Approx(1.0));
    CHECK(top_n_overlap(exact.values, exact.values, 10.0,
                        g.external_ids()) == 100.0);
}

TEST_CASE("run comparison: converged estimator correlates with the oracle") {
    Rng rng(31);
    const Graph g = random_graph(rng, 20, 0.25, GraphKind::undirected, false);
    const std::uint32_t kappa = 3;
    const auto oracle = exact_kpath_centrality(g, kappa, 20);
    KPathParams params;
    params.kappa = kappa;
    params.iterations_override = 2'000'000;
    params.seed = 4;
    const auto est = ra_kpath(g, params);
    const auto corr =
        correlation(oracle.values, est.values, CorrelationMethod::pearson);
    REQUIRE(corr);
    CHECK(*corr > 0.99);
}

TEST_CASE("run comparison: harness produces reports and aggregates") {
    GenParams gen;
    gen.n = 120;
    gen.seed = 13;
    const Graph g = generate_social_graph(gen);
    CompareConfig config;
    config.repetitions = 3;
    config.seed = 100;
    config.network_label = "synth-120";
    const CompareResult result = run_comparison(g, config);
    CHECK(result.complete);
    CHECK(result.runs.size() == 9); // three algorithms, three reps
    for (const EvalReport& run : result.runs) {
        CHECK(run.speedup > 0.0);
        for (const auto& [pct, overlap] : run.top_overlap) {
            CHECK(overlap >= 0.0);
            CHECK(overlap <= 100.0);
        }
        if (run.correlation_spearman) {
            CHECK(*run.correlation_spearman >= -1.0);
            CHECK(*run.correlation_spearman <= 1.0);
        }
    }

    const nlohmann::json j = compare_result_to_json(result);
    CHECK(j["network"] == "synth-120");
    CHECK(j["runs"].size() == 9);
    CHECK(j["aggregates"].contains("ra-kpath"));
    CHECK(j["aggregates"]["ra-kpath"]["runs"] == 3);

    const std::string overlap_csv = overlap_table_csv(result);
    CHECK(overlap_csv.find("network,size,algorithm,n_percent,overlap") == 0);
    CHECK(overlap_csv.find("synth-120,120,ra-kpath,1,") != std::string::npos);
    const std::string corr_csv = correlation_table_csv(result);
    CHECK(corr_csv.find("network,algorithm,kappa,alpha,correlation,speedup") == 0);
}

TEST_CASE("run comparison: distinct seeds across repetitions") {
    GenParams gen;
    gen.n = 50;
    gen.seed = 21;
    const Graph g = generate_social_graph(gen);
    CompareConfig config;
    config.algorithms = {"ra-kpath"};
    config.repetitions = 3;
    config.seed = 7;
    const CompareResult result = run_comparison(g, config);
    REQUIRE(result.runs.size() == 3);
    CHECK(result.runs[0].seed == 7);
    CHECK(result.runs[1].seed == 8);
    CHECK(result.runs[2].seed == 9);
}

TEST_CASE("run comparison: time budget produces a flagged partial report") {
    GenParams gen;
    gen.n = 400;
    gen.seed = 2;
    const Graph g = generate_social_graph(gen);
    CompareConfig config;
    config.repetitions = 5;
    config.time_budget_seconds = 1e-9; // already exceeded after the exact run
    const CompareResult result = run_comparison(g, config);
    CHECK_FALSE(result.complete);
    CHECK_FALSE(result.skipped.empty());
    const nlohmann::json j = compare_result_to_json(result);
    CHECK(j["complete"] == false);
}

TEST_CASE("run comparison: kbetweenness requires its bound") {
    GenParams gen;
    gen.n = 30;
    const Graph g = generate_social_graph(gen);
    CompareConfig config;
    config.algorithms = {"kbetweenness"};
    CHECK_THROWS_AS(run_comparison(g, config), std::invalid_argument);
    config.distance_bound = 3.0;
    const CompareResult result = run_comparison(g, config);
    REQUIRE(result.runs.size() == 1);
    CHECK(result.runs[0].algorithm == "kbetweenness");
}
