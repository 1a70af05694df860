#include "kpath/eval.hpp"

#include "kpath/brandes.hpp"
#include "kpath/io.hpp"
#include "kpath/sampled.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace kpath {

namespace {

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return values[a] < values[b];
    });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n < 2) return std::nullopt;
    const double inv = 1.0 / static_cast<double>(n);
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) * inv;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) * inv;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt; // constant side: undefined
    return sxy / std::sqrt(sxx * syy);
}

} // namespace

std::optional<double> correlation(std::span<const double> exact,
                                  std::span<const double> approx,
                                  CorrelationMethod method) {
    if (exact.size() != approx.size()) {
        throw std::invalid_argument("correlation inputs differ in length");
    }
    if (method == CorrelationMethod::pearson) return pearson(exact, approx);
    const std::vector<double> rx = average_ranks(exact);
    const std::vector<double> ry = average_ranks(approx);
    return pearson(rx, ry);
}

double top_n_overlap(std::span<const double> exact,
                     std::span<const double> approx, double n_percent,
                     std::span<const std::int64_t> external_ids) {
    if (exact.size() != approx.size()) {
        throw std::invalid_argument("overlap inputs differ in length");
    }
    if (exact.empty()) throw std::invalid_argument("overlap of empty score vectors");
    if (!(n_percent > 0.0) || n_percent > 100.0) {
        throw std::invalid_argument("n_percent must lie in (0, 100]");
    }
    const std::size_t n = exact.size();
    const auto k = static_cast<std::size_t>(
        std::ceil(n_percent * static_cast<double>(n) / 100.0));

    auto top_set = [&](std::span<const double> scores) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        auto id_of = [&](std::size_t i) {
            return external_ids.empty() ? static_cast<std::int64_t>(i)
                                        : external_ids[i];
        };
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (scores[a] != scores[b]) return scores[a] > scores[b];
            return id_of(a) < id_of(b);
        });
        order.resize(k);
        std::sort(order.begin(), order.end());
        return order;
    };

    const auto exact_top = top_set(exact);
    const auto approx_top = top_set(approx);
    std::vector<std::size_t> common;
    std::set_intersection(exact_top.begin(), exact_top.end(), approx_top.begin(),
                          approx_top.end(), std::back_inserter(common));
    return 100.0 * static_cast<double>(common.size()) / static_cast<double>(k);
}

KPathParams default_kpath_params(const Graph& g) {
    const double total =
        static_cast<double>(g.vertex_count()) + static_cast<double>(g.edge_count());
    KPathParams params;
    params.alpha = 0.2;
    params.kappa = static_cast<std::uint32_t>(
        std::max<long long>(1, std::llround(std::log(total))));
    return params;
}

MatchedParams match_speedup_params(double kpath_speedup, std::size_t n) {
    if (!(kpath_speedup > 0.0)) {
        throw std::invalid_argument("speedup must be positive");
    }
    if (n < 2) throw std::invalid_argument("n must be >= 2");
    MatchedParams out;
    out.epsilon = 2.0 * std::sqrt(kpath_speedup *
                                  std::log(static_cast<double>(n)) /
                                  static_cast<double>(n));
    if (out.epsilon > 1.0) {
        out.epsilon = 1.0;
        out.epsilon_clamped = true;
    }
    out.s = 2.0 * kpath_speedup;
    return out;
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

EvalReport make_report(const std::string& algorithm, std::uint64_t seed,
                       const CompareConfig& config,
                       std::span<const double> exact,
                       std::span<const double> approx,
                       std::span<const std::int64_t> ids, double exact_seconds,
                       double approx_seconds, nlohmann::json params) {
    EvalReport report;
    report.algorithm = algorithm;
    report.seed = seed;
    report.correlation_pearson =
        correlation(exact, approx, CorrelationMethod::pearson);
    report.correlation_spearman =
        correlation(exact, approx, CorrelationMethod::spearman);
    for (const double pct : config.top_percents) {
        report.top_overlap[pct] = top_n_overlap(exact, approx, pct, ids);
    }
    report.exact_runtime_seconds = exact_seconds;
    report.approx_runtime_seconds = approx_seconds;
    report.speedup = approx_seconds > 0.0 ? exact_seconds / approx_seconds
                                          : std::numeric_limits<double>::infinity();
    report.params = std::move(params);
    return report;
}

} // namespace

CompareResult run_comparison(const Graph& g, const CompareConfig& config) {
    if (config.repetitions < 1) {
        throw std::invalid_argument("repetitions must be >= 1");
    }
    const std::size_t n = g.vertex_count();
    const auto start = std::chrono::steady_clock::now();
    const auto budget_exceeded = [&] {
        return config.time_budget_seconds > 0.0 &&
               seconds_since(start) > config.time_budget_seconds;
    };

    CompareResult result;
    result.network_label = config.network_label;
    result.vertex_count = n;
    result.edge_count = g.edge_count();

    const auto exact_start = std::chrono::steady_clock::now();
    const CentralityScores exact = brandes_betweenness(g, config.workers);
    result.exact_runtime_seconds = seconds_since(exact_start);
    const std::span<const std::int64_t> ids(g.external_ids());

    if (budget_exceeded()) {
        result.complete = false;
        result.skipped = config.algorithms;
        return result;
    }

    const KPathParams defaults = default_kpath_params(g);
    const std::uint32_t kappa = config.kappa.value_or(defaults.kappa);
    const double alpha = config.alpha.value_or(defaults.alpha);

    // RA-kpath first: its measured speedup drives the matched baselines.
    double kpath_mean_speedup = 0.0;
    bool have_kpath_speedup = false;
    for (std::size_t ai = 0; ai < config.algorithms.size(); ++ai) {
        const std::string& algorithm = config.algorithms[ai];
        if (budget_exceeded()) {
            result.complete = false;
            result.skipped.insert(result.skipped.end(),
                                  config.algorithms.begin() + ai,
                                  config.algorithms.end());
            break;
        }
        if (algorithm == "ra-kpath") {
            double speedup_sum = 0.0;
            for (unsigned rep = 0; rep < config.repetitions; ++rep) {
                KPathParams params;
                params.kappa = kappa;
                params.alpha = alpha;
                params.seed = config.seed + rep;
                params.workers = config.workers;
                const std::uint64_t iterations =
                    ra_kpath_iterations(n, params.kappa, params.alpha);
                const auto t0 = std::chrono::steady_clock::now();
                const CentralityScores approx = ra_kpath(g, params);
                const double elapsed = seconds_since(t0);
                nlohmann::json echo = {{"kappa", params.kappa},
                                       {"alpha", params.alpha},
                                       {"iterations", iterations},
                                       {"seed", params.seed},
                                       {"workers", params.workers}};
                result.runs.push_back(make_report(
                    algorithm, params.seed, config, exact.values, approx.values,
                    ids, result.exact_runtime_seconds, elapsed, std::move(echo)));
                speedup_sum += result.runs.back().speedup;
            }
            kpath_mean_speedup =
                speedup_sum / static_cast<double>(config.repetitions);
            have_kpath_speedup = true;
        } else if (algorithm == "ra-brandes" || algorithm == "as-brandes") {
            MatchedParams matched; // literal defaults: epsilon 0.5, s 20
            if (have_kpath_speedup && n >= 2 && kpath_mean_speedup > 0.0 &&
                std::isfinite(kpath_mean_speedup)) {
                matched = match_speedup_params(kpath_mean_speedup, n);
            }
            for (unsigned rep = 0; rep < config.repetitions; ++rep) {
                const std::uint64_t seed = config.seed + rep;
                const auto t0 = std::chrono::steady_clock::now();
                CentralityScores approx;
                nlohmann::json echo;
                if (algorithm == "ra-brandes") {
                    RaBrandesParams params;
                    params.epsilon = config.epsilon.value_or(matched.epsilon);
                    params.seed = seed;
                    params.workers = config.workers;
                    approx = ra_brandes(g, params);
                    echo = {{"epsilon", params.epsilon},
                            {"pivot_count", ra_brandes_pivot_count(n, params.epsilon)},
                            {"seed", seed},
                            {"workers", params.workers}};
                } else {
                    AsBrandesParams params;
                    params.c = config.as_c.value_or(5.0);
                    params.s = config.as_s.value_or(matched.s);
                    params.seed = seed;
                    approx = as_brandes(g, params);
                    echo = {{"c", params.c},
                            {"s", params.s},
                            {"cutoff", as_brandes_cutoff(n, params.s)},
                            {"seed", seed}};
                }
                const double elapsed = seconds_since(t0);
                result.runs.push_back(make_report(
                    algorithm, seed, config, exact.values, approx.values, ids,
                    result.exact_runtime_seconds, elapsed, std::move(echo)));
            }
        } else if (algorithm == "kbetweenness") {
            if (!config.distance_bound) {
                throw std::invalid_argument(
                    "kbetweenness requires a distance bound");
            }
            const auto t0 = std::chrono::steady_clock::now();
            const CentralityScores approx =
                bounded_distance_betweenness(g, *config.distance_bound,
                                             config.workers);
            const double elapsed = seconds_since(t0);
            nlohmann::json echo = {{"k", *config.distance_bound},
                                   {"workers", config.workers}};
            result.runs.push_back(make_report(
                algorithm, config.seed, config, exact.values, approx.values,
                ids, result.exact_runtime_seconds, elapsed, std::move(echo)));
        } else {
            throw std::invalid_argument("unknown algorithm '" + algorithm + "'");
        }
    }
    return result;
}

namespace {

struct Aggregate {
    std::size_t runs = 0;
    double spearman_sum = 0.0, spearman_sq = 0.0;
    std::size_t spearman_count = 0;
    double pearson_sum = 0.0;
    std::size_t pearson_count = 0;
    double speedup_sum = 0.0;
    std::map<double, std::pair<double, double>> overlap; // pct -> (sum, sumsq)
    std::optional<std::uint32_t> kappa;
    std::optional<double> alpha;
};

std::map<std::string, Aggregate> aggregate_runs(const CompareResult& result) {
    std::map<std::string, Aggregate> by_algorithm;
    for (const EvalReport& run : result.runs) {
        Aggregate& agg = by_algorithm[run.algorithm];
        ++agg.runs;
        if (run.correlation_spearman) {
            agg.spearman_sum += *run.correlation_spearman;
            agg.spearman_sq += *run.correlation_spearman * *run.correlation_spearman;
            ++agg.spearman_count;
        }
        if (run.correlation_pearson) {
            agg.pearson_sum += *run.correlation_pearson;
            ++agg.pearson_count;
        }
        agg.speedup_sum += run.speedup;
        for (const auto& [pct, value] : run.top_overlap) {
            auto& [sum, sumsq] = agg.overlap[pct];
            sum += value;
            sumsq += value * value;
        }
        if (run.params.contains("kappa")) {
            agg.kappa = run.params["kappa"].get<std::uint32_t>();
        }
        if (run.params.contains("alpha")) {
            agg.alpha = run.params["alpha"].get<double>();
        }
    }
    return by_algorithm;
}

double sample_stddev(double sum, double sumsq, std::size_t count) {
    if (count < 2) return 0.0;
    const double mean = sum / static_cast<double>(count);
    const double var = (sumsq - static_cast<double>(count) * mean * mean) /
                       static_cast<double>(count - 1);
    return var > 0.0 ? std::sqrt(var) : 0.0;
}

} // namespace

nlohmann::json compare_result_to_json(const CompareResult& result) {
    nlohmann::json runs = nlohmann::json::array();
    for (const EvalReport& run : result.runs) {
        nlohmann::json overlap = nlohmann::json::object();
        for (const auto& [pct, value] : run.top_overlap) {
            overlap[format_double(pct)] = value;
        }
        runs.push_back(
            {{"algorithm", run.algorithm},
             {"seed", run.seed},
             {"correlation_pearson",
              run.correlation_pearson ? nlohmann::json(*run.correlation_pearson)
                                      : nlohmann::json(nullptr)},
             {"correlation_spearman",
              run.correlation_spearman
                  ? nlohmann::json(*run.correlation_spearman)
                  : nlohmann::json(nullptr)},
             {"top_overlap", overlap},
             {"exact_runtime_seconds", run.exact_runtime_seconds},
             {"approx_runtime_seconds", run.approx_runtime_seconds},
             {"speedup", run.speedup},
             {"params", run.params}});
    }

    nlohmann::json aggregates = nlohmann::json::object();
    for (const auto& [algorithm, agg] : aggregate_runs(result)) {
        nlohmann::json overlap_mean = nlohmann::json::object();
        nlohmann::json overlap_stddev = nlohmann::json::object();
        for (const auto& [pct, pair] : agg.overlap) {
            const auto count = static_cast<double>(agg.runs);
            overlap_mean[format_double(pct)] = pair.first / count;
            overlap_stddev[format_double(pct)] =
                sample_stddev(pair.first, pair.second, agg.runs);
        }
        aggregates[algorithm] = {
            {"runs", agg.runs},
            {"mean_spearman",
             agg.spearman_count > 0
                 ? nlohmann::json(agg.spearman_sum /
                                  static_cast<double>(agg.spearman_count))
                 : nlohmann::json(nullptr)},
            {"stddev_spearman",
             sample_stddev(agg.spearman_sum, agg.spearman_sq, agg.spearman_count)},
            {"mean_pearson",
             agg.pearson_count > 0
                 ? nlohmann::json(agg.pearson_sum /
                                  static_cast<double>(agg.pearson_count))
                 : nlohmann::json(nullptr)},
            {"mean_speedup", agg.speedup_sum / static_cast<double>(agg.runs)},
            {"mean_overlap", overlap_mean},
            {"stddev_overlap", overlap_stddev}};
    }

    return {{"network", result.network_label},
            {"vertex_count", result.vertex_count},
            {"edge_count", result.edge_count},
            {"exact_runtime_seconds", result.exact_runtime_seconds},
            {"complete", result.complete},
            {"skipped", result.skipped},
            {"runs", runs},
            {"aggregates", aggregates}};
}

std::string overlap_table_csv(const CompareResult& result) {
    std::string out = "network,size,algorithm,n_percent,overlap\n";
    for (const auto& [algorithm, agg] : aggregate_runs(result)) {
        for (const auto& [pct, pair] : agg.overlap) {
            out += result.network_label;
            out += ',';
            out += std::to_string(result.vertex_count);
            out += ',';
            out += algorithm;
            out += ',';
            out += format_double(pct);
            out += ',';
            out += format_double(pair.first / static_cast<double>(agg.runs));
            out += '\n';
        }
    }
    return out;
}

std::string correlation_table_csv(const CompareResult& result) {
    std::string out = "network,algorithm,kappa,alpha,correlation,speedup\n";
    for (const auto& [algorithm, agg] : aggregate_runs(result)) {
        out += result.network_label;
        out += ',';
        out += algorithm;
        out += ',';
        if (agg.kappa) out += std::to_string(*agg.kappa);
        out += ',';
        if (agg.alpha) out += format_double(*agg.alpha);
        out += ',';
        if (agg.spearman_count > 0) {
            out += format_double(agg.spearman_sum /
                                 static_cast<double>(agg.spearman_count));
        }
        out += ',';
        out += format_double(agg.speedup_sum / static_cast<double>(agg.runs));
        out += '\n';
    }
    return out;
}

} // namespace kpath
