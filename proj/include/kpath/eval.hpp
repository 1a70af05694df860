#pragma once

#include "kpath/graph.hpp"
#include "kpath/kpath.hpp"
#include "kpath/scores.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kpath {

enum class CorrelationMethod { pearson, spearman };

/// Pearson product-moment or Spearman rank correlation (ties get average
/// ranks). Returns nullopt when the coefficient is undefined (a constant
/// vector or fewer than two points) rather than a silent zero. Throws on
/// length mismatch.
std::optional<double> correlation(std::span<const double> exact,
                                  std::span<const double> approx,
                                  CorrelationMethod method);

/// Percentage of the exact top-K vertices recovered by the approximation,
/// K = ceil(n_percent * n / 100). Ranking is by score descending with ties
/// broken by ascending external id (ascending index when `external_ids` is
/// empty).
double top_n_overlap(std::span<const double> exact,
                     std::span<const double> approx, double n_percent,
                     std::span<const std::int64_t> external_ids = {});

/// The near-optimal operating point: alpha = 0.2 and
/// kappa = round(ln(n + m)), floored at 1.
KPathParams default_kpath_params(const Graph& g);

/// Baseline parameters chosen so RA-Brandes and AS-Brandes match a measured
/// RA-kpath speedup: epsilon = 2*sqrt(speedup * ln(n) / n) (clamped to 1)
/// and s = 2*speedup.
struct MatchedParams {
    double epsilon = 0.5;
    double s = 20.0;
    bool epsilon_clamped = false;
};

MatchedParams match_speedup_params(double kpath_speedup, std::size_t n);

/// One algorithm-vs-exact comparison run.
struct EvalReport {
    std::string algorithm;
    std::uint64_t seed = 0;
    std::optional<double> correlation_pearson;
    std::optional<double> correlation_spearman;
    std::map<double, double> top_overlap; // N% -> overlap %
    double exact_runtime_seconds = 0.0;
    double approx_runtime_seconds = 0.0;
    double speedup = 0.0;
    nlohmann::json params; // algorithm parameter echo, derived values included
};

struct CompareConfig {
    std::vector<std::string> algorithms = {"ra-kpath", "ra-brandes", "as-brandes"};
    unsigned repetitions = 10;
    std::uint64_t seed = 0;
    int workers = 1;
    std::optional<std::uint32_t> kappa;   // default round(ln(n+m))
    std::optional<double> alpha;          // default 0.2
    std::optional<double> epsilon;        // default matched, else 0.5
    std::optional<double> as_c;           // default 5
    std::optional<double> as_s;           // default matched, else 20
    std::optional<double> distance_bound; // required for kbetweenness
    double time_budget_seconds = 0.0;     // <= 0 means unlimited
    std::vector<double> top_percents = {1.0, 5.0, 10.0};
    std::string network_label = "graph";
};

struct CompareResult {
    std::string network_label;
    std::size_t vertex_count = 0;
    std::size_t edge_count = 0;
    double exact_runtime_seconds = 0.0;
    bool complete = true;
    std::vector<std::string> skipped; // algorithms dropped by the time budget
    std::vector<EvalReport> runs;
};

/// Runs exact betweenness once, then every selected approximation
/// `repetitions` times with distinct seeds, timing each run (graph loading
/// is the caller's problem and is never counted). When RA-kpath is among the
/// algorithms its measured mean speedup drives the matched baseline
/// parameters unless epsilon / s were pinned explicitly. A time budget makes
/// the result partial (complete = false) instead of blocking forever.
CompareResult run_comparison(const Graph& g, const CompareConfig& config);

nlohmann::json compare_result_to_json(const CompareResult& result);

/// Plot-ready aggregate tables: mean overlap per (algorithm, N%) and mean
/// correlation/speedup per algorithm.
std::string overlap_table_csv(const CompareResult& result);
std::string correlation_table_csv(const CompareResult& result);

} // namespace kpath
