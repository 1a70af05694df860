#pragma once

#include "kpath/graph.hpp"
#include "kpath/rng.hpp"
#include "kpath/scores.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace kpath {

/// Estimator configuration. The iteration count is derived from n, kappa and
/// alpha unless overridden; see ra_kpath_iterations.
struct KPathParams {
    std::uint32_t kappa = 1;                        // maximum walk edge count
    double alpha = 0.2;                             // accuracy/speed tradeoff in [-1/2, 1/2]
    std::optional<std::uint64_t> iterations_override;
    std::uint64_t seed = 0;
    int workers = 1;
};

/// Derived walk count: ceil(2 kappa^2 n^(1-2 alpha) ln n), at least 1.
/// Graphs with n <= 1 take no walks.
std::uint64_t ra_kpath_iterations(std::size_t n, std::uint32_t kappa, double alpha);

/// Probability that a random message traversal follows `path` exactly: the
/// product over steps of the chance of picking that neighbor among the
/// still-unvisited ones, uniformly for unweighted graphs and proportional to
/// inverse edge weight for weighted ones. `path` must be a simple path of at
/// least one edge present in the graph; throws std::invalid_argument
/// otherwise.
double walk_probability(const Graph& g, std::span<const vertex_t> path);

/// Simulates random message traversals: a walk marks vertices explored as it
/// goes, never revisits one, and tallies every non-source vertex it reaches.
/// Walks that stall before reaching their drawn length are rolled back so
/// they contribute nothing. Explored flags are clean after every walk.
class WalkSimulator {
public:
    explicit WalkSimulator(const Graph& g);

    /// One walk of up to `length` edges; returns true when the full length
    /// was realized (counts kept), false on a stall (counts rolled back).
    bool perform_walk(vertex_t source, std::uint32_t length, Rng& rng);

    /// Walk with forced neighbor choices instead of random draws. Fewer
    /// steps than `length` means the stall branch is exercised on purpose;
    /// a step naming a visited or non-adjacent vertex throws.
    bool perform_scripted_walk(vertex_t source, std::uint32_t length,
                               std::span<const vertex_t> steps);

    const std::vector<std::uint64_t>& counts() const { return counts_; }
    void reset_counts();

    /// Vertices of the most recent walk in visit order (source first).
    std::span<const vertex_t> last_walk() const { return visit_stack_; }

    /// True when no explored flag is left set (walk hygiene check).
    bool explored_clear() const;

private:
    template <typename NextStep>
    bool walk_impl(vertex_t source, std::uint32_t length, NextStep&& next);

    const Graph& g_;
    std::vector<std::uint8_t> explored_;
    std::vector<vertex_t> visit_stack_;
    std::vector<Graph::Neighbor> candidates_;
    std::vector<std::uint64_t> counts_;
};

/// One scripted estimator iteration: the drawn source, drawn target length,
/// and the forced neighbor sequence (shorter than `length` to force a stall).
struct ScriptedWalk {
    vertex_t source;
    std::uint32_t length;
    std::vector<vertex_t> steps;
};

/// Randomized estimator of kappa-path centrality. Each of T iterations draws
/// a source and a length uniformly, simulates one walk, and the estimate is
/// kappa * n * count[v] / T. Deterministic per (seed, workers); workers split
/// the iterations across decorrelated RNG streams and merge tallies by
/// addition.
CentralityScores ra_kpath(const Graph& g, const KPathParams& params);

/// Result carrying the raw tallies alongside the scaled estimate, for
/// callers that combine runs.
struct RaKPathResult {
    CentralityScores scores;
    std::vector<std::uint64_t> counts;
    std::uint64_t iterations = 0;
};

RaKPathResult ra_kpath_counts(const Graph& g, const KPathParams& params);

/// Deterministic variant replacing every random draw with a script; the
/// iteration count is the script length (an iterations_override, when set,
/// must match it).
CentralityScores ra_kpath_scripted(const Graph& g, const KPathParams& params,
                                   std::span<const ScriptedWalk> script);

/// Exact kappa-path centrality by depth-first enumeration of all simple
/// paths of at most kappa edges from every source. Guarded: throws
/// EnumerationLimitError when vertex_count > vertex_limit or the extension
/// budget is exhausted. A test fixture, not a scalable algorithm.
CentralityScores exact_kpath_centrality(const Graph& g, std::uint32_t kappa,
                                        std::size_t vertex_limit = 12,
                                        std::uint64_t extension_budget = 50'000'000);

namespace detail {
/// Runs `iterations` estimator walks with the given generator, adding
/// tallies into the simulator. Exposed so tests can replay worker streams.
void run_estimator_walks(const Graph& g, std::uint32_t kappa,
                         std::uint64_t iterations, Rng& rng, WalkSimulator& sim);
} // namespace detail

} // namespace kpath
