#pragma once

#include "kpath/graph.hpp"
#include "kpath/scores.hpp"

#include <limits>
#include <vector>

namespace kpath {

/// Per-source traversal scratch for the dependency-accumulation algorithms.
/// Reused across sources; reset() is O(touched vertices).
struct SsspState {
    std::vector<double> dist;               // shortest distance from source
    std::vector<double> sigma;              // shortest-path counts
    std::vector<std::vector<vertex_t>> preds; // predecessors on shortest paths
    std::vector<double> delta;              // dependency accumulator
    std::vector<vertex_t> order;            // settle order, nondecreasing dist

    static constexpr double unreachable = std::numeric_limits<double>::infinity();

    void resize(std::size_t n);
    void reset();
};

/// Shortest-path search from `source` followed by the dependency
/// back-propagation; on return state.delta[v] holds the dependency score of
/// `source` on v. Vertices settled at distance > distance_bound are excluded
/// from both targets and accumulation (pass infinity for no bound). BFS for
/// unweighted graphs, a binary-heap Dijkstra otherwise.
void single_source_dependencies(const Graph& g, vertex_t source,
                                double distance_bound, SsspState& state);

/// Exact betweenness centrality under the ordered-pair convention: on
/// undirected graphs both (s,t) and (t,s) contribute. Unreachable pairs
/// contribute nothing. No normalization.
CentralityScores brandes_betweenness(const Graph& g, int workers = 1);

/// Betweenness restricted to vertex pairs with shortest-path distance at
/// most `k` (inclusive). Equals brandes_betweenness when k spans the graph.
CentralityScores bounded_distance_betweenness(const Graph& g, double k,
                                              int workers = 1);

/// Test oracle: Floyd-Warshall distances plus exhaustive enumeration of
/// every shortest path, applying the betweenness definition literally.
/// Throws EnumerationLimitError when vertex_count > vertex_limit or the
/// path count explodes. Intended for small graphs only.
CentralityScores brute_force_betweenness(const Graph& g,
                                         std::size_t vertex_limit = 64);

} // namespace kpath
