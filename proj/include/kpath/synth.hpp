#pragma once

#include "kpath/graph.hpp"

#include <cstdint>
#include <vector>

namespace kpath {

/// Synthetic social-network generator: growth by preferential attachment
/// with triad closure, which yields the heavy-tailed degree distribution and
/// elevated clustering typical of social graphs. Deterministic per seed.
struct GenParams {
    std::size_t n = 1000;
    std::uint32_t edges_per_new_vertex = 2;
    double triad_probability = 0.6;
    std::uint64_t seed = 0;
};

/// Connected, undirected, unweighted graph with exactly n vertices.
Graph generate_social_graph(const GenParams& params);

struct GraphStats {
    std::vector<std::size_t> degree_histogram; // index = degree
    double average_clustering = 0.0;
    std::size_t component_count = 0;

    std::size_t max_degree() const;
    double median_degree() const;
};

/// Degree histogram, mean local clustering coefficient (triangles through v
/// over deg(v)(deg(v)-1)/2, zero below degree 2), and the number of weakly
/// connected components.
GraphStats compute_graph_stats(const Graph& g);

} // namespace kpath
