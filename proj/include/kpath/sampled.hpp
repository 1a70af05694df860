#pragma once

#include "kpath/graph.hpp"
#include "kpath/scores.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace kpath {

/// Uniform pivot sampling. Without an override the pivot multiset size is
/// ceil(ln n / epsilon^2), at least 1. An explicit pivot list replaces the
/// random draws entirely (deterministic enumeration for tests).
struct RaBrandesParams {
    double epsilon = 0.5;
    std::optional<std::size_t> pivot_count_override;
    std::optional<std::vector<vertex_t>> pivots;
    std::uint64_t seed = 0;
    int workers = 1;
};

std::size_t ra_brandes_pivot_count(std::size_t n, double epsilon);

/// Estimate: (n / |S|) * sum over pivots of the pivot's dependency score on
/// each vertex. Pivots are drawn uniformly with replacement.
CentralityScores ra_brandes(const Graph& g, const RaBrandesParams& params);

/// Adaptive sampling with a hard cutoff of T = ceil(n / s) pivots unless
/// overridden. Once a vertex's running dependency sum exceeds c*n its sum
/// and pivot count freeze; everything else keeps accumulating. Sequential by
/// definition (the freeze points depend on pivot order).
struct AsBrandesParams {
    double c = 5.0;
    double s = 20.0;
    std::optional<std::size_t> cutoff_override;
    std::optional<std::vector<vertex_t>> pivots;
    std::uint64_t seed = 0;
};

std::size_t as_brandes_cutoff(std::size_t n, double s);

/// Estimate: n * RS[v] / k[v] with RS and k per the freeze rule.
CentralityScores as_brandes(const Graph& g, const AsBrandesParams& params);

} // namespace kpath
