#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace kpath {

using vertex_t = std::uint32_t;

enum class GraphKind { undirected, directed };

/// Immutable adjacency-list graph. Vertices are dense indices in [0, n);
/// loaders remap arbitrary external ids to dense indices in ascending
/// external-id order and the mapping is kept for output. Adjacency lists are
/// sorted by neighbor id. Undirected edges are stored in both endpoint lists
/// but counted once in edge_count(). Safe to share across threads once built.
class Graph {
public:
    struct Neighbor {
        vertex_t id;
        double weight;
        bool operator==(const Neighbor&) const = default;
    };

    Graph() = default;

    std::size_t vertex_count() const noexcept { return external_ids_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }
    GraphKind kind() const noexcept { return kind_; }
    bool directed() const noexcept { return kind_ == GraphKind::directed; }
    bool weighted() const noexcept { return weighted_; }

    /// Outgoing neighbors for directed graphs, all incident neighbors for
    /// undirected ones. Sorted by neighbor id.
    std::span<const Neighbor> neighbors(vertex_t u) const {
        return {adjacency_.data() + offsets_[u],
                adjacency_.data() + offsets_[u + 1]};
    }

    std::size_t degree(vertex_t u) const {
        return offsets_[u + 1] - offsets_[u];
    }

    std::int64_t external_id(vertex_t u) const { return external_ids_[u]; }
    const std::vector<std::int64_t>& external_ids() const { return external_ids_; }

    bool operator==(const Graph&) const = default;

private:
    friend class GraphBuilder;

    GraphKind kind_ = GraphKind::undirected;
    bool weighted_ = false;
    std::size_t edge_count_ = 0;
    std::vector<std::size_t> offsets_{0};
    std::vector<Neighbor> adjacency_;
    std::vector<std::int64_t> external_ids_;
};

/// Accumulates edges keyed by external id, then builds a validated Graph:
/// ids remapped densely in ascending order, self-loops dropped, duplicate
/// edges collapsed keeping the first weight seen, adjacency sorted. Both
/// drop counts are reported so callers can surface them as warnings.
class GraphBuilder {
public:
    GraphBuilder(GraphKind kind, bool weighted)
        : kind_(kind), weighted_(weighted) {}

    /// Weight must be strictly positive and finite; throws
    /// std::invalid_argument otherwise (loaders validate earlier and report
    /// line numbers instead).
    void add_edge(std::int64_t from, std::int64_t to, double weight = 1.0);

    /// Registers a vertex that may have no edges (Pajek headers).
    void ensure_vertex(std::int64_t id);

    std::size_t duplicate_edges_dropped() const noexcept { return duplicates_; }
    std::size_t self_loops_dropped() const noexcept { return self_loops_; }

    Graph build();

private:
    struct RawEdge {
        std::int64_t from;
        std::int64_t to;
        double weight;
    };

    GraphKind kind_;
    bool weighted_;
    std::size_t duplicates_ = 0;
    std::size_t self_loops_ = 0;
    std::vector<RawEdge> edges_;
    std::vector<std::int64_t> extra_vertices_;
};

/// Adjacency entries of `u` whose endpoint is not marked in `visited`, in
/// stored order. `visited` is indexed by vertex id; nonzero means visited.
void unvisited_neighbors(const Graph& g, vertex_t u,
                         std::span<const std::uint8_t> visited,
                         std::vector<Graph::Neighbor>& out);

} // namespace kpath
