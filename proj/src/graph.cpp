#include "kpath/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace kpath {

void GraphBuilder::add_edge(std::int64_t from, std::int64_t to, double weight) {
    if (!(weight > 0.0) || !std::isfinite(weight)) {
        throw std::invalid_argument("edge weight must be positive and finite");
    }
    edges_.push_back({from, to, weighted_ ? weight : 1.0});
}

void GraphBuilder::ensure_vertex(std::int64_t id) {
    extra_vertices_.push_back(id);
}

Graph GraphBuilder::build() {
    // Dense remap in ascending external-id order. This makes the internal
    // index order coincide with external-id order, so serialized edge lists
    // reload to an identical Graph and id-based tie-breaks are index order.
    std::vector<std::int64_t> ids;
    ids.reserve(edges_.size() * 2 + extra_vertices_.size());
    for (const RawEdge& e : edges_) {
        ids.push_back(e.from);
        ids.push_back(e.to);
    }
    ids.insert(ids.end(), extra_vertices_.begin(), extra_vertices_.end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    std::unordered_map<std::int64_t, vertex_t> remap;
    remap.reserve(ids.size());
    for (vertex_t i = 0; i < ids.size(); ++i) remap.emplace(ids[i], i);

    const std::size_t n = ids.size();
    const bool undirected = kind_ == GraphKind::undirected;

    // Dedup in input order so the first weight seen wins. Undirected edges
    // are keyed on the unordered endpoint pair.
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(edges_.size());
    struct DenseEdge {
        vertex_t u, v;
        double w;
    };
    std::vector<DenseEdge> kept;
    kept.reserve(edges_.size());
    duplicates_ = 0;
    self_loops_ = 0;
    for (const RawEdge& e : edges_) {
        vertex_t u = remap.at(e.from);
        vertex_t v = remap.at(e.to);
        if (u == v) {
            ++self_loops_;
            continue;
        }
        vertex_t a = u, b = v;
        if (undirected && a > b) std::swap(a, b);
        const std::uint64_t key =
            (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
        if (!seen.insert(key).second) {
            ++duplicates_;
            continue;
        }
        kept.push_back({u, v, e.weight});
    }

    Graph g;
    g.kind_ = kind_;
    g.weighted_ = weighted_;
    g.edge_count_ = kept.size();
    g.external_ids_ = std::move(ids);

    std::vector<std::size_t> degree(n, 0);
    for (const DenseEdge& e : kept) {
        ++degree[e.u];
        if (undirected) ++degree[e.v];
    }
    g.offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + degree[i];
    g.adjacency_.resize(g.offsets_[n]);

    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const DenseEdge& e : kept) {
        g.adjacency_[cursor[e.u]++] = {e.v, e.w};
        if (undirected) g.adjacency_[cursor[e.v]++] = {e.u, e.w};
    }
    for (std::size_t u = 0; u < n; ++u) {
        std::sort(g.adjacency_.begin() + g.offsets_[u],
                  g.adjacency_.begin() + g.offsets_[u + 1],
                  [](const Graph::Neighbor& a, const Graph::Neighbor& b) {
                      return a.id < b.id;
                  });
    }
    return g;
}

void unvisited_neighbors(const Graph& g, vertex_t u,
                         std::span<const std::uint8_t> visited,
                         std::vector<Graph::Neighbor>& out) {
    out.clear();
    for (const Graph::Neighbor& nb : g.neighbors(u)) {
        if (!visited[nb.id]) out.push_back(nb);
    }
}

} // namespace kpath
