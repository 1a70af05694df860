#include "kpath/synth.hpp"

#include "kpath/rng.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace kpath {

Graph generate_social_graph(const GenParams& params) {
    if (params.n < 1) throw std::invalid_argument("n must be >= 1");
    if (params.edges_per_new_vertex < 1) {
        throw std::invalid_argument("edges_per_new_vertex must be >= 1");
    }
    if (params.triad_probability < 0.0 || params.triad_probability > 1.0) {
        throw std::invalid_argument("triad_probability must lie in [0, 1]");
    }

    const std::size_t n = params.n;
    const std::size_t m = params.edges_per_new_vertex;
    Rng rng(params.seed, 0);

    GraphBuilder builder(GraphKind::undirected, false);
    builder.ensure_vertex(0);
    if (n == 1) return builder.build();

    // Seed clique on min(m + 1, n) vertices, then growth. `endpoints` holds
    // every edge endpoint twice over, so a uniform draw from it is a draw
    // proportional to degree.
    std::vector<std::vector<vertex_t>> adjacency(n);
    std::vector<vertex_t> endpoints;
    auto connect = [&](vertex_t a, vertex_t b) {
        adjacency[a].push_back(b);
        adjacency[b].push_back(a);
        endpoints.push_back(a);
        endpoints.push_back(b);
        builder.add_edge(a, b);
    };

    const std::size_t seed_size = std::min(m + 1, n);
    for (vertex_t a = 0; a < seed_size; ++a) {
        for (vertex_t b = a + 1; b < seed_size; ++b) connect(a, b);
    }

    std::unordered_set<vertex_t> linked;
    for (vertex_t t = static_cast<vertex_t>(seed_size); t < n; ++t) {
        linked.clear();
        vertex_t previous_target = 0;
        const std::size_t budget = std::min<std::size_t>(m, t);
        for (std::size_t e = 0; e < budget; ++e) {
            vertex_t target = 0;
            bool found = false;
            if (e > 0 && rng.unit() < params.triad_probability) {
                // Close a triangle through the previous target when it still
                // has a neighbor we are not yet linked to.
                const auto& around = adjacency[previous_target];
                std::vector<vertex_t> open;
                for (const vertex_t w : around) {
                    if (w != t && !linked.count(w)) open.push_back(w);
                }
                if (!open.empty()) {
                    target = open[rng.below(open.size())];
                    found = true;
                }
            }
            if (!found) {
                // Preferential attachment with rejection of repeats.
                for (int attempt = 0; attempt < 64 && !found; ++attempt) {
                    const vertex_t candidate =
                        endpoints[rng.below(endpoints.size())];
                    if (candidate != t && !linked.count(candidate)) {
                        target = candidate;
                        found = true;
                    }
                }
                if (!found) {
                    // Degenerate corner (nearly everything linked already):
                    // scan for any open vertex.
                    for (vertex_t w = 0; w < t && !found; ++w) {
                        if (!linked.count(w)) {
                            target = w;
                            found = true;
                        }
                    }
                }
            }
            if (!found) break;
            connect(t, target);
            linked.insert(target);
            previous_target = target;
        }
    }
    return builder.build();
}

std::size_t GraphStats::max_degree() const {
    for (std::size_t d = degree_histogram.size(); d-- > 0;) {
        if (degree_histogram[d] > 0) return d;
    }
    return 0;
}

double GraphStats::median_degree() const {
    std::size_t total = 0;
    for (const std::size_t c : degree_histogram) total += c;
    if (total == 0) return 0.0;
    const std::size_t lower_pos = (total - 1) / 2;
    const std::size_t upper_pos = total / 2;
    double lower = 0.0, upper = 0.0;
    std::size_t seen = 0;
    for (std::size_t d = 0; d < degree_histogram.size(); ++d) {
        const std::size_t next = seen + degree_histogram[d];
        if (seen <= lower_pos && lower_pos < next) lower = static_cast<double>(d);
        if (seen <= upper_pos && upper_pos < next) upper = static_cast<double>(d);
        seen = next;
    }
    return (lower + upper) / 2.0;
}

GraphStats compute_graph_stats(const Graph& g) {
    const std::size_t n = g.vertex_count();
    GraphStats stats;

    std::size_t max_deg = 0;
    for (vertex_t u = 0; u < n; ++u) max_deg = std::max(max_deg, g.degree(u));
    stats.degree_histogram.assign(max_deg + 1, 0);
    for (vertex_t u = 0; u < n; ++u) ++stats.degree_histogram[g.degree(u)];

    // Local clustering via sorted-adjacency intersections.
    double clustering_sum = 0.0;
    for (vertex_t u = 0; u < n; ++u) {
        const auto nbrs = g.neighbors(u);
        const std::size_t deg = nbrs.size();
        if (deg < 2) continue;
        std::size_t triangles = 0;
        for (const Graph::Neighbor& a : nbrs) {
            const auto others = g.neighbors(a.id);
            auto it = nbrs.begin();
            auto jt = others.begin();
            while (it != nbrs.end() && jt != others.end()) {
                if (it->id < jt->id) {
                    ++it;
                } else if (jt->id < it->id) {
                    ++jt;
                } else {
                    ++triangles;
                    ++it;
                    ++jt;
                }
            }
        }
        // `triangles` counts each edge among u's neighbors twice (once from
        // each endpoint), and deg*(deg-1) is twice the pair count, so the
        // ratio is exactly edges-among-neighbors over possible pairs.
        clustering_sum += static_cast<double>(triangles) /
                          (static_cast<double>(deg) * static_cast<double>(deg - 1));
    }
    stats.average_clustering = n > 0 ? clustering_sum / static_cast<double>(n) : 0.0;

    // Weakly connected components (directed edges traversed both ways).
    std::vector<std::vector<vertex_t>> reverse;
    if (g.directed()) {
        reverse.resize(n);
        for (vertex_t u = 0; u < n; ++u) {
            for (const Graph::Neighbor& nb : g.neighbors(u)) {
                reverse[nb.id].push_back(u);
            }
        }
    }
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<vertex_t> stack;
    std::size_t components = 0;
    for (vertex_t start = 0; start < n; ++start) {
        if (seen[start]) continue;
        ++components;
        seen[start] = 1;
        stack.assign(1, start);
        while (!stack.empty()) {
            const vertex_t u = stack.back();
            stack.pop_back();
            for (const Graph::Neighbor& nb : g.neighbors(u)) {
                if (!seen[nb.id]) {
                    seen[nb.id] = 1;
                    stack.push_back(nb.id);
                }
            }
            if (g.directed()) {
                for (const vertex_t v : reverse[u]) {
                    if (!seen[v]) {
                        seen[v] = 1;
                        stack.push_back(v);
                    }
                }
            }
        }
    }
    stats.component_count = components;
    return stats;
}

} // namespace kpath
