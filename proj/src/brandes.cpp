#include "kpath/brandes.hpp"

#include "kpath/errors.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <thread>
#include <utility>

namespace kpath {

void SsspState::resize(std::size_t n) {
    dist.assign(n, unreachable);
    sigma.assign(n, 0.0);
    delta.assign(n, 0.0);
    preds.resize(n);
    order.clear();
    order.reserve(n);
}

void SsspState::reset() {
    std::fill(dist.begin(), dist.end(), unreachable);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    for (auto& p : preds) p.clear();
    order.clear();
}

namespace {

void bfs_search(const Graph& g, vertex_t source, double bound, SsspState& st) {
    std::vector<vertex_t> queue;
    queue.reserve(g.vertex_count());
    queue.push_back(source);
    std::size_t head = 0;
    while (head < queue.size()) {
        const vertex_t u = queue[head++];
        if (st.dist[u] > bound) break; // BFS settles in nondecreasing distance
        st.order.push_back(u);
        for (const Graph::Neighbor& nb : g.neighbors(u)) {
            const vertex_t v = nb.id;
            if (st.dist[v] == SsspState::unreachable) {
                st.dist[v] = st.dist[u] + 1.0;
                queue.push_back(v);
            }
            if (st.dist[v] == st.dist[u] + 1.0) {
                st.sigma[v] += st.sigma[u];
                st.preds[v].push_back(u);
            }
        }
    }
}

void dijkstra_search(const Graph& g, vertex_t source, double bound,
                     SsspState& st) {
    using Entry = std::pair<double, vertex_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    heap.push({0.0, source});
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d > st.dist[u]) continue; // stale entry
        if (d > bound) break;         // every remaining entry is farther
        st.order.push_back(u);
        for (const Graph::Neighbor& nb : g.neighbors(u)) {
            const vertex_t v = nb.id;
            const double nd = d + nb.weight;
            if (nd < st.dist[v]) {
                st.dist[v] = nd;
                st.sigma[v] = st.sigma[u];
                st.preds[v].clear();
                st.preds[v].push_back(u);
                heap.push({nd, v});
            } else if (nd == st.dist[v]) {
                st.sigma[v] += st.sigma[u];
                st.preds[v].push_back(u);
            }
        }
    }
}

} // namespace

void single_source_dependencies(const Graph& g, vertex_t source,
                                double distance_bound, SsspState& state) {
    state.reset();
    state.dist[source] = 0.0;
    state.sigma[source] = 1.0;
    if (g.weighted()) {
        dijkstra_search(g, source, distance_bound, state);
    } else {
        bfs_search(g, source, distance_bound, state);
    }
    for (auto it = state.order.rbegin(); it != state.order.rend(); ++it) {
        const vertex_t w = *it;
        const double coefficient = 1.0 + state.delta[w];
        for (const vertex_t v : state.preds[w]) {
            state.delta[v] += state.sigma[v] / state.sigma[w] * coefficient;
        }
    }
}

namespace {

std::vector<double> accumulate_all_sources(const Graph& g, double bound,
                                           int workers) {
    const std::size_t n = g.vertex_count();
    std::vector<double> scores(n, 0.0);
    if (n == 0) return scores;
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
    const std::size_t worker_count = std::min<std::size_t>(workers, n);

    auto run_range = [&](vertex_t begin, vertex_t end, std::vector<double>& acc) {
        SsspState state;
        state.resize(n);
        for (vertex_t s = begin; s < end; ++s) {
            single_source_dependencies(g, s, bound, state);
            for (vertex_t v = 0; v < n; ++v) {
                if (v != s) acc[v] += state.delta[v];
            }
        }
    };

    if (worker_count == 1) {
        run_range(0, static_cast<vertex_t>(n), scores);
        return scores;
    }

    std::vector<std::vector<double>> partial(worker_count,
                                             std::vector<double>(n, 0.0));
    std::vector<std::thread> threads;
    threads.reserve(worker_count);
    const std::size_t chunk = (n + worker_count - 1) / worker_count;
    for (std::size_t w = 0; w < worker_count; ++w) {
        const auto begin = static_cast<vertex_t>(std::min(w * chunk, n));
        const auto end = static_cast<vertex_t>(std::min(begin + chunk, n));
        threads.emplace_back(run_range, begin, end, std::ref(partial[w]));
    }
    for (auto& t : threads) t.join();
    // Merge in worker order so a given worker count is deterministic.
    for (std::size_t w = 0; w < worker_count; ++w) {
        for (std::size_t v = 0; v < n; ++v) scores[v] += partial[w][v];
    }
    return scores;
}

} // namespace

CentralityScores brandes_betweenness(const Graph& g, int workers) {
    return {"brandes",
            accumulate_all_sources(g, SsspState::unreachable, workers)};
}

CentralityScores bounded_distance_betweenness(const Graph& g, double k,
                                              int workers) {
    if (!(k > 0.0)) throw std::invalid_argument("distance bound must be positive");
    return {"k-betweenness", accumulate_all_sources(g, k, workers)};
}

namespace {

// Enumerates every shortest s-t path; each call reports one complete path
// via sigma/through tallies.
struct ShortestPathEnumerator {
    const Graph& g;
    const std::vector<std::vector<double>>& dist;
    vertex_t source = 0;
    vertex_t target = 0;
    double sigma = 0.0;
    std::vector<double> through;
    std::vector<vertex_t> path;
    std::uint64_t budget;

    ShortestPathEnumerator(const Graph& graph,
                           const std::vector<std::vector<double>>& d,
                           std::uint64_t step_budget)
        : g(graph), dist(d), through(graph.vertex_count(), 0.0),
          budget(step_budget) {}

    void run(vertex_t s, vertex_t t) {
        source = s;
        target = t;
        sigma = 0.0;
        std::fill(through.begin(), through.end(), 0.0);
        path.clear();
        extend(s, 0.0);
    }

    void extend(vertex_t u, double travelled) {
        if (budget-- == 0) {
            throw EnumerationLimitError(
                "brute-force betweenness exceeded its enumeration budget");
        }
        path.push_back(u);
        if (u == target) {
            sigma += 1.0;
            for (std::size_t i = 1; i + 1 < path.size(); ++i) through[path[i]] += 1.0;
        } else {
            for (const Graph::Neighbor& nb : g.neighbors(u)) {
                const double via = travelled + nb.weight;
                if (via == dist[source][nb.id] &&
                    via + dist[nb.id][target] == dist[source][target]) {
                    extend(nb.id, via);
                }
            }
        }
        path.pop_back();
    }
};

} // namespace

CentralityScores brute_force_betweenness(const Graph& g,
                                         std::size_t vertex_limit) {
    const std::size_t n = g.vertex_count();
    if (n > vertex_limit) {
        throw EnumerationLimitError(
            "graph too large for brute-force betweenness (" + std::to_string(n) +
            " > " + std::to_string(vertex_limit) + " vertices)");
    }
    constexpr double inf = SsspState::unreachable;
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, inf));
    for (vertex_t u = 0; u < n; ++u) {
        dist[u][u] = 0.0;
        for (const Graph::Neighbor& nb : g.neighbors(u)) {
            dist[u][nb.id] = std::min(dist[u][nb.id], nb.weight);
        }
    }
    for (vertex_t k = 0; k < n; ++k) {
        for (vertex_t i = 0; i < n; ++i) {
            if (dist[i][k] == inf) continue;
            for (vertex_t j = 0; j < n; ++j) {
                if (dist[k][j] == inf) continue;
                dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);
            }
        }
    }

    std::vector<double> scores(n, 0.0);
    ShortestPathEnumerator enumerator(g, dist, 50'000'000ULL);
    for (vertex_t s = 0; s < n; ++s) {
        for (vertex_t t = 0; t < n; ++t) {
            if (s == t || dist[s][t] == inf) continue;
            enumerator.run(s, t);
            for (vertex_t v = 0; v < n; ++v) {
                if (enumerator.through[v] > 0.0) {
                    scores[v] += enumerator.through[v] / enumerator.sigma;
                }
            }
        }
    }
    return {"brute-force", std::move(scores)};
}

} // namespace kpath
