#include "kpath/kpath.hpp"

#include "kpath/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace kpath {

std::uint64_t ra_kpath_iterations(std::size_t n, std::uint32_t kappa, double alpha) {
    if (kappa < 1) throw std::invalid_argument("kappa must be >= 1");
    if (alpha < -0.5 || alpha > 0.5) {
        throw std::invalid_argument("alpha must lie in [-1/2, 1/2]");
    }
    if (n <= 1) return 0;
    const double nd = static_cast<double>(n);
    const double t = 2.0 * static_cast<double>(kappa) * static_cast<double>(kappa) *
                     std::pow(nd, 1.0 - 2.0 * alpha) * std::log(nd);
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(t)));
}

double walk_probability(const Graph& g, std::span<const vertex_t> path) {
    if (path.size() < 2) {
        throw std::invalid_argument("path must contain at least one edge");
    }
    const std::size_t n = g.vertex_count();
    std::vector<std::uint8_t> visited(n, 0);
    for (const vertex_t v : path) {
        if (v >= n) throw std::invalid_argument("path vertex out of range");
        if (visited[v]) throw std::invalid_argument("path is not simple");
        visited[v] = 1;
    }

    std::fill(visited.begin(), visited.end(), 0);
    visited[path[0]] = 1;
    std::vector<Graph::Neighbor> candidates;
    double probability = 1.0;
    for (std::size_t i = 1; i < path.size(); ++i) {
        const vertex_t from = path[i - 1];
        const vertex_t to = path[i];
        unvisited_neighbors(g, from, visited, candidates);
        double step = 0.0;
        if (g.weighted()) {
            double total = 0.0;
            double chosen = 0.0;
            for (const Graph::Neighbor& nb : candidates) {
                total += 1.0 / nb.weight;
                if (nb.id == to) chosen = 1.0 / nb.weight;
            }
            if (chosen == 0.0) {
                throw std::invalid_argument("path uses an edge absent from the graph");
            }
            step = chosen / total;
        } else {
            const bool present = std::any_of(
                candidates.begin(), candidates.end(),
                [to](const Graph::Neighbor& nb) { return nb.id == to; });
            if (!present) {
                throw std::invalid_argument("path uses an edge absent from the graph");
            }
            step = 1.0 / static_cast<double>(candidates.size());
        }
        probability *= step;
        visited[to] = 1;
    }
    return probability;
}

WalkSimulator::WalkSimulator(const Graph& g)
    : g_(g), explored_(g.vertex_count(), 0), counts_(g.vertex_count(), 0) {}

void WalkSimulator::reset_counts() {
    std::fill(counts_.begin(), counts_.end(), 0);
}

bool WalkSimulator::explored_clear() const {
    return std::none_of(explored_.begin(), explored_.end(),
                        [](std::uint8_t f) { return f != 0; });
}

// `select(current)` picks the next vertex among the unvisited neighbors of
// `current`, or nullopt to stop. The step count against `length`, the
// explored bookkeeping and the stall rollback all live here.
template <typename SelectStep>
bool WalkSimulator::walk_impl(vertex_t source, std::uint32_t length,
                              SelectStep&& select) {
    visit_stack_.clear();
    explored_[source] = 1;
    visit_stack_.push_back(source);
    vertex_t current = source;
    std::uint32_t steps = 0;
    while (steps < length) {
        const std::optional<vertex_t> chosen = select(current);
        if (!chosen) break;
        explored_[*chosen] = 1;
        visit_stack_.push_back(*chosen);
        ++counts_[*chosen];
        current = *chosen;
        ++steps;
    }
    const bool completed = steps == length;
    // Unwind: flags always cleared; a stalled walk also takes back the
    // tallies of everything it pushed (the source was never tallied).
    for (std::size_t i = visit_stack_.size(); i-- > 0;) {
        const vertex_t v = visit_stack_[i];
        explored_[v] = 0;
        if (!completed && i > 0) --counts_[v];
    }
    return completed;
}

bool WalkSimulator::perform_walk(vertex_t source, std::uint32_t length, Rng& rng) {
    // Two passes over the adjacency per step: one to size the unvisited set,
    // one to pick the drawn entry. Keeps the hot loop allocation-free.
    if (g_.weighted()) {
        return walk_impl(source, length,
                         [&](vertex_t current) -> std::optional<vertex_t> {
            const auto nbrs = g_.neighbors(current);
            double total = 0.0;
            for (const Graph::Neighbor& nb : nbrs) {
                if (!explored_[nb.id]) total += 1.0 / nb.weight;
            }
            if (total == 0.0) return std::nullopt;
            const double draw = rng.unit() * total;
            double prefix = 0.0;
            vertex_t last = 0;
            bool seen = false;
            for (const Graph::Neighbor& nb : nbrs) {
                if (explored_[nb.id]) continue;
                last = nb.id;
                seen = true;
                prefix += 1.0 / nb.weight;
                if (draw < prefix) return nb.id;
            }
            return seen ? std::optional<vertex_t>(last) : std::nullopt;
        });
    }
    return walk_impl(source, length,
                     [&](vertex_t current) -> std::optional<vertex_t> {
        const auto nbrs = g_.neighbors(current);
        const std::size_t deg = nbrs.size();
        if (deg == 0) return std::nullopt;
        // A walk marks at most its own length, so on high-degree vertices
        // almost every neighbor is unvisited: rejection sampling against the
        // full list is a uniform draw over the unvisited set without the
        // O(degree) scan. Fall back to the exact scan when unlucky or when
        // the list is small.
        if (deg >= 16) {
            for (int attempt = 0; attempt < 8; ++attempt) {
                const Graph::Neighbor& nb = nbrs[rng.below(deg)];
                if (!explored_[nb.id]) return nb.id;
            }
        }
        std::size_t unvisited = 0;
        for (const Graph::Neighbor& nb : nbrs) {
            if (!explored_[nb.id]) ++unvisited;
        }
        if (unvisited == 0) return std::nullopt;
        std::uint64_t index = rng.below(unvisited);
        for (const Graph::Neighbor& nb : nbrs) {
            if (explored_[nb.id]) continue;
            if (index == 0) return nb.id;
            --index;
        }
        return std::nullopt; // unreachable
    });
}

bool WalkSimulator::perform_scripted_walk(vertex_t source, std::uint32_t length,
                                          std::span<const vertex_t> steps) {
    std::size_t cursor = 0;
    return walk_impl(source, length,
                     [&](vertex_t current) -> std::optional<vertex_t> {
        unvisited_neighbors(g_, current, explored_, candidates_);
        if (candidates_.empty()) return std::nullopt;
        if (cursor >= steps.size()) return std::nullopt; // scripted stop
        const vertex_t wanted = steps[cursor];
        const bool available = std::any_of(
            candidates_.begin(), candidates_.end(),
            [wanted](const Graph::Neighbor& nb) { return nb.id == wanted; });
        if (!available) {
            throw std::invalid_argument(
                "scripted step " + std::to_string(cursor) +
                " names a visited or non-adjacent vertex " +
                std::to_string(wanted));
        }
        ++cursor;
        return wanted;
    });
}

namespace detail {

void run_estimator_walks(const Graph& g, std::uint32_t kappa,
                         std::uint64_t iterations, Rng& rng, WalkSimulator& sim) {
    const std::size_t n = g.vertex_count();
    for (std::uint64_t i = 0; i < iterations; ++i) {
        const auto source = static_cast<vertex_t>(rng.below(n));
        const auto length = static_cast<std::uint32_t>(1 + rng.below(kappa));
        sim.perform_walk(source, length, rng);
    }
}

} // namespace detail

namespace {

CentralityScores scale_counts(const Graph& g, std::span<const std::uint64_t> counts,
                              std::uint32_t kappa, std::uint64_t iterations) {
    std::vector<double> values(g.vertex_count(), 0.0);
    if (iterations > 0) {
        const double factor = static_cast<double>(kappa) *
                              static_cast<double>(g.vertex_count()) /
                              static_cast<double>(iterations);
        for (std::size_t v = 0; v < values.size(); ++v) {
            values[v] = factor * static_cast<double>(counts[v]);
        }
    }
    return {"ra-kpath", std::move(values)};
}

} // namespace

RaKPathResult ra_kpath_counts(const Graph& g, const KPathParams& params) {
    const std::size_t n = g.vertex_count();
    const std::uint64_t iterations =
        params.iterations_override
            ? *params.iterations_override
            : ra_kpath_iterations(n, params.kappa, params.alpha);
    RaKPathResult result;
    result.iterations = iterations;
    result.counts.assign(n, 0);
    if (n <= 1 || iterations == 0) {
        result.scores = scale_counts(g, result.counts, params.kappa, iterations);
        return result;
    }
    if (params.workers < 1) throw std::invalid_argument("workers must be >= 1");
    const auto worker_count =
        static_cast<std::uint64_t>(std::min<std::uint64_t>(params.workers, iterations));

    if (worker_count == 1) {
        WalkSimulator sim(g);
        Rng rng(params.seed, 0);
        detail::run_estimator_walks(g, params.kappa, iterations, rng, sim);
        result.counts = sim.counts();
    } else {
        std::vector<std::vector<std::uint64_t>> partial(worker_count);
        std::vector<std::thread> threads;
        threads.reserve(worker_count);
        const std::uint64_t base = iterations / worker_count;
        const std::uint64_t remainder = iterations % worker_count;
        for (std::uint64_t w = 0; w < worker_count; ++w) {
            const std::uint64_t share = base + (w < remainder ? 1 : 0);
            threads.emplace_back([&, w, share] {
                WalkSimulator sim(g);
                Rng rng(params.seed, w);
                detail::run_estimator_walks(g, params.kappa, share, rng, sim);
                partial[w] = sim.counts();
            });
        }
        for (auto& t : threads) t.join();
        for (const auto& p : partial) {
            for (std::size_t v = 0; v < n; ++v) result.counts[v] += p[v];
        }
    }
    result.scores = scale_counts(g, result.counts, params.kappa, iterations);
    return result;
}

CentralityScores ra_kpath(const Graph& g, const KPathParams& params) {
    return ra_kpath_counts(g, params).scores;
}

CentralityScores ra_kpath_scripted(const Graph& g, const KPathParams& params,
                                   std::span<const ScriptedWalk> script) {
    if (params.iterations_override &&
        *params.iterations_override != script.size()) {
        throw std::invalid_argument(
            "iterations_override must match the script length");
    }
    const std::uint64_t iterations = script.size();
    WalkSimulator sim(g);
    for (const ScriptedWalk& walk : script) {
        if (walk.source >= g.vertex_count()) {
            throw std::invalid_argument("scripted source out of range");
        }
        if (walk.length < 1 || walk.length > params.kappa) {
            throw std::invalid_argument("scripted length outside [1, kappa]");
        }
        if (walk.steps.size() > walk.length) {
            throw std::invalid_argument("script has more steps than the walk length");
        }
        sim.perform_scripted_walk(walk.source, walk.length, walk.steps);
    }
    return scale_counts(g, sim.counts(), params.kappa, iterations);
}

namespace {

struct KPathEnumerator {
    const Graph& g;
    std::uint32_t kappa;
    std::uint64_t budget;
    std::vector<std::uint8_t> explored;
    std::vector<vertex_t> path;
    std::vector<Graph::Neighbor> scratch;
    std::vector<double> centrality;

    KPathEnumerator(const Graph& graph, std::uint32_t k, std::uint64_t b)
        : g(graph), kappa(k), budget(b), explored(graph.vertex_count(), 0),
          centrality(graph.vertex_count(), 0.0) {}

    void from_source(vertex_t s) {
        explored[s] = 1;
        path.assign(1, s);
        extend(s, 1.0, 0);
        explored[s] = 0;
    }

    // Every extension of the current prefix is itself a complete path of
    // exactly `depth+1` edges, so it credits its probability to every
    // non-source vertex it contains.
    void extend(vertex_t current, double probability, std::uint32_t depth) {
        if (depth == kappa) return;
        std::vector<Graph::Neighbor> candidates;
        unvisited_neighbors(g, current, explored, candidates);
        if (candidates.empty()) return;
        double inverse_total = 0.0;
        if (g.weighted()) {
            for (const Graph::Neighbor& nb : candidates) {
                inverse_total += 1.0 / nb.weight;
            }
        }
        for (const Graph::Neighbor& nb : candidates) {
            if (budget-- == 0) {
                throw EnumerationLimitError(
                    "kappa-path oracle exceeded its enumeration budget");
            }
            const double step =
                g.weighted() ? (1.0 / nb.weight) / inverse_total
                             : 1.0 / static_cast<double>(candidates.size());
            const double p = probability * step;
            explored[nb.id] = 1;
            path.push_back(nb.id);
            for (std::size_t i = 1; i < path.size(); ++i) centrality[path[i]] += p;
            extend(nb.id, p, depth + 1);
            path.pop_back();
            explored[nb.id] = 0;
        }
    }
};

} // namespace

CentralityScores exact_kpath_centrality(const Graph& g, std::uint32_t kappa,
                                        std::size_t vertex_limit,
                                        std::uint64_t extension_budget) {
    if (kappa < 1) throw std::invalid_argument("kappa must be >= 1");
    const std::size_t n = g.vertex_count();
    if (n > vertex_limit) {
        throw EnumerationLimitError(
            "graph too large for the kappa-path oracle (" + std::to_string(n) +
            " > " + std::to_string(vertex_limit) + " vertices)");
    }
    KPathEnumerator enumerator(g, kappa, extension_budget);
    for (vertex_t s = 0; s < n; ++s) enumerator.from_source(s);
    return {"kpath-oracle", std::move(enumerator.centrality)};
}

} // namespace kpath
