#include "kpath/sampled.hpp"

#include "kpath/brandes.hpp"
#include "kpath/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace kpath {

std::size_t ra_brandes_pivot_count(std::size_t n, double epsilon) {
    if (!(epsilon > 0.0) || epsilon > 1.0) {
        throw std::invalid_argument("epsilon must lie in (0, 1]");
    }
    if (n <= 1) return 1;
    const double count = std::log(static_cast<double>(n)) / (epsilon * epsilon);
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(count)));
}

std::size_t as_brandes_cutoff(std::size_t n, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("s must be positive");
    return std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(static_cast<double>(n) / s)));
}

namespace {

std::vector<vertex_t> draw_pivots(std::size_t n, std::size_t count,
                                  std::uint64_t seed) {
    Rng rng(seed, 0);
    std::vector<vertex_t> pivots(count);
    for (auto& p : pivots) p = static_cast<vertex_t>(rng.below(n));
    return pivots;
}

void validate_pivots(const std::vector<vertex_t>& pivots, std::size_t n) {
    for (const vertex_t p : pivots) {
        if (p >= n) throw std::invalid_argument("pivot out of range");
    }
}

} // namespace

CentralityScores ra_brandes(const Graph& g, const RaBrandesParams& params) {
    const std::size_t n = g.vertex_count();
    std::vector<double> scores(n, 0.0);
    if (n == 0) return {"ra-brandes", std::move(scores)};

    std::vector<vertex_t> pivots;
    if (params.pivots) {
        pivots = *params.pivots;
        validate_pivots(pivots, n);
    } else {
        const std::size_t count =
            params.pivot_count_override
                ? *params.pivot_count_override
                : ra_brandes_pivot_count(n, params.epsilon);
        pivots = draw_pivots(n, count, params.seed);
    }
    if (pivots.empty()) throw std::invalid_argument("pivot multiset is empty");

    if (params.workers < 1) throw std::invalid_argument("workers must be >= 1");
    const std::size_t worker_count =
        std::min<std::size_t>(params.workers, pivots.size());

    auto run_range = [&](std::size_t begin, std::size_t end,
                         std::vector<double>& acc) {
        SsspState state;
        state.resize(n);
        for (std::size_t i = begin; i < end; ++i) {
            const vertex_t s = pivots[i];
            single_source_dependencies(g, s, SsspState::unreachable, state);
            for (vertex_t v = 0; v < n; ++v) {
                if (v != s) acc[v] += state.delta[v];
            }
        }
    };

    if (worker_count == 1) {
        run_range(0, pivots.size(), scores);
    } else {
        std::vector<std::vector<double>> partial(worker_count,
                                                 std::vector<double>(n, 0.0));
        std::vector<std::thread> threads;
        const std::size_t chunk = (pivots.size() + worker_count - 1) / worker_count;
        for (std::size_t w = 0; w < worker_count; ++w) {
            const std::size_t begin = std::min(w * chunk, pivots.size());
            const std::size_t end = std::min(begin + chunk, pivots.size());
            threads.emplace_back(run_range, begin, end, std::ref(partial[w]));
        }
        for (auto& t : threads) t.join();
        for (const auto& p : partial) {
            for (std::size_t v = 0; v < n; ++v) scores[v] += p[v];
        }
    }

    const double scale =
        static_cast<double>(n) / static_cast<double>(pivots.size());
    for (double& v : scores) v *= scale;
    return {"ra-brandes", std::move(scores)};
}

CentralityScores as_brandes(const Graph& g, const AsBrandesParams& params) {
    const std::size_t n = g.vertex_count();
    std::vector<double> scores(n, 0.0);
    if (n == 0) return {"as-brandes", std::move(scores)};
    if (!(params.c > 0.0)) throw std::invalid_argument("c must be positive");

    std::vector<vertex_t> pivots;
    if (params.pivots) {
        pivots = *params.pivots;
        validate_pivots(pivots, n);
    } else {
        const std::size_t cutoff = params.cutoff_override
                                       ? *params.cutoff_override
                                       : as_brandes_cutoff(n, params.s);
        pivots = draw_pivots(n, cutoff, params.seed);
    }
    if (pivots.empty()) throw std::invalid_argument("pivot multiset is empty");

    const double threshold = params.c * static_cast<double>(n);
    std::vector<double> running_sum(n, 0.0);
    std::vector<std::size_t> samples_used(n, 0);
    std::vector<std::uint8_t> frozen(n, 0);

    SsspState state;
    state.resize(n);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        const vertex_t s = pivots[i];
        single_source_dependencies(g, s, SsspState::unreachable, state);
        for (vertex_t v = 0; v < n; ++v) {
            if (frozen[v] || v == s) continue;
            running_sum[v] += state.delta[v];
            if (running_sum[v] > threshold) {
                frozen[v] = 1;
                samples_used[v] = i + 1;
            }
        }
    }
    for (vertex_t v = 0; v < n; ++v) {
        if (!frozen[v]) samples_used[v] = pivots.size();
        scores[v] = static_cast<double>(n) * running_sum[v] /
                    static_cast<double>(samples_used[v]);
    }
    return {"as-brandes", std::move(scores)};
}

} // namespace kpath
