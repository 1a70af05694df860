#include "kpath/c_api.h"

#include "kpath/brandes.hpp"
#include "kpath/errors.hpp"
#include "kpath/eval.hpp"
#include "kpath/graph.hpp"
#include "kpath/io.hpp"
#include "kpath/kpath.hpp"
#include "kpath/sampled.hpp"
#include "kpath/synth.hpp"

#include <json.hpp>

#include <cmath>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

struct kp_graph {
    kpath::Graph graph;
    std::uint64_t duplicate_edges_dropped = 0;
    std::uint64_t self_loops_dropped = 0;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

char* copy_string(const std::string& text) {
    char* out = new char[text.size() + 1];
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

/// Runs `body`, translating exceptions into status codes + kp_last_error.
template <typename Body>
kp_status guarded(Body&& body) {
    try {
        return body();
    } catch (const kpath::ParseError& e) {
        set_error(e.what());
        return KP_ERROR_PARSE;
    } catch (const kpath::EnumerationLimitError& e) {
        set_error(e.what());
        return KP_ERROR_TOO_LARGE;
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        return KP_ERROR_INVALID_ARGUMENT;
    } catch (const std::ios_base::failure& e) {
        set_error(e.what());
        return KP_ERROR_IO;
    } catch (const std::bad_alloc&) {
        set_error("out of memory");
        return KP_ERROR_INTERNAL;
    } catch (const std::exception& e) {
        set_error(e.what());
        return KP_ERROR_INTERNAL;
    }
}

kp_status require(bool condition, const char* message) {
    if (condition) return KP_OK;
    set_error(message);
    return KP_ERROR_INVALID_ARGUMENT;
}

void export_scores(const kpath::CentralityScores& result, double* scores) {
    if (result.values.empty()) return;
    std::memcpy(scores, result.values.data(),
                result.values.size() * sizeof(double));
}

kp_status load_from_stream(std::istream& in, kp_format format,
                           const kp_load_options* options, kp_graph** out) {
    kp_load_options defaults{0, 0, 0};
    if (options == nullptr) options = &defaults;
    kpath::LoadResult loaded;
    if (format == KP_FORMAT_SNAP) {
        loaded = kpath::load_snap_edge_list(
            in,
            options->directed ? kpath::GraphKind::directed
                              : kpath::GraphKind::undirected,
            options->weighted != 0, options->force_unit_weights != 0);
    } else if (format == KP_FORMAT_PAJEK) {
        loaded = kpath::load_pajek(in, options->force_unit_weights != 0);
    } else {
        set_error("unknown graph format");
        return KP_ERROR_INVALID_ARGUMENT;
    }
    auto* handle = new kp_graph;
    handle->graph = std::move(loaded.graph);
    handle->duplicate_edges_dropped = loaded.duplicate_edges_dropped;
    handle->self_loops_dropped = loaded.self_loops_dropped;
    *out = handle;
    return KP_OK;
}

} // namespace

extern "C" {

const char* kp_version(void) { return "1.0.0"; }

const char* kp_status_name(kp_status status) {
    switch (status) {
    case KP_OK: return "ok";
    case KP_ERROR_INVALID_ARGUMENT: return "invalid argument";
    case KP_ERROR_PARSE: return "parse error";
    case KP_ERROR_IO: return "io error";
    case KP_ERROR_TOO_LARGE: return "input too large";
    case KP_ERROR_UNDEFINED: return "result undefined";
    case KP_ERROR_BUDGET_EXCEEDED: return "time budget exceeded";
    case KP_ERROR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* kp_last_error(void) { return g_last_error.c_str(); }

kp_status kp_graph_load_path(const char* path, kp_format format,
                             const kp_load_options* options, kp_graph** out) {
    if (auto rc = require(path && out, "path and out must not be null")) return rc;
    return guarded([&]() -> kp_status {
        std::ifstream in(path);
        if (!in) {
            set_error(std::string("cannot open '") + path + "'");
            return KP_ERROR_IO;
        }
        return load_from_stream(in, format, options, out);
    });
}

kp_status kp_graph_load_text(const char* text, kp_format format,
                             const kp_load_options* options, kp_graph** out) {
    if (auto rc = require(text && out, "text and out must not be null")) return rc;
    return guarded([&]() -> kp_status {
        std::istringstream in(text);
        return load_from_stream(in, format, options, out);
    });
}

kp_status kp_graph_generate(uint64_t n, uint32_t edges_per_new_vertex,
                            double triad_probability, uint64_t seed,
                            kp_graph** out) {
    if (auto rc = require(out != nullptr, "out must not be null")) return rc;
    return guarded([&]() -> kp_status {
        kpath::GenParams params;
        params.n = n;
        params.edges_per_new_vertex = edges_per_new_vertex;
        params.triad_probability = triad_probability;
        params.seed = seed;
        auto* handle = new kp_graph;
        handle->graph = kpath::generate_social_graph(params);
        *out = handle;
        return KP_OK;
    });
}

void kp_graph_free(kp_graph* graph) { delete graph; }

uint64_t kp_graph_vertex_count(const kp_graph* graph) {
    return graph ? graph->graph.vertex_count() : 0;
}

uint64_t kp_graph_edge_count(const kp_graph* graph) {
    return graph ? graph->graph.edge_count() : 0;
}

int kp_graph_directed(const kp_graph* graph) {
    return graph && graph->graph.directed() ? 1 : 0;
}

int kp_graph_weighted(const kp_graph* graph) {
    return graph && graph->graph.weighted() ? 1 : 0;
}

uint64_t kp_graph_duplicate_edges_dropped(const kp_graph* graph) {
    return graph ? graph->duplicate_edges_dropped : 0;
}

uint64_t kp_graph_self_loops_dropped(const kp_graph* graph) {
    return graph ? graph->self_loops_dropped : 0;
}

kp_status kp_graph_external_id(const kp_graph* graph, uint64_t vertex,
                               int64_t* out) {
    if (auto rc = require(graph && out, "graph and out must not be null")) return rc;
    if (auto rc = require(vertex < graph->graph.vertex_count(),
                          "vertex out of range")) {
        return rc;
    }
    *out = graph->graph.external_id(static_cast<kpath::vertex_t>(vertex));
    return KP_OK;
}

kp_status kp_graph_write_edge_list(const kp_graph* graph, char** out) {
    if (auto rc = require(graph && out, "graph and out must not be null")) return rc;
    return guarded([&]() -> kp_status {
        *out = copy_string(kpath::write_snap_edge_list(graph->graph));
        return KP_OK;
    });
}

kp_status kp_graph_id_map_csv(const kp_graph* graph, char** out) {
    if (auto rc = require(graph && out, "graph and out must not be null")) return rc;
    return guarded([&]() -> kp_status {
        *out = copy_string(kpath::id_map_csv(graph->graph));
        return KP_OK;
    });
}

kp_status kp_graph_stats_json(const kp_graph* graph, char** out) {
    if (auto rc = require(graph && out, "graph and out must not be null")) return rc;
    return guarded([&]() -> kp_status {
        const kpath::GraphStats stats = kpath::compute_graph_stats(graph->graph);
        nlohmann::json j = {{"vertex_count", graph->graph.vertex_count()},
                            {"edge_count", graph->graph.edge_count()},
                            {"degree_histogram", stats.degree_histogram},
                            {"average_clustering", stats.average_clustering},
                            {"component_count", stats.component_count},
                            {"max_degree", stats.max_degree()},
                            {"median_degree", stats.median_degree()}};
        *out = copy_string(j.dump(2));
        return KP_OK;
    });
}

kp_status kp_scores_csv(const kp_graph* graph, const double* scores, char** out) {
    if (auto rc = require(graph && scores && out,
                          "graph, scores and out must not be null")) {
        return rc;
    }
    return guarded([&]() -> kp_status {
        *out = copy_string(kpath::scores_csv(
            graph->graph, {scores, graph->graph.vertex_count()}));
        return KP_OK;
    });
}

void kp_string_free(char* text) { delete[] text; }

kp_status kp_brandes(const kp_graph* graph, int workers, double* scores) {
    if (auto rc = require(graph && scores, "graph and scores must not be null")) {
        return rc;
    }
    return guarded([&]() -> kp_status {
        export_scores(kpath::brandes_betweenness(graph->graph, workers), scores);
        return KP_OK;
    });
}

kp_status kp_bounded_betweenness(const kp_graph* graph, double distance_bound,
                                 int workers, double* scores) {
    if (auto rc = require(graph && scores, "graph and scores must not be null")) {
        return rc;
    }
    return guarded([&]() -> kp_status {
        export_scores(kpath::bounded_distance_betweenness(graph->graph,
                                                          distance_bound, workers),
                      scores);
        return KP_OK;
    });
}

kp_status kp_brute_force_betweenness(const kp_graph* graph,
                                     uint64_t vertex_limit, double* scores) {
    if (auto rc = require(graph && scores, "graph and scores must not be null")) {
        return rc;
    }
    return guarded([&]() -> kp_status {
        export_scores(kpath::brute_force_betweenness(graph->graph, vertex_limit),
                      scores);
        return KP_OK;
    });
}

kp_status kp_ra_brandes(const kp_graph* graph, double epsilon,
                        int64_t pivot_override, uint64_t seed, int workers,
                        double* scores) {
    if (auto rc = require(graph && scores, "graph and scores must not be null")) {
        return rc;
    }
    return guarded([&]() -> kp_status {
        kpath::RaBrandesParams params;
        params.epsilon = epsilon;
        if (pivot_override >= 0) {
            params.pivot_count_override = static_cast<std::size_t>(pivot_override);
        }
        params.seed = seed;
        params.workers = workers;
        export_scores(kpath::ra_brandes(graph->graph, params), scores);
        return KP_OK;
    });
}

kp_status kp_as_brandes(const kp_graph* graph, double c, double s,
                        int64_t cutoff_override, uint64_t seed, double* scores) {
    if (auto rc = require(graph && scores, "graph and scores must not be null")) {
        return rc;
    }
    return guarded([&]() -> kp_status {
        kpath::AsBrandesParams params;
        params.c = c;
        params.s = s;
        if (cutoff_override >= 0) {
            params.cutoff_override = static_cast<std::size_t>(cutoff_override);
        }
        params.seed = seed;
        export_scores(kpath::as_brandes(graph->graph, params), scores);
        return KP_OK;
    });
}

kp_status kp_ra_kpath(const kp_graph* graph, uint32_t kappa, double alpha,
                      int64_t iterations_override, uint64_t seed, int workers,
                      double* scores) {
    if (auto rc = require(graph && scores, "graph and scores must not be null")) {
        return rc;
    }
    return guarded([&]() -> kp_status {
        kpath::KPathParams params;
        params.kappa = kappa;
        params.alpha = alpha;
        if (iterations_override >= 0) {
            params.iterations_override =
                static_cast<std::uint64_t>(iterations_override);
        }
        params.seed = seed;
        params.workers = workers;
        export_scores(kpath::ra_kpath(graph->graph, params), scores);
        return KP_OK;
    });
}

kp_status kp_exact_kpath(const kp_graph* graph, uint32_t kappa,
                         uint64_t vertex_limit, double* scores) {
    if (auto rc = require(graph && scores, "graph and scores must not be null")) {
        return rc;
    }
    return guarded([&]() -> kp_status {
        export_scores(kpath::exact_kpath_centrality(
                          graph->graph, kappa,
                          static_cast<std::size_t>(vertex_limit)),
                      scores);
        return KP_OK;
    });
}

kp_status kp_ra_brandes_pivot_count(uint64_t n, double epsilon, uint64_t* out) {
    if (auto rc = require(out != nullptr, "out must not be null")) return rc;
    return guarded([&]() -> kp_status {
        *out = kpath::ra_brandes_pivot_count(static_cast<std::size_t>(n), epsilon);
        return KP_OK;
    });
}

kp_status kp_as_brandes_cutoff(uint64_t n, double s, uint64_t* out) {
    if (auto rc = require(out != nullptr, "out must not be null")) return rc;
    return guarded([&]() -> kp_status {
        *out = kpath::as_brandes_cutoff(static_cast<std::size_t>(n), s);
        return KP_OK;
    });
}

kp_status kp_ra_kpath_iterations(uint64_t n, uint32_t kappa, double alpha,
                                 uint64_t* out) {
    if (auto rc = require(out != nullptr, "out must not be null")) return rc;
    return guarded([&]() -> kp_status {
        *out = kpath::ra_kpath_iterations(static_cast<std::size_t>(n), kappa, alpha);
        return KP_OK;
    });
}

kp_status kp_default_kpath_params(const kp_graph* graph, uint32_t* kappa,
                                  double* alpha) {
    if (auto rc = require(graph && kappa && alpha,
                          "graph, kappa and alpha must not be null")) {
        return rc;
    }
    const kpath::KPathParams params = kpath::default_kpath_params(graph->graph);
    *kappa = params.kappa;
    *alpha = params.alpha;
    return KP_OK;
}

kp_status kp_match_speedup_params(double kpath_speedup, uint64_t n,
                                  double* epsilon, double* s, int* clamped) {
    if (auto rc = require(epsilon && s, "epsilon and s must not be null")) return rc;
    return guarded([&]() -> kp_status {
        const kpath::MatchedParams matched =
            kpath::match_speedup_params(kpath_speedup, static_cast<std::size_t>(n));
        *epsilon = matched.epsilon;
        *s = matched.s;
        if (clamped) *clamped = matched.epsilon_clamped ? 1 : 0;
        return KP_OK;
    });
}

kp_status kp_correlation(const double* x, const double* y, uint64_t length,
                         kp_correlation_method method, double* out) {
    if (auto rc = require(x && y && out, "x, y and out must not be null")) return rc;
    return guarded([&]() -> kp_status {
        const auto value = kpath::correlation(
            {x, length}, {y, length},
            method == KP_CORRELATION_PEARSON ? kpath::CorrelationMethod::pearson
                                             : kpath::CorrelationMethod::spearman);
        if (!value) {
            set_error("correlation undefined (constant input or too few points)");
            return KP_ERROR_UNDEFINED;
        }
        *out = *value;
        return KP_OK;
    });
}

kp_status kp_top_overlap(const double* exact, const double* approx,
                         const int64_t* external_ids, uint64_t length,
                         double n_percent, double* out) {
    if (auto rc = require(exact && approx && out,
                          "exact, approx and out must not be null")) {
        return rc;
    }
    return guarded([&]() -> kp_status {
        std::span<const std::int64_t> ids;
        if (external_ids) ids = {external_ids, length};
        *out = kpath::top_n_overlap({exact, length}, {approx, length}, n_percent,
                                    ids);
        return KP_OK;
    });
}

void kp_compare_options_init(kp_compare_options* options) {
    if (!options) return;
    options->algorithms = nullptr;
    options->repetitions = 10;
    options->seed = 0;
    options->workers = 1;
    options->kappa = 0;
    options->alpha = NAN;
    options->epsilon = NAN;
    options->as_c = NAN;
    options->as_s = NAN;
    options->distance_bound = NAN;
    options->time_budget_seconds = 0.0;
    options->network_label = nullptr;
    options->top_percents = nullptr;
    options->top_percent_count = 0;
}

kp_status kp_compare_run(const kp_graph* graph,
                         const kp_compare_options* options, char** report_json,
                         char** overlap_csv, char** correlation_csv) {
    if (auto rc = require(graph && options && report_json,
                          "graph, options and report_json must not be null")) {
        return rc;
    }
    return guarded([&]() -> kp_status {
        kpath::CompareConfig config;
        if (options->algorithms && *options->algorithms) {
            config.algorithms.clear();
            std::string token;
            std::istringstream ss(options->algorithms);
            while (std::getline(ss, token, ',')) {
                if (!token.empty()) config.algorithms.push_back(token);
            }
        }
        config.repetitions = options->repetitions;
        config.seed = options->seed;
        config.workers = options->workers;
        if (options->kappa > 0) config.kappa = options->kappa;
        if (!std::isnan(options->alpha)) config.alpha = options->alpha;
        if (!std::isnan(options->epsilon)) config.epsilon = options->epsilon;
        if (!std::isnan(options->as_c)) config.as_c = options->as_c;
        if (!std::isnan(options->as_s)) config.as_s = options->as_s;
        if (!std::isnan(options->distance_bound)) {
            config.distance_bound = options->distance_bound;
        }
        config.time_budget_seconds = options->time_budget_seconds;
        if (options->network_label) config.network_label = options->network_label;
        if (options->top_percents && options->top_percent_count > 0) {
            config.top_percents.assign(
                options->top_percents,
                options->top_percents + options->top_percent_count);
        }

        const kpath::CompareResult result =
            kpath::run_comparison(graph->graph, config);
        *report_json = copy_string(kpath::compare_result_to_json(result).dump(2));
        if (overlap_csv) *overlap_csv = copy_string(kpath::overlap_table_csv(result));
        if (correlation_csv) {
            *correlation_csv = copy_string(kpath::correlation_table_csv(result));
        }
        if (!result.complete) {
            set_error("time budget exceeded; report is partial");
            return KP_ERROR_BUDGET_EXCEEDED;
        }
        return KP_OK;
    });
}

} // extern "C"
