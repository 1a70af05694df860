// Command-line front end for the kpath centrality library. Builds strictly
// on the public C API (kpath/c_api.h); everything here is argument plumbing,
// file writing and the run manifest.

#include "kpath/c_api.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_input = 2;
constexpr int exit_budget = 3;

using json = nlohmann::json;

struct GraphGuard {
    kp_graph* ptr = nullptr;
    ~GraphGuard() { kp_graph_free(ptr); }
};

struct StringGuard {
    char* ptr = nullptr;
    ~StringGuard() { kp_string_free(ptr); }
};

int status_to_exit(kp_status status) {
    switch (status) {
    case KP_OK: return exit_ok;
    case KP_ERROR_INVALID_ARGUMENT:
    case KP_ERROR_UNDEFINED: return exit_usage;
    case KP_ERROR_BUDGET_EXCEEDED: return exit_budget;
    default: return exit_input;
    }
}

[[nodiscard]] int fail(kp_status status, const std::string& context) {
    std::cerr << "kpath: " << context << ": " << kp_status_name(status);
    const std::string detail = kp_last_error();
    if (!detail.empty()) std::cerr << " (" << detail << ")";
    std::cerr << "\n";
    return status_to_exit(status);
}

bool write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    out.flush();
    if (!out) {
        std::cerr << "kpath: cannot write '" << path << "'\n";
        return false;
    }
    return true;
}

void emit(const std::optional<std::string>& path, const std::string& content,
          bool& ok) {
    if (path) {
        ok = ok && write_file(*path, content);
    } else {
        std::cout << content;
    }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

// ---- shared option blocks -------------------------------------------------

struct InputOptions {
    std::string path;
    std::string format = "snap";
    bool directed = false;
    bool weighted = false;
    bool as_unweighted = false;

    void attach(CLI::App& cmd, bool required) {
        auto* in = cmd.add_option("--in", path, "input graph file");
        if (required) in->required();
        cmd.add_option("--format", format, "input format")
            ->check(CLI::IsMember({"snap", "pajek"}))
            ->capture_default_str();
        cmd.add_flag("--directed", directed,
                     "treat the SNAP edge list as directed");
        cmd.add_flag("--weighted", weighted,
                     "SNAP edge list has a weight column");
        cmd.add_flag("--as-unweighted", as_unweighted,
                     "parse weights but force them all to 1");
    }

    kp_status load(kp_graph** out) const {
        kp_load_options options;
        options.directed = directed ? 1 : 0;
        options.weighted = weighted ? 1 : 0;
        options.force_unit_weights = as_unweighted ? 1 : 0;
        const kp_format fmt =
            format == "pajek" ? KP_FORMAT_PAJEK : KP_FORMAT_SNAP;
        return kp_graph_load_path(path.c_str(), fmt, &options, out);
    }

    json describe() const {
        return {{"path", path},
                {"format", format},
                {"directed", directed},
                {"weighted", weighted},
                {"as_unweighted", as_unweighted}};
    }
};

struct GenerateOptions {
    std::uint64_t n = 0;
    std::uint32_t edges_per_vertex = 2;
    double triad_probability = 0.6;

    // Accepts "1000" or "n=1000,m=2,p=0.6".
    bool parse_spec(const std::string& spec) {
        if (spec.find('=') == std::string::npos) {
            try {
                n = std::stoull(spec);
            } catch (...) {
                return false;
            }
            return true;
        }
        std::size_t pos = 0;
        while (pos < spec.size()) {
            const std::size_t comma = spec.find(',', pos);
            const std::string item = spec.substr(
                pos, comma == std::string::npos ? std::string::npos : comma - pos);
            const std::size_t eq = item.find('=');
            if (eq == std::string::npos) return false;
            const std::string key = item.substr(0, eq);
            const std::string value = item.substr(eq + 1);
            try {
                if (key == "n") {
                    n = std::stoull(value);
                } else if (key == "m") {
                    edges_per_vertex = static_cast<std::uint32_t>(std::stoul(value));
                } else if (key == "p") {
                    triad_probability = std::stod(value);
                } else {
                    return false;
                }
            } catch (...) {
                return false;
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return n > 0;
    }

    json describe(std::uint64_t seed) const {
        return {{"n", n},
                {"edges_per_new_vertex", edges_per_vertex},
                {"triad_probability", triad_probability},
                {"seed", seed}};
    }
};

json graph_summary(const kp_graph* g) {
    return {{"vertex_count", kp_graph_vertex_count(g)},
            {"edge_count", kp_graph_edge_count(g)},
            {"directed", kp_graph_directed(g) != 0},
            {"weighted", kp_graph_weighted(g) != 0},
            {"duplicate_edges_dropped", kp_graph_duplicate_edges_dropped(g)},
            {"self_loops_dropped", kp_graph_self_loops_dropped(g)}};
}

bool write_manifest(const std::optional<std::string>& manifest_path,
                    const std::optional<std::string>& out_path, json manifest) {
    manifest["tool"] = "kpath";
    manifest["version"] = kp_version();
    std::string path;
    if (manifest_path) {
        path = *manifest_path;
    } else if (out_path) {
        path = *out_path + ".manifest.json";
    } else {
        path = "kpath-manifest.json";
    }
    return write_file(path, manifest.dump(2) + "\n");
}

// ---- compute --------------------------------------------------------------

struct ComputeCommand {
    InputOptions input;
    std::string algorithm;
    std::optional<std::string> out_path;
    std::optional<std::string> manifest_path;
    std::optional<std::string> id_map_path;
    std::uint64_t seed = 0;
    int workers = 1;
    // ra-kpath / oracle
    std::uint32_t kappa = 0; // 0 = default
    double alpha = std::nan("");
    std::int64_t iterations = -1;
    std::uint64_t max_vertices = 12;
    // kbetweenness
    double bound = std::nan("");
    // ra-brandes
    double epsilon = 0.5;
    std::int64_t pivots = -1;
    // as-brandes
    double as_c = 5.0;
    double as_s = 20.0;
    std::int64_t cutoff = -1;
    double match_speedup = std::nan("");

    int run() {
        GraphGuard graph;
        if (const kp_status rc = input.load(&graph.ptr); rc != KP_OK) {
            return fail(rc, "loading '" + input.path + "'");
        }
        const std::uint64_t n = kp_graph_vertex_count(graph.ptr);
        graph_n = n;
        std::vector<double> scores(n, 0.0);

        json params;
        kp_status rc = KP_OK;
        const auto started = std::chrono::steady_clock::now();
        if (algorithm == "brandes") {
            rc = kp_brandes(graph.ptr, workers, scores.data());
            params = {{"workers", workers}};
        } else if (algorithm == "kbetweenness") {
            if (std::isnan(bound)) {
                std::cerr << "kpath: kbetweenness requires --bound\n";
                return exit_usage;
            }
            rc = kp_bounded_betweenness(graph.ptr, bound, workers, scores.data());
            params = {{"k", bound}, {"workers", workers}};
        } else if (algorithm == "ra-brandes") {
            apply_matching();
            rc = kp_ra_brandes(graph.ptr, epsilon, pivots, seed, workers,
                               scores.data());
            std::uint64_t pivot_count = pivots >= 0
                                            ? static_cast<std::uint64_t>(pivots)
                                            : 0;
            if (pivots < 0) kp_ra_brandes_pivot_count(n, epsilon, &pivot_count);
            params = {{"epsilon", epsilon},
                      {"pivot_count", pivot_count},
                      {"seed", seed},
                      {"workers", workers}};
        } else if (algorithm == "as-brandes") {
            apply_matching();
            rc = kp_as_brandes(graph.ptr, as_c, as_s, cutoff, seed, scores.data());
            std::uint64_t cutoff_value =
                cutoff >= 0 ? static_cast<std::uint64_t>(cutoff) : 0;
            if (cutoff < 0) kp_as_brandes_cutoff(n, as_s, &cutoff_value);
            params = {{"c", as_c}, {"s", as_s}, {"cutoff", cutoff_value},
                      {"seed", seed}};
        } else if (algorithm == "ra-kpath") {
            fill_kpath_defaults(graph.ptr);
            rc = kp_ra_kpath(graph.ptr, kappa, alpha, iterations, seed, workers,
                             scores.data());
            std::uint64_t t = iterations >= 0
                                  ? static_cast<std::uint64_t>(iterations)
                                  : 0;
            if (iterations < 0) kp_ra_kpath_iterations(n, kappa, alpha, &t);
            params = {{"kappa", kappa},
                      {"alpha", alpha},
                      {"iterations", t},
                      {"seed", seed},
                      {"workers", workers}};
        } else if (algorithm == "kpath-oracle") {
            fill_kpath_defaults(graph.ptr);
            rc = kp_exact_kpath(graph.ptr, kappa, max_vertices, scores.data());
            params = {{"kappa", kappa}, {"max_vertices", max_vertices}};
        } else {
            std::cerr << "kpath: unknown algorithm '" << algorithm << "'\n";
            return exit_usage;
        }
        const double elapsed = seconds_since(started);
        if (rc != KP_OK) return fail(rc, "running " + algorithm);

        StringGuard csv;
        if (const kp_status crc = kp_scores_csv(graph.ptr, scores.data(), &csv.ptr);
            crc != KP_OK) {
            return fail(crc, "rendering scores");
        }
        bool ok = true;
        emit(out_path, csv.ptr, ok);
        if (id_map_path) {
            StringGuard map;
            if (kp_graph_id_map_csv(graph.ptr, &map.ptr) == KP_OK) {
                ok = ok && write_file(*id_map_path, map.ptr);
            }
        }

        json manifest = {{"subcommand", "compute"},
                         {"algorithm", algorithm},
                         {"input", input.describe()},
                         {"graph", graph_summary(graph.ptr)},
                         {"params", params},
                         {"seed", seed},
                         {"workers", workers},
                         {"wall_clock_seconds", elapsed}};
        if (out_path) manifest["outputs"] = {{"scores_csv", *out_path}};
        ok = ok && write_manifest(manifest_path, out_path, std::move(manifest));
        return ok ? exit_ok : exit_input;
    }

    void fill_kpath_defaults(const kp_graph* g) {
        std::uint32_t default_kappa = 1;
        double default_alpha = 0.2;
        kp_default_kpath_params(g, &default_kappa, &default_alpha);
        if (kappa == 0) kappa = default_kappa;
        if (std::isnan(alpha)) alpha = default_alpha;
    }

    void apply_matching() {
        if (std::isnan(match_speedup)) return;
        double matched_epsilon = epsilon, matched_s = as_s;
        int clamped = 0;
        if (kp_match_speedup_params(match_speedup, graph_n, &matched_epsilon,
                                    &matched_s, &clamped) == KP_OK) {
            epsilon = matched_epsilon;
            as_s = matched_s;
            if (clamped) {
                std::cerr << "kpath: warning: matched epsilon clamped to 1\n";
            }
        }
    }

    std::uint64_t graph_n = 0;
};

// ---- main -----------------------------------------------------------------

int run_compute(ComputeCommand& cmd) { return cmd.run(); }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"kappa-path and betweenness centrality toolkit"};
    app.require_subcommand(1);

    // compute
    ComputeCommand compute;
    auto* compute_cmd = app.add_subcommand(
        "compute", "compute centrality scores for a graph file");
    compute.input.attach(*compute_cmd, true);
    compute_cmd
        ->add_option("--algo", compute.algorithm, "algorithm to run")
        ->required()
        ->check(CLI::IsMember({"brandes", "kbetweenness", "ra-brandes",
                               "as-brandes", "ra-kpath", "kpath-oracle"}));
    std::string compute_out, compute_manifest, compute_idmap;
    compute_cmd->add_option("--out", compute_out, "scores CSV path (default stdout)");
    compute_cmd->add_option("--manifest", compute_manifest, "manifest JSON path");
    compute_cmd->add_option("--id-map", compute_idmap, "id mapping CSV path");
    compute_cmd->add_option("--seed", compute.seed, "RNG seed")
        ->capture_default_str();
    compute_cmd->add_option("--workers", compute.workers, "worker threads")
        ->capture_default_str();
    compute_cmd->add_option("--kappa", compute.kappa,
                            "walk length bound (0 = round(ln(n+m)))");
    compute_cmd->add_option("--alpha", compute.alpha,
                            "accuracy/speed tradeoff (default 0.2)");
    compute_cmd->add_option("--iterations", compute.iterations,
                            "override the walk count (-1 = derived)");
    compute_cmd->add_option("--max-vertices", compute.max_vertices,
                            "enumeration guard for kpath-oracle")
        ->capture_default_str();
    compute_cmd->add_option("--bound", compute.bound,
                            "distance bound for kbetweenness");
    compute_cmd->add_option("--epsilon", compute.epsilon,
                            "ra-brandes accuracy parameter")
        ->capture_default_str();
    compute_cmd->add_option("--pivots", compute.pivots,
                            "override the pivot count (-1 = derived)");
    compute_cmd->add_option("--as-c", compute.as_c, "as-brandes threshold multiplier")
        ->capture_default_str();
    compute_cmd->add_option("--as-s", compute.as_s, "as-brandes speed parameter")
        ->capture_default_str();
    compute_cmd->add_option("--cutoff", compute.cutoff,
                            "override the as-brandes cutoff (-1 = derived)");
    compute_cmd->add_option(
        "--match-speedup", compute.match_speedup,
        "derive epsilon and s from a previously measured ra-kpath speedup");

    // generate
    GenerateOptions generate;
    std::uint64_t generate_seed = 0;
    std::string generate_out, generate_manifest, generate_stats;
    auto* generate_cmd =
        app.add_subcommand("generate", "generate a synthetic social graph");
    generate_cmd->add_option("--n", generate.n, "vertex count")->required();
    generate_cmd
        ->add_option("--edges-per-vertex", generate.edges_per_vertex,
                     "edges attached per new vertex")
        ->capture_default_str();
    generate_cmd
        ->add_option("--triad", generate.triad_probability,
                     "triangle-closing probability")
        ->capture_default_str();
    generate_cmd->add_option("--seed", generate_seed, "RNG seed")
        ->capture_default_str();
    generate_cmd->add_option("--out", generate_out,
                             "edge list output path (default stdout)");
    generate_cmd->add_option("--stats", generate_stats, "graph stats JSON path");
    generate_cmd->add_option("--manifest", generate_manifest, "manifest JSON path");

    // compare
    InputOptions compare_input;
    std::string compare_algos = "ra-kpath,ra-brandes,as-brandes";
    std::string compare_generate_spec, compare_out, compare_manifest;
    std::string compare_overlap_csv, compare_correlation_csv;
    std::vector<double> compare_top;
    unsigned compare_reps = 10;
    std::uint64_t compare_seed = 0;
    std::uint64_t compare_gen_seed = 0;
    int compare_workers = 1;
    double compare_budget = 0.0;
    ComputeCommand compare_params; // reuse the parameter fields
    auto* compare_cmd = app.add_subcommand(
        "compare", "compare approximations against exact betweenness");
    compare_input.attach(*compare_cmd, false);
    compare_cmd->add_option("--algos", compare_algos,
                            "comma-separated algorithm list")
        ->capture_default_str();
    compare_cmd->add_option("--generate", compare_generate_spec,
                            "generate the input graph: '1000' or 'n=1000,m=2,p=0.6'");
    compare_cmd->add_option("--gen-seed", compare_gen_seed,
                            "seed for --generate")
        ->capture_default_str();
    compare_cmd->add_option("--reps", compare_reps, "repetitions per algorithm")
        ->capture_default_str();
    compare_cmd->add_option("--seed", compare_seed, "base RNG seed")
        ->capture_default_str();
    compare_cmd->add_option("--workers", compare_workers, "worker threads")
        ->capture_default_str();
    compare_cmd->add_option("--kappa", compare_params.kappa,
                            "walk length bound (0 = round(ln(n+m)))");
    compare_cmd->add_option("--alpha", compare_params.alpha,
                            "accuracy/speed tradeoff (default 0.2)");
    compare_cmd->add_option("--epsilon", compare_params.epsilon,
                            "pin ra-brandes epsilon instead of speedup matching");
    compare_cmd->add_option("--as-c", compare_params.as_c,
                            "as-brandes threshold multiplier");
    compare_cmd->add_option("--as-s", compare_params.as_s,
                            "pin as-brandes s instead of speedup matching");
    compare_cmd->add_option("--bound", compare_params.bound,
                            "distance bound for kbetweenness");
    compare_cmd->add_option("--top", compare_top,
                            "top-N%% levels (default 1 5 10)");
    compare_cmd->add_option("--budget", compare_budget,
                            "time budget in seconds (0 = unlimited)");
    compare_cmd->add_option("--out", compare_out, "report JSON path");
    compare_cmd->add_option("--overlap-csv", compare_overlap_csv,
                            "aggregate overlap table path");
    compare_cmd->add_option("--correlation-csv", compare_correlation_csv,
                            "aggregate correlation/speedup table path");
    compare_cmd->add_option("--manifest", compare_manifest, "manifest JSON path");
    bool compare_epsilon_set = false, compare_as_s_set = false,
         compare_as_c_set = false, compare_bound_set = false,
         compare_alpha_set = false;

    // oracle
    ComputeCommand oracle;
    auto* oracle_cmd = app.add_subcommand(
        "oracle", "exact kappa-path centrality by exhaustive enumeration");
    oracle.input.attach(*oracle_cmd, true);
    oracle_cmd->add_option("--kappa", oracle.kappa, "walk length bound")
        ->required();
    std::string oracle_out, oracle_manifest;
    oracle_cmd->add_option("--out", oracle_out, "scores CSV path (default stdout)");
    oracle_cmd->add_option("--manifest", oracle_manifest, "manifest JSON path");
    oracle_cmd
        ->add_option("--max-vertices", oracle.max_vertices, "enumeration guard")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_ok : exit_usage;
    }

    if (compute_cmd->parsed()) {
        if (!compute_out.empty()) compute.out_path = compute_out;
        if (!compute_manifest.empty()) compute.manifest_path = compute_manifest;
        if (!compute_idmap.empty()) compute.id_map_path = compute_idmap;
        return run_compute(compute);
    }

    if (generate_cmd->parsed()) {
        GraphGuard graph;
        const auto started = std::chrono::steady_clock::now();
        if (const kp_status rc = kp_graph_generate(
                generate.n, generate.edges_per_vertex,
                generate.triad_probability, generate_seed, &graph.ptr);
            rc != KP_OK) {
            return fail(rc, "generating graph");
        }
        const double elapsed = seconds_since(started);
        StringGuard text;
        if (const kp_status rc = kp_graph_write_edge_list(graph.ptr, &text.ptr);
            rc != KP_OK) {
            return fail(rc, "serializing graph");
        }
        bool ok = true;
        const std::optional<std::string> out =
            generate_out.empty() ? std::nullopt
                                 : std::optional<std::string>(generate_out);
        emit(out, text.ptr, ok);
        if (!generate_stats.empty()) {
            StringGuard stats;
            if (kp_graph_stats_json(graph.ptr, &stats.ptr) == KP_OK) {
                ok = ok && write_file(generate_stats, std::string(stats.ptr) + "\n");
            }
        }
        json manifest = {{"subcommand", "generate"},
                         {"generator", generate.describe(generate_seed)},
                         {"graph", graph_summary(graph.ptr)},
                         {"seed", generate_seed},
                         {"wall_clock_seconds", elapsed}};
        if (out) manifest["outputs"] = {{"edge_list", *out}};
        ok = ok && write_manifest(
                       generate_manifest.empty()
                           ? std::nullopt
                           : std::optional<std::string>(generate_manifest),
                       out, std::move(manifest));
        return ok ? exit_ok : exit_input;
    }

    if (compare_cmd->parsed()) {
        compare_epsilon_set = compare_cmd->count("--epsilon") > 0;
        compare_as_s_set = compare_cmd->count("--as-s") > 0;
        compare_as_c_set = compare_cmd->count("--as-c") > 0;
        compare_bound_set = compare_cmd->count("--bound") > 0;
        compare_alpha_set = compare_cmd->count("--alpha") > 0;
        const bool have_input = compare_cmd->count("--in") > 0;
        const bool have_generate = !compare_generate_spec.empty();
        if (have_input == have_generate) {
            std::cerr << "kpath: compare needs exactly one of --in or --generate\n";
            return exit_usage;
        }

        GraphGuard graph;
        json source;
        std::string label = "graph";
        if (have_generate) {
            if (!generate.parse_spec(compare_generate_spec)) {
                std::cerr << "kpath: cannot parse --generate '"
                          << compare_generate_spec << "'\n";
                return exit_usage;
            }
            if (const kp_status rc = kp_graph_generate(
                    generate.n, generate.edges_per_vertex,
                    generate.triad_probability, compare_gen_seed, &graph.ptr);
                rc != KP_OK) {
                return fail(rc, "generating graph");
            }
            source = {{"generator", generate.describe(compare_gen_seed)}};
            label = "synth-" + std::to_string(generate.n);
        } else {
            if (const kp_status rc = compare_input.load(&graph.ptr); rc != KP_OK) {
                return fail(rc, "loading '" + compare_input.path + "'");
            }
            source = {{"input", compare_input.describe()}};
            const std::size_t slash = compare_input.path.find_last_of('/');
            label = slash == std::string::npos
                        ? compare_input.path
                        : compare_input.path.substr(slash + 1);
        }

        kp_compare_options options;
        kp_compare_options_init(&options);
        options.algorithms = compare_algos.c_str();
        options.repetitions = compare_reps;
        options.seed = compare_seed;
        options.workers = compare_workers;
        options.kappa = compare_params.kappa;
        if (compare_alpha_set) options.alpha = compare_params.alpha;
        if (compare_epsilon_set) options.epsilon = compare_params.epsilon;
        if (compare_as_c_set) options.as_c = compare_params.as_c;
        if (compare_as_s_set) options.as_s = compare_params.as_s;
        if (compare_bound_set) options.distance_bound = compare_params.bound;
        options.time_budget_seconds = compare_budget;
        options.network_label = label.c_str();
        if (!compare_top.empty()) {
            options.top_percents = compare_top.data();
            options.top_percent_count = compare_top.size();
        }

        StringGuard report, overlap, correlation;
        const auto started = std::chrono::steady_clock::now();
        const kp_status rc =
            kp_compare_run(graph.ptr, &options, &report.ptr, &overlap.ptr,
                           &correlation.ptr);
        const double elapsed = seconds_since(started);
        if (rc != KP_OK && rc != KP_ERROR_BUDGET_EXCEEDED) {
            return fail(rc, "running comparison");
        }

        bool ok = true;
        const std::optional<std::string> out =
            compare_out.empty() ? std::nullopt
                                : std::optional<std::string>(compare_out);
        emit(out, std::string(report.ptr) + "\n", ok);
        if (!compare_overlap_csv.empty()) {
            ok = ok && write_file(compare_overlap_csv, overlap.ptr);
        }
        if (!compare_correlation_csv.empty()) {
            ok = ok && write_file(compare_correlation_csv, correlation.ptr);
        }

        json manifest = {{"subcommand", "compare"},
                         {"source", source},
                         {"graph", graph_summary(graph.ptr)},
                         {"algorithms", compare_algos},
                         {"repetitions", compare_reps},
                         {"seed", compare_seed},
                         {"workers", compare_workers},
                         {"time_budget_seconds", compare_budget},
                         {"wall_clock_seconds", elapsed},
                         {"complete", rc == KP_OK}};
        ok = ok && write_manifest(
                       compare_manifest.empty()
                           ? std::nullopt
                           : std::optional<std::string>(compare_manifest),
                       out, std::move(manifest));
        if (rc == KP_ERROR_BUDGET_EXCEEDED) {
            std::cerr << "kpath: time budget exceeded; report is partial\n";
            return exit_budget;
        }
        return ok ? exit_ok : exit_input;
    }

    if (oracle_cmd->parsed()) {
        oracle.algorithm = "kpath-oracle";
        if (!oracle_out.empty()) oracle.out_path = oracle_out;
        if (!oracle_manifest.empty()) oracle.manifest_path = oracle_manifest;
        return run_compute(oracle);
    }

    return exit_usage;
}
