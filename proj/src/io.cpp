#include "kpath/io.hpp"

#include "kpath/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <sstream>
#include <vector>

namespace kpath {

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) tokens.push_back(tok);
    return tokens;
}

std::int64_t parse_vertex_id(const std::string& tok, std::size_t line_no) {
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw ParseError(line_no, "expected integer vertex id, got '" + tok + "'");
    }
    if (value < 0) {
        throw ParseError(line_no, "vertex id must be non-negative, got '" + tok + "'");
    }
    return value;
}

double parse_weight(const std::string& tok, std::size_t line_no) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw ParseError(line_no, "expected numeric weight, got '" + tok + "'");
    }
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ParseError(line_no, "weight must be positive and finite, got '" + tok + "'");
    }
    return value;
}

bool blank(const std::string& line) {
    return std::all_of(line.begin(), line.end(),
                       [](unsigned char c) { return std::isspace(c); });
}

} // namespace

LoadResult load_snap_edge_list(std::istream& in, GraphKind kind, bool weighted,
                               bool force_unit_weights) {
    GraphBuilder builder(kind, weighted && !force_unit_weights);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line) || line[line.find_first_not_of(" \t")] == '#') continue;
        const auto tokens = split_tokens(line);
        const std::size_t expected = weighted ? 3 : 2;
        if (tokens.size() != expected) {
            throw ParseError(line_no, "expected " + std::to_string(expected) +
                                          " tokens, got " + std::to_string(tokens.size()));
        }
        const std::int64_t u = parse_vertex_id(tokens[0], line_no);
        const std::int64_t v = parse_vertex_id(tokens[1], line_no);
        double w = 1.0;
        if (weighted) {
            w = parse_weight(tokens[2], line_no);
            if (force_unit_weights) w = 1.0;
        }
        builder.add_edge(u, v, w);
    }
    LoadResult result;
    result.graph = builder.build();
    result.duplicate_edges_dropped = builder.duplicate_edges_dropped();
    result.self_loops_dropped = builder.self_loops_dropped();
    return result;
}

LoadResult load_pajek(std::istream& in, bool force_unit_weights) {
    std::string line;
    std::size_t line_no = 0;
    std::int64_t vertex_total = -1;

    // Header. Lines before it must be comments ('%') or blank.
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line) || line[line.find_first_not_of(" \t")] == '%') continue;
        auto tokens = split_tokens(line);
        std::string keyword = tokens.empty() ? "" : tokens[0];
        std::transform(keyword.begin(), keyword.end(), keyword.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        if (keyword != "*vertices" || tokens.size() != 2) {
            throw ParseError(line_no, "expected '*Vertices N' header");
        }
        vertex_total = parse_vertex_id(tokens[1], line_no);
        break;
    }
    if (vertex_total < 0) throw ParseError(line_no + 1, "missing '*Vertices N' header");

    // Scan forward to the edge section, skipping vertex label lines.
    GraphKind kind = GraphKind::undirected;
    bool found_section = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line) || line[line.find_first_not_of(" \t")] == '%') continue;
        if (line[line.find_first_not_of(" \t")] == '*') {
            auto tokens = split_tokens(line);
            std::string keyword = tokens[0];
            std::transform(keyword.begin(), keyword.end(), keyword.begin(),
                           [](unsigned char c) { return std::tolower(c); });
            if (keyword == "*edges") {
                kind = GraphKind::undirected;
            } else if (keyword == "*arcs") {
                kind = GraphKind::directed;
            } else {
                throw ParseError(line_no, "unsupported section '" + tokens[0] + "'");
            }
            found_section = true;
            break;
        }
    }
    if (!found_section) {
        throw ParseError(line_no + 1, "missing '*Edges' or '*Arcs' section");
    }

    struct PajekEdge {
        std::int64_t u, v;
        double w;
        bool has_weight;
    };
    std::vector<PajekEdge> edges;
    bool any_weight = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line) || line[line.find_first_not_of(" \t")] == '%') continue;
        const auto tokens = split_tokens(line);
        if (tokens.size() != 2 && tokens.size() != 3) {
            throw ParseError(line_no, "expected 'u v [w]', got " +
                                          std::to_string(tokens.size()) + " tokens");
        }
        const std::int64_t u = parse_vertex_id(tokens[0], line_no);
        const std::int64_t v = parse_vertex_id(tokens[1], line_no);
        for (std::int64_t id : {u, v}) {
            if (id < 1 || id > vertex_total) {
                throw ParseError(line_no, "vertex id " + std::to_string(id) +
                                              " outside [1, " +
                                              std::to_string(vertex_total) + "]");
            }
        }
        double w = 1.0;
        const bool has_weight = tokens.size() == 3;
        if (has_weight) {
            w = parse_weight(tokens[2], line_no);
            any_weight = true;
        }
        edges.push_back({u, v, w, has_weight});
    }

    const bool weighted = any_weight && !force_unit_weights;
    GraphBuilder builder(kind, weighted);
    for (std::int64_t id = 1; id <= vertex_total; ++id) builder.ensure_vertex(id);
    for (const PajekEdge& e : edges) {
        builder.add_edge(e.u, e.v, weighted ? e.w : 1.0);
    }
    LoadResult result;
    result.graph = builder.build();
    result.duplicate_edges_dropped = builder.duplicate_edges_dropped();
    result.self_loops_dropped = builder.self_loops_dropped();
    return result;
}

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string write_snap_edge_list(const Graph& g) {
    std::string out;
    const bool undirected = !g.directed();
    for (vertex_t u = 0; u < g.vertex_count(); ++u) {
        for (const Graph::Neighbor& nb : g.neighbors(u)) {
            if (undirected && nb.id < u) continue;
            out += std::to_string(g.external_id(u));
            out += ' ';
            out += std::to_string(g.external_id(nb.id));
            if (g.weighted()) {
                out += ' ';
                out += format_double(nb.weight);
            }
            out += '\n';
        }
    }
    return out;
}

std::string scores_csv(const Graph& g, std::span<const double> scores,
                       const std::string& score_column) {
    std::string out = "external_id," + score_column + "\n";
    for (vertex_t u = 0; u < g.vertex_count(); ++u) {
        out += std::to_string(g.external_id(u));
        out += ',';
        out += format_double(scores[u]);
        out += '\n';
    }
    return out;
}

std::string id_map_csv(const Graph& g) {
    std::string out = "external_id,vertex_index\n";
    for (vertex_t u = 0; u < g.vertex_count(); ++u) {
        out += std::to_string(g.external_id(u));
        out += ',';
        out += std::to_string(u);
        out += '\n';
    }
    return out;
}

} // namespace kpath
