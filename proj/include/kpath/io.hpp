#pragma once

#include "kpath/graph.hpp"

#include <iosfwd>
#include <string>

namespace kpath {

struct LoadResult {
    Graph graph;
    std::size_t duplicate_edges_dropped = 0;
    std::size_t self_loops_dropped = 0;
};

/// SNAP-style edge list: one edge per line, whitespace-separated external
/// ids, '#' starts a comment line. `weighted` selects the 3-token `u v w`
/// form; `force_unit_weights` parses the weight column but stores 1.0
/// everywhere (the unweighted treatment of a weighted dataset). Malformed
/// lines raise ParseError with the line number. Empty input is an empty
/// graph, not an error.
LoadResult load_snap_edge_list(std::istream& in, GraphKind kind, bool weighted,
                               bool force_unit_weights = false);

/// Minimal Pajek subset: `*Vertices N`, then one `*Edges` (undirected) or
/// `*Arcs` (directed) section of `u v [w]` lines with 1-based ids. Vertices
/// listed in the header but absent from edges exist as isolated vertices.
/// A weight column on any edge line marks the graph weighted.
LoadResult load_pajek(std::istream& in, bool force_unit_weights = false);

/// Edge-list serialization; reloading the output with matching flags yields
/// an identical Graph. Undirected edges are written once, smaller endpoint
/// first; a weight column is present iff the graph is weighted.
std::string write_snap_edge_list(const Graph& g);

/// `external_id,score` rows (header included) in ascending external id.
std::string scores_csv(const Graph& g, std::span<const double> scores,
                       const std::string& score_column = "score");

/// `external_id,vertex_index` rows (header included).
std::string id_map_csv(const Graph& g);

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double value);

} // namespace kpath
