#include "kpath/errors.hpp"
#include "kpath/graph.hpp"
#include "kpath/io.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <sstream>

using namespace kpath;

namespace {

LoadResult load_snap(const std::string& text, GraphKind kind, bool weighted,
                     bool force_unit = false) {
    std::istringstream in(text);
    return load_snap_edge_list(in, kind, weighted, force_unit);
}

LoadResult load_pajek_text(const std::string& text, bool force_unit = false) {
    std::istringstream in(text);
    return load_pajek(in, force_unit);
}

} // namespace

TEST_CASE("snap loader: two-edge path") {
    const auto r = load_snap("0 1\n1 2\n", GraphKind::undirected, false);
    CHECK(r.graph.vertex_count() == 3);
    CHECK(r.graph.edge_count() == 2);
    CHECK(r.graph.neighbors(1).size() == 2);
    CHECK_FALSE(r.graph.weighted());
}

TEST_CASE("snap loader: comments and id remap") {
    const auto r = load_snap("# c\n5 9 2.5\n", GraphKind::directed, true);
    CHECK(r.graph.vertex_count() == 2);
    CHECK(r.graph.edge_count() == 1);
    CHECK(r.graph.external_id(0) == 5);
    CHECK(r.graph.external_id(1) == 9);
    REQUIRE(r.graph.neighbors(0).size() == 1);
    CHECK(r.graph.neighbors(0)[0].id == 1);
    CHECK(r.graph.neighbors(0)[0].weight == 2.5);
    CHECK(r.graph.neighbors(1).empty());
}

TEST_CASE("snap loader: duplicate collapse keeps first weight") {
    const auto r = load_snap("0 1\n0 1\n1 0\n", GraphKind::undirected, false);
    CHECK(r.graph.vertex_count() == 2);
    CHECK(r.graph.edge_count() == 1);
    CHECK(r.duplicate_edges_dropped == 2);

    const auto w = load_snap("0 1 3.0\n1 0 9.0\n", GraphKind::undirected, true);
    CHECK(w.graph.neighbors(0)[0].weight == 3.0);
    CHECK(w.duplicate_edges_dropped == 1);
}

TEST_CASE("snap loader: directed reverse edges are distinct") {
    const auto r = load_snap("0 1\n1 0\n", GraphKind::directed, false);
    CHECK(r.graph.edge_count() == 2);
    CHECK(r.duplicate_edges_dropped == 0);
}

TEST_CASE("snap loader: self loops dropped with count") {
    const auto r = load_snap("0 0\n0 1\n2 2\n", GraphKind::undirected, false);
    CHECK(r.graph.edge_count() == 1);
    CHECK(r.self_loops_dropped == 2);
    CHECK(r.graph.vertex_count() == 3); // the loop vertices still exist
}

TEST_CASE("snap loader: empty input is an empty graph") {
    const auto r = load_snap("", GraphKind::undirected, false);
    CHECK(r.graph.vertex_count() == 0);
    CHECK(r.graph.edge_count() == 0);
}

TEST_CASE("snap loader: malformed lines carry line numbers") {
    CHECK_THROWS_WITH_AS(load_snap("0 1\n0\n", GraphKind::undirected, false),
                         doctest::Contains("line 2"), ParseError);
    CHECK_THROWS_AS(load_snap("0 x\n", GraphKind::undirected, false), ParseError);
    CHECK_THROWS_AS(load_snap("0 1 -2\n", GraphKind::undirected, true), ParseError);
    CHECK_THROWS_AS(load_snap("0 1 0\n", GraphKind::undirected, true), ParseError);
    CHECK_THROWS_AS(load_snap("0 1 nan\n", GraphKind::undirected, true), ParseError);
    CHECK_THROWS_AS(load_snap("-1 2\n", GraphKind::undirected, false), ParseError);
    CHECK_THROWS_AS(load_snap("0 1 2.5\n", GraphKind::undirected, false), ParseError);
}

TEST_CASE("snap loader: force_unit_weights") {
    const auto r = load_snap("0 1 4.5\n", GraphKind::undirected, true, true);
    CHECK_FALSE(r.graph.weighted());
    CHECK(r.graph.neighbors(0)[0].weight == 1.0);
}

TEST_CASE("pajek loader: undirected path") {
    const auto r = load_pajek_text("*Vertices 3\n*Edges\n1 2\n2 3\n");
    CHECK(r.graph.vertex_count() == 3);
    CHECK(r.graph.edge_count() == 2);
    CHECK_FALSE(r.graph.directed());
    CHECK_FALSE(r.graph.weighted());
}

TEST_CASE("pajek loader: directed arc with weight") {
    const auto r = load_pajek_text("*Vertices 2\n*Arcs\n1 2 4.0\n");
    CHECK(r.graph.directed());
    CHECK(r.graph.weighted());
    CHECK(r.graph.vertex_count() == 2);
    REQUIRE(r.graph.neighbors(0).size() == 1);
    CHECK(r.graph.neighbors(0)[0].weight == 4.0);
}

TEST_CASE("pajek loader: header vertices without edges are isolated") {
    const auto r = load_pajek_text("*Vertices 4\n*Edges\n1 2\n");
    CHECK(r.graph.vertex_count() == 4);
    CHECK(r.graph.edge_count() == 1);
    CHECK(r.graph.neighbors(2).empty());
    CHECK(r.graph.neighbors(3).empty());
}

TEST_CASE("pajek loader: errors") {
    CHECK_THROWS_AS(load_pajek_text("1 2\n"), ParseError);        // missing header
    CHECK_THROWS_AS(load_pajek_text(""), ParseError);             // empty
    CHECK_THROWS_AS(load_pajek_text("*Vertices 2\n*Edges\n1 3\n"), ParseError);
    CHECK_THROWS_AS(load_pajek_text("*Vertices 2\n*Edges\n0 1\n"), ParseError);
    CHECK_THROWS_AS(load_pajek_text("*Vertices 2\n*Edges\n1 2 -1\n"), ParseError);
    CHECK_THROWS_AS(load_pajek_text("*Vertices 2\n"), ParseError); // no section
}

TEST_CASE("unvisited neighbors") {
    using namespace kpath::testing;
    std::vector<Graph::Neighbor> out;

    const Graph star = star_graph(4); // center 0, leaves 1..4
    std::vector<std::uint8_t> visited(star.vertex_count(), 0);
    visited[1] = 1;
    unvisited_neighbors(star, 0, visited, out);
    REQUIRE(out.size() == 3);
    CHECK(out[0].id == 2);
    CHECK(out[1].id == 3);
    CHECK(out[2].id == 4);

    std::fill(visited.begin(), visited.end(), 1);
    unvisited_neighbors(star, 0, visited, out);
    CHECK(out.empty()); // walk-termination case

    const Graph path = path_graph(3);
    std::vector<std::uint8_t> pv(3, 0);
    pv[0] = 1;
    unvisited_neighbors(path, 1, pv, out);
    REQUIRE(out.size() == 1);
    CHECK(out[0].id == 2);
    CHECK(out[0].weight == 1.0);
}

TEST_CASE("round trip: serializing a loaded graph and reloading is identical") {
    using namespace kpath::testing;
    Rng rng(2024);
    for (int i = 0; i < 40; ++i) {
        const bool directed = rng.below(2) == 1;
        const bool weighted = rng.below(2) == 1;
        const std::size_t n = 2 + rng.below(20);
        const Graph seed_graph = random_graph(
            rng, n, 0.3, directed ? GraphKind::directed : GraphKind::undirected,
            weighted);

        std::istringstream first(write_snap_edge_list(seed_graph));
        const Graph loaded =
            load_snap_edge_list(first, seed_graph.kind(), weighted).graph;

        const std::string text = write_snap_edge_list(loaded);
        std::istringstream second(text);
        const LoadResult reloaded =
            load_snap_edge_list(second, loaded.kind(), weighted);
        CHECK(reloaded.graph == loaded);
        CHECK(write_snap_edge_list(reloaded.graph) == text);
        CHECK(reloaded.duplicate_edges_dropped == 0);
        CHECK(reloaded.self_loops_dropped == 0);
    }
}

TEST_CASE("undirected adjacency is symmetric with equal weights") {
    using namespace kpath::testing;
    Rng rng(7);
    const Graph g = random_graph(rng, 24, 0.25, GraphKind::undirected, true);
    for (vertex_t u = 0; u < g.vertex_count(); ++u) {
        for (const Graph::Neighbor& nb : g.neighbors(u)) {
            bool found = false;
            for (const Graph::Neighbor& back : g.neighbors(nb.id)) {
                if (back.id == u) {
                    CHECK(back.weight == nb.weight);
                    found = true;
                }
            }
            CHECK(found);
        }
    }
}

TEST_CASE("adjacency length sum matches edge count") {
    using namespace kpath::testing;
    Rng rng(11);
    for (int i = 0; i < 10; ++i) {
        const bool directed = i % 2 == 0;
        const Graph g = random_graph(
            rng, 16, 0.3, directed ? GraphKind::directed : GraphKind::undirected,
            false);
        std::size_t total = 0;
        for (vertex_t u = 0; u < g.vertex_count(); ++u) total += g.degree(u);
        CHECK(total == (directed ? g.edge_count() : 2 * g.edge_count()));
    }
}

TEST_CASE("adjacency lists are sorted by neighbor id") {
    using namespace kpath::testing;
    Rng rng(13);
    const Graph g = random_graph(rng, 30, 0.4, GraphKind::directed, true);
    for (vertex_t u = 0; u < g.vertex_count(); ++u) {
        const auto nbrs = g.neighbors(u);
        for (std::size_t i = 1; i < nbrs.size(); ++i) {
            CHECK(nbrs[i - 1].id < nbrs[i].id);
        }
    }
}

TEST_CASE("id map csv") {
    const auto r = load_snap("7 3\n", GraphKind::undirected, false);
    CHECK(id_map_csv(r.graph) == "external_id,vertex_index\n3,0\n7,1\n");
}

TEST_CASE("scores csv is sorted by external id") {
    const auto r = load_snap("0 1\n1 2\n", GraphKind::undirected, false);
    const std::vector<double> scores = {0.0, 2.0, 0.0};
    CHECK(scores_csv(r.graph, scores) ==
          "external_id,score\n0,0\n1,2\n2,0\n");
}
