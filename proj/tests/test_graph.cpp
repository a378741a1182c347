#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "netmorph/generators.hpp"
#include "netmorph/graph.hpp"
#include "netmorph/rng.hpp"

using namespace netmorph;

namespace {

LoadResult load_string(const std::string& text, bool directed) {
    std::istringstream in(text);
    return load_edge_list(in, directed);
}

} // namespace

TEST_CASE("load_edge_list basics") {
    SUBCASE("minimal path") {
        auto r = load_string("0 1\n1 2", false);
        CHECK(r.graph.node_count() == 3);
        CHECK(r.graph.edge_count() == 2);
        CHECK(r.report.edge_rows == 2);
    }
    SUBCASE("self-loop and duplicate collapsed") {
        auto r = load_string("0 0\n0 1\n0 1", false);
        CHECK(r.graph.node_count() == 2);
        CHECK(r.graph.edge_count() == 1);
        CHECK(r.report.dropped_self_loops == 1);
        CHECK(r.report.dropped_duplicates == 1);
    }
    SUBCASE("empty input is a valid empty graph") {
        auto r = load_string("", false);
        CHECK(r.graph.node_count() == 0);
        CHECK(r.graph.edge_count() == 0);
    }
    SUBCASE("reciprocal pair collapses when undirected") {
        auto r = load_string("0 1\n1 0", false);
        CHECK(r.graph.edge_count() == 1);
        CHECK(r.report.dropped_duplicates == 1);
    }
    SUBCASE("reciprocal pair kept when directed") {
        auto r = load_string("0 1\n1 0", true);
        CHECK(r.graph.edge_count() == 2);
    }
    SUBCASE("comments, blank lines, CRLF") {
        auto r = load_string("# Nodes: 5242 Edges: 28980\r\n\r\n3 4\r\n4 5\n", false);
        CHECK(r.graph.node_count() == 3);
        CHECK(r.graph.edge_count() == 2);
        CHECK(r.report.header_nodes == 5242);
        CHECK(r.report.header_edges == 28980);
    }
    SUBCASE("external ids are remapped densely, first-seen order") {
        auto r = load_string("100 7\n7 9000000000", false);
        CHECK(r.graph.node_count() == 3);
        CHECK(r.ids.external(0) == 100);
        CHECK(r.ids.external(1) == 7);
        CHECK(r.ids.external(2) == 9000000000LL);
        REQUIRE(r.ids.find(7) != nullptr);
        CHECK(*r.ids.find(7) == 1);
    }
}

TEST_CASE("load_edge_list errors name the line") {
    auto message_of = [](const std::string& text) {
        try {
            load_string(text, false);
        } catch (const parse_error& e) {
            return std::string(e.what());
        }
        return std::string("<no error>");
    };
    CHECK(message_of("0 1\n0 x").find("line 2") != std::string::npos);
    CHECK(message_of("0 1 2").find("line 1") != std::string::npos);
    CHECK_THROWS_AS(load_string("0", false), parse_error);
}

TEST_CASE("load is deterministic") {
    const std::string text = "5 1\n1 3\n3 5\n2 4\n";
    auto a = load_string(text, false);
    auto b = load_string(text, false);
    CHECK(a.graph == b.graph);
}

TEST_CASE("degree") {
    auto path = load_string("0 1\n1 2", false);
    CHECK(degree(path.graph, 1) == 2);
    CHECK(degree(path.graph, 0) == 1);

    auto empty = load_string("", false);
    CHECK_THROWS_AS(degree(empty.graph, 0), std::invalid_argument);

    auto arc = load_string("0 1", true);
    CHECK(degree(arc.graph, 0, DegreeMode::Out) == 1);
    CHECK(degree(arc.graph, 0, DegreeMode::In) == 0);
    CHECK(degree(arc.graph, 1, DegreeMode::In) == 1);
    CHECK(degree(arc.graph, 0, DegreeMode::Total) == 1);
}

TEST_CASE("degree sums") {
    GenSpec spec;
    spec.model = Model::ER;
    spec.n = 200;
    spec.p = 0.05;
    spec.seed = 11;
    Graph g = gen_erdos_renyi(spec).graph;
    std::size_t sum = 0;
    for (node_id v = 0; v < g.node_count(); ++v)
        sum += degree(g, v);
    CHECK(sum == 2 * g.edge_count());

    auto arcs = load_string("0 1\n0 2\n2 1\n1 0", true);
    std::size_t out_sum = 0;
    for (node_id v = 0; v < arcs.graph.node_count(); ++v)
        out_sum += degree(arcs.graph, v, DegreeMode::Out);
    CHECK(out_sum == arcs.graph.edge_count());
}

TEST_CASE("undirected_view") {
    SUBCASE("single arc becomes one edge") {
        auto r = load_string("0 1", true);
        Graph u = undirected_view(r.graph);
        CHECK_FALSE(u.directed());
        CHECK(u.edge_count() == 1);
        CHECK(u.node_count() == 2);
    }
    SUBCASE("reciprocal arcs collapse") {
        auto r = load_string("0 1\n1 0", true);
        CHECK(undirected_view(r.graph).edge_count() == 1);
    }
    SUBCASE("idempotent on undirected input") {
        auto r = load_string("0 1\n1 2\n2 0", false);
        CHECK(undirected_view(r.graph) == r.graph);
    }
    SUBCASE("never grows edges, never shrinks nodes") {
        auto r = load_string("0 1\n1 0\n1 2\n3 1\n4 4", true);
        Graph u = undirected_view(r.graph);
        CHECK(u.edge_count() <= r.graph.edge_count());
        CHECK(u.node_count() == r.graph.node_count());
    }
}

TEST_CASE("bfs_distances") {
    SUBCASE("path") {
        auto r = load_string("0 1\n1 2", false);
        auto d = bfs_distances(r.graph, 0);
        CHECK(d == std::vector<node_id>{0, 1, 2});
    }
    SUBCASE("unreachable marked") {
        auto r = load_string("0 1\n2 3", false);
        auto d = bfs_distances(r.graph, 0);
        CHECK(d[0] == 0);
        CHECK(d[1] == 1);
        CHECK(d[2] == kUnreachable);
        CHECK(d[3] == kUnreachable);
    }
    SUBCASE("5-cycle distances from any node are {0,1,1,2,2}") {
        auto r = load_string("0 1\n1 2\n2 3\n3 4\n4 0", false);
        for (node_id s = 0; s < 5; ++s) {
            auto d = bfs_distances(r.graph, s);
            std::sort(d.begin(), d.end());
            CHECK(d == std::vector<node_id>{0, 1, 1, 2, 2});
        }
    }
    SUBCASE("source out of range") {
        auto r = load_string("0 1", false);
        CHECK_THROWS_AS(bfs_distances(r.graph, 9), std::invalid_argument);
    }
    SUBCASE("directed out vs undirected orientation") {
        auto r = load_string("0 1\n2 1", true);
        auto out = bfs_distances(r.graph, 0, Orientation::Out);
        CHECK(out[2] == kUnreachable);
        auto und = bfs_distances(r.graph, 0, Orientation::Undirected);
        CHECK(und[2] == 2);
    }
}

TEST_CASE("bfs triangle property on a random graph") {
    GenSpec spec;
    spec.model = Model::ER;
    spec.n = 120;
    spec.p = 0.04;
    spec.seed = 3;
    Graph g = gen_erdos_renyi(spec).graph;
    auto d = bfs_distances(g, 0);
    for (const auto& [u, v] : g.edges()) {
        if (d[u] == kUnreachable || d[v] == kUnreachable) {
            CHECK(d[u] == d[v]); // an edge cannot straddle the reachable set
            continue;
        }
        long long gap = static_cast<long long>(d[u]) - static_cast<long long>(d[v]);
        CHECK(std::abs(gap) <= 1);
    }
}

TEST_CASE("canonical edge list serialization") {
    auto r = load_string("2 1\n0 2\n1 0", false);
    std::ostringstream out;
    write_edge_list(r.graph, out);
    CHECK(out.str() == "0 1\n0 2\n1 2\n");
}
