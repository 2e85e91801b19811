#include "doctest.h"
#include "fixtures.hpp"
#include "rulek/graph.hpp"

using namespace rulek;
using fixtures::graph_of;

namespace {

std::vector<VertexId> nbrs(const UnitDiskGraph& g, VertexId v) {
    return {g.neighbors(v).begin(), g.neighbors(v).end()};
}

void check_matches_brute_force(const UnitDiskGraph& g) {
    const auto expected = fixtures::brute_adjacency(g.instance());
    REQUIRE(g.size() == expected.size());
    for (VertexId v = 1; v <= g.size(); ++v) CHECK(nbrs(g, v) == expected[v - 1]);
}

}  // namespace

TEST_CASE("build_graph small fixtures") {
    const auto one = fixtures::singleton();
    CHECK(one.size() == 1);
    CHECK(one.edge_count() == 0);

    const auto pair = graph_of({{0, 0}, {1, 0}});
    CHECK(pair.edge_count() == 1);
    CHECK(pair.adjacent(1, 2));

    const auto path = fixtures::path3();
    CHECK(nbrs(path, 1) == std::vector<VertexId>{2});
    CHECK(nbrs(path, 2) == std::vector<VertexId>{1, 3});
    CHECK(nbrs(path, 3) == std::vector<VertexId>{2});
}

TEST_CASE("build_graph rejects invalid instances") {
    CHECK_THROWS_AS((void)build_graph(Instance{10, {{0, 0}, {10.5, 1}}}), std::invalid_argument);
    CHECK_THROWS_AS((void)build_graph(Instance{10, {}}), std::invalid_argument);
    CHECK_THROWS_AS((void)build_graph(Instance{0.9, {{0.1, 0.1}}}), std::invalid_argument);
    CHECK_THROWS_AS((void)build_graph(Instance{10, {{NAN, 1}}}), std::invalid_argument);
}

TEST_CASE("build_graph equals all-pairs adjacency on random instances") {
    Rng rng(99);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto n = static_cast<std::size_t>(1 + rng.index(50));
        const double side = rng.uniform(1.01, 8.0);
        check_matches_brute_force(fixtures::random_graph(rng, n, side));
    }
}

TEST_CASE("closed threshold on the integer lattice, including the far boundary") {
    Instance inst{3.0, {}};
    for (int y = 0; y <= 3; ++y)
        for (int x = 0; x <= 3; ++x) inst.points.push_back({double(x), double(y)});
    inst.points.push_back({1.5, 3.0});
    inst.points.push_back({3.0, 2.0});  // duplicate of lattice point (3, 2)
    const auto g = build_graph(inst);
    check_matches_brute_force(g);
    CHECK(g.adjacent(1, 2));     // (0,0)-(1,0) at distance exactly 1
    CHECK(!g.adjacent(1, 6));    // (0,0)-(1,1) at sqrt(2)
    CHECK(g.adjacent(12, 18));   // duplicates are adjacent
    for (VertexId v = 1; v <= g.size(); ++v)
        for (VertexId u : g.neighbors(v)) CHECK(g.adjacent(u, v));
}

TEST_CASE("closed_neighborhood") {
    const auto path = fixtures::path3();
    CHECK(closed_neighborhood(path, 2) == VertexSet{1, 2, 3});
    CHECK(closed_neighborhood(path, 1) == VertexSet{1, 2});
    CHECK(closed_neighborhood(fixtures::singleton(), 1) == VertexSet{1});
    CHECK_THROWS_AS((void)closed_neighborhood(path, 0), std::out_of_range);
    CHECK_THROWS_AS((void)closed_neighborhood(path, 4), std::out_of_range);
}

TEST_CASE("component_count") {
    const auto path = fixtures::path3();
    CHECK(component_count(path, VertexSet{1, 2, 3}) == 1);
    CHECK(component_count(path, VertexSet{1, 3}) == 2);
    CHECK(component_count(path, VertexSet{}) == 0);
    CHECK(component_count(fixtures::two_isolated()) == 2);
    CHECK_THROWS_AS((void)component_count(path, VertexSet{7}), std::out_of_range);
}

TEST_CASE("is_dominating and is_cds") {
    const auto path = fixtures::path3();
    CHECK(is_dominating(path, VertexSet{2}));
    CHECK_FALSE(is_dominating(path, VertexSet{1}));
    CHECK(is_dominating(path, VertexSet{1, 2, 3}));

    CHECK(is_cds(path, VertexSet{2}));
    CHECK(is_dominating(path, VertexSet{1, 3}));
    CHECK_FALSE(is_cds(path, VertexSet{1, 3}));
    CHECK(is_cds(fixtures::two_isolated(), VertexSet{1, 2}));
    CHECK_FALSE(is_cds(fixtures::two_isolated(), VertexSet{1}));
    CHECK_THROWS_AS((void)is_cds(path, VertexSet{0}), std::out_of_range);
}

TEST_CASE("the full vertex set is always a CDS") {
    Rng rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        const auto g = fixtures::random_graph(rng, 1 + rng.index(80), rng.uniform(1.5, 10));
        CHECK(is_cds(g, all_vertices(g)));
    }
}
