#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "rulek/rules.hpp"

using namespace rulek;

namespace {

bool subset_of(const VertexSet& a, const VertexSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

TEST_CASE("rule_k fixtures") {
    const auto one = rule_k(fixtures::singleton(), 3);
    CHECK(one.members == VertexSet{1});
    CHECK(one.size == 1);
    CHECK(one.excluded_count == 0);

    const auto k4 = rule_k(fixtures::k4_cluster(), 3);
    CHECK(k4.members == VertexSet{2, 3, 4});
    CHECK(k4.size + k4.excluded_count == 4);
    CHECK(k4.verified_dominating);
    CHECK(k4.verified_component_preserving);

    CHECK(rule_k(fixtures::path3(), 3).members == VertexSet{1, 2, 3});
    CHECK_THROWS_AS((void)rule_k(fixtures::path3(), 0), std::invalid_argument);
}

TEST_CASE("exactly-k versus at-most-k") {
    // In K4 with k = 1, vertex i is covered by any single higher neighbor.
    CHECK(rule_k(fixtures::k4_cluster(), 1).members == VertexSet{4});
    // With exactly 3 required, vertices 2 and 3 lack enough higher neighbors,
    // while the at-most reading lets a single neighbor suffice.
    RuleKOptions at_most;
    at_most.at_most_k = true;
    CHECK(rule_k(fixtures::k4_cluster(), 3, at_most).members == VertexSet{4});
}

TEST_CASE("rule_k_restricted") {
    const auto k4 = fixtures::k4_cluster();
    CHECK(rule_k_restricted(k4, 3, all_vertices(k4)).members == rule_k(k4, 3).members);
    const auto none = rule_k_restricted(k4, 3, VertexSet{});
    CHECK(none.members.empty());
    CHECK(none.excluded_count == 4);
    CHECK(rule_k_restricted(k4, 3, VertexSet{1, 2, 3}).members == VertexSet{1, 2, 3});
    CHECK_THROWS_AS((void)rule_k_restricted(k4, 3, VertexSet{9}), std::out_of_range);
}

TEST_CASE("work cap is reported, not approximated") {
    RuleKOptions tight;
    tight.work_cap = 1;
    CHECK_THROWS_AS((void)rule_k(fixtures::k4_cluster(), 3, tight), WorkCapExceeded);
    try {
        (void)rule_k(fixtures::k4_cluster(), 3, tight);
    } catch (const WorkCapExceeded& e) {
        CHECK(e.vertex() == 1);
    }
}

TEST_CASE("pruned search equals naive enumeration") {
    Rng rng(1234);
    int checked = 0;
    for (int trial = 0; trial < 600; ++trial) {
        const auto n = 1 + rng.index(30);
        const double side = rng.uniform(1.05, 5.0);
        const auto g = fixtures::random_graph(rng, n, side);
        const unsigned k = 1 + static_cast<unsigned>(rng.index(4));
        for (bool at_most : {false, true}) {
            RuleKOptions opts;
            opts.at_most_k = at_most;
            CHECK(rule_k(g, k, opts).members == fixtures::rule_k_naive(g, k, at_most));

            const VertexSet marked = marking_process(g);
            const auto mask = membership_mask(g, marked);
            CHECK(rule_k_restricted(g, k, marked, opts).members == fixtures::rule_k_naive(g, k, at_most, &mask));
            ++checked;
        }
    }
    CHECK(checked == 1200);
}

TEST_CASE("Rule k output is a CDS and contains every local maximum") {
    Rng rng(42);
    for (int trial = 0; trial < 10000; ++trial) {
        const auto n = 1 + rng.index(60);
        const double side = rng.uniform(1.05, 7.0);
        const auto g = fixtures::random_graph(rng, n, side);
        const unsigned k = 1 + static_cast<unsigned>(rng.index(4));
        const auto r = rule_k(g, k);
        REQUIRE(is_cds(g, r.members));
        REQUIRE(r.verified_dominating);
        REQUIRE(r.verified_component_preserving);
        REQUIRE(r.size + r.excluded_count == g.size());
        REQUIRE(subset_of(local_maxima(g), r.members));
    }
}

TEST_CASE("rule_k is deterministic") {
    Rng rng(8);
    const auto g = fixtures::random_graph(rng, 400, 6.0);
    CHECK(rule_k(g, 3).members == rule_k(g, 3).members);
}

TEST_CASE("marking_process") {
    CHECK(marking_process(fixtures::path3()) == VertexSet{2});
    CHECK(marking_process(fixtures::k4_cluster()).empty());
    CHECK(marking_process(fixtures::singleton()).empty());

    Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const auto g = fixtures::random_graph(rng, 1 + rng.index(40), rng.uniform(1.5, 5));
        const auto m = marking_process(g);
        for (VertexId v = 1; v <= g.size(); ++v) {
            bool has_pair = false;
            const auto nb = g.neighbors(v);
            for (std::size_t a = 0; a < nb.size(); ++a)
                for (std::size_t b = a + 1; b < nb.size(); ++b) has_pair |= !g.adjacent(nb[a], nb[b]);
            CHECK(std::binary_search(m.begin(), m.end(), v) == has_pair);
        }
    }
}

TEST_CASE("local_maxima") {
    CHECK(local_maxima(fixtures::k4_cluster()) == VertexSet{4});
    CHECK(local_maxima(fixtures::two_isolated()) == VertexSet{1, 2});
    CHECK(local_maxima(fixtures::path3()) == VertexSet{3});
    Rng rng(23);
    const auto g = fixtures::random_graph(rng, 200, 5);
    const auto l = local_maxima(g);
    CHECK(std::binary_search(l.begin(), l.end(), VertexId{200}));
}

TEST_CASE("grid_cds") {
    Rng rng(1);
    SUBCASE("cell layout") {
        const auto g = fixtures::graph_of({{0.5, 0.5}}, 2.0);
        const auto r = grid_cds(g, rng);
        CHECK(r.cells_per_side == 6);
        CHECK(r.cell_side == doctest::Approx(1.0 / 3.0));
        CHECK(r.members == VertexSet{1});
        CHECK_FALSE(r.all_cells_occupied);
    }
    SUBCASE("every cell occupied") {
        std::vector<Point> pts;
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) pts.push_back({(i + 0.5) / 3.0, (j + 0.5) / 3.0});
        pts.push_back({2.0, 2.0});  // top-right corner joins the last cell
        pts.push_back({1.0 / 3.0, 0.0});  // on a cell boundary
        const auto g = fixtures::graph_of(pts, 2.0);
        const auto r = grid_cds(g, rng);
        CHECK(r.all_cells_occupied);
        CHECK(r.members.size() == 36);
        CHECK(is_cds(g, r.members));
    }
    SUBCASE("one member per nonempty cell") {
        const auto g = fixtures::random_graph(rng, 300, 4.2);
        const auto r = grid_cds(g, rng);
        std::vector<int> per_cell(r.cells_per_side * r.cells_per_side, 0);
        for (VertexId v : r.members) {
            const Point p = g.instance().position(v);
            const auto cx = std::min(r.cells_per_side - 1, static_cast<std::size_t>(p.x / r.cell_side));
            const auto cy = std::min(r.cells_per_side - 1, static_cast<std::size_t>(p.y / r.cell_side));
            ++per_cell[cy * r.cells_per_side + cx];
        }
        CHECK(*std::max_element(per_cell.begin(), per_cell.end()) <= 1);
        CHECK(r.members.size() <= r.cells_per_side * r.cells_per_side);
    }
}

TEST_CASE("grid members form a CDS whenever every cell is occupied") {
    Rng rng(55);
    int occupied = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const double side = rng.uniform(1.1, 3.0);
        const auto g = fixtures::random_graph(rng, 400, side);
        const auto r = grid_cds(g, rng);
        if (!r.all_cells_occupied || component_count(g) != 1) continue;
        ++occupied;
        CHECK(r.members.size() == r.cells_per_side * r.cells_per_side);
        CHECK(is_cds(g, r.members));
    }
    CHECK(occupied > 100);
}
