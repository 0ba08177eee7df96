#include "asapt/bounds.hpp"
#include "asapt/error.hpp"
#include "asapt/generators.hpp"
#include "asapt/kernel.hpp"
#include "asapt/tournament.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace asapt;

TEST_CASE("splitmix64 reference values") {
    SplitMix64 rng(0);
    CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
    CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
    SplitMix64 a(7), b(7);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
    SplitMix64 r(3);
    for (int i = 0; i < 1000; ++i) {
        CHECK(r.below(5) < 5);
        const double u = r.unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("tight family") {
    CHECK(gen_Ht(1) == OrientedGraph::build(3, {{0, 1}, {1, 2}, {2, 0}}));
    for (int t = 1; t <= 5; ++t) {
        const auto h = gen_Ht(t);
        CHECK(h.num_vertices() == 2 * t + 1);
        CHECK(h.num_arcs() == 3 * t);
    }
    CHECK(oracle_max_acyclic(gen_Ht(2)).a == 4);
    CHECK(gamma(gen_Ht(3)).q == 24);
}

TEST_CASE("random tournaments") {
    CHECK(gen_tournament(1, 5).num_arcs() == 0);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto t = gen_tournament(3, seed);
        CHECK(is_tournament(t));
        const bool cyclic = is_directed_triangle(t, {0, 1, 2});
        CHECK(oracle_max_acyclic(t).a == (cyclic ? 2 : 3));
    }
    CHECK(gen_tournament(9, 4).arcs() == gen_tournament(9, 4).arcs());
    CHECK_FALSE(gen_tournament(9, 4).arcs() == gen_tournament(9, 5).arcs());
}

TEST_CASE("random connected graphs") {
    for (Vertex n = 1; n <= 20; ++n) {
        CHECK(gen_connected_oriented(n, 0.0, 9).num_arcs() == n - 1);
        CHECK(is_tournament(gen_connected_oriented(n, 1.0, 9)));
    }
    CHECK(gen_connected_oriented(15, 0.3, 2).arcs() == gen_connected_oriented(15, 0.3, 2).arcs());
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const auto g = gen_connected_oriented(1 + static_cast<Vertex>(seed % 25), 0.1, seed);
        CHECK(testing::connected_by_union_find(g));
    }
}

TEST_CASE("forest plans") {
    auto f = gen_forest_of_cliques({BlockSpec{3, -1, 0}}, 1);
    CHECK(is_directed_triangle(f.graph, {0, 1, 2}));
    CHECK(f.profile.leaf_blocks == 1);

    f = gen_forest_of_cliques({BlockSpec{3, -1, 0}, BlockSpec{3, 0, 2}, BlockSpec{3, 1, 2}}, 1);
    CHECK(f.graph.num_vertices() == 7);
    CHECK(f.profile.leaf_blocks == 2);
    CHECK(f.profile.path_blocks == 1);

    const std::vector<BlockSpec> two_pairs{{3, -1, 0}, {2, 0, 1}, {2, 0, 2}};
    CHECK_NOTHROW(gen_forest_of_cliques(two_pairs, 1));
    CHECK_THROWS_AS(gen_forest_of_cliques(two_pairs, 1, ForestPlanOptions{true, true}), Error);
    CHECK_THROWS_AS(gen_forest_of_cliques({BlockSpec{4, -1, 0}}, 1), Error);
    CHECK_THROWS_AS(gen_forest_of_cliques({BlockSpec{3, 0, 0}}, 1), Error);
    CHECK_THROWS_AS(gen_forest_of_cliques({BlockSpec{3, -1, 0}, BlockSpec{3, 0, 3}}, 1), Error);
    CHECK_THROWS_AS(gen_forest_of_cliques({BlockSpec{1, -1, 0}, BlockSpec{2, 0, 0}}, 1), Error);
    CHECK_THROWS_AS(gen_forest_of_cliques({BlockSpec{3, -1, 0}, BlockSpec{1, 0, 0}}, 1), Error);

    // Random orientation of 3-blocks produces some transitive triangles.
    int transitive = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto r = gen_forest_of_cliques({BlockSpec{3, -1, 0}}, seed, ForestPlanOptions{false, false});
        if (!is_directed_triangle(r.graph, {0, 1, 2})) ++transitive;
    }
    CHECK(transitive > 0);
}

TEST_CASE("property: planned blocks match the decomposition") {
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const auto plan = random_forest_plan(1 + static_cast<int>(seed % 12), seed, 4);
        const auto f = gen_forest_of_cliques(plan, seed);
        const auto bd = blocks(f.graph);
        std::vector<VertexSet> planned = f.blocks;
        std::sort(planned.begin(), planned.end());
        CHECK(planned == bd.blocks);
        const auto p = block_profile(f.graph);
        CHECK(p.leaf_blocks == f.profile.leaf_blocks);
        CHECK(p.path_blocks == f.profile.path_blocks);
        CHECK(p.vertices == f.profile.vertices);
    }
}

TEST_CASE("property: single-tree plans are connected") {
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const int num_blocks = 1 + static_cast<int>(seed % 12);
        const auto f = gen_forest_of_cliques(random_forest_plan(num_blocks, seed), seed);
        CHECK(is_connected(f.graph));
    }
}
