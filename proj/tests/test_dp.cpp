#include "asapt/bounds.hpp"
#include "asapt/dp_solver.hpp"
#include "asapt/error.hpp"
#include "asapt/generators.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace asapt;

namespace {

// G - U has blocks of at most three vertices.
bool small_blocks(const OrientedGraph& g, const VertexSet& u) {
    for (const auto& b : blocks(remove_vertices(g, u).graph).blocks)
        if (b.size() > 3) return false;
    return true;
}

int best_over_orderings(const OrientedGraph& g, const VertexSet& u) {
    std::vector<Vertex> perm = u.ids();
    int best = -1;
    do best = std::max(best, solve_for_ordering(g, u, perm));
    while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

} // namespace

TEST_CASE("gap vectors") {
    // u = 0, x = 1.
    const auto into = OrientedGraph::build(2, {{0, 1}});
    CHECK(init_gap_vector(into, std::vector<Vertex>{0}, 1).values == std::vector<int>{0, 1});
    const auto out = OrientedGraph::build(2, {{1, 0}});
    CHECK(init_gap_vector(out, std::vector<Vertex>{0}, 1).values == std::vector<int>{1, 0});
    const auto apart = OrientedGraph::build(3, {{0, 1}, {1, 2}});
    CHECK(init_gap_vector(apart, std::vector<Vertex>{0}, 2).values == std::vector<int>{0, 0});
    CHECK_THROWS_AS(init_gap_vector(into, std::vector<Vertex>{0}, 0), Error);

    // Direct evaluation of the definition on random instances.
    SplitMix64 rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        const auto g = gen_connected_oriented(6, rng.unit(), rng.next());
        const std::vector<Vertex> order{3, 0, 4, 1};
        const auto gv = init_gap_vector(g, order, 2);
        for (std::size_t i = 0; i <= order.size(); ++i) {
            int expect = 0;
            for (std::size_t j = 1; j <= order.size(); ++j) {
                if (j <= i && g.has_arc(order[j - 1], 2)) ++expect;
                if (j > i && g.has_arc(2, order[j - 1])) ++expect;
            }
            CHECK(gv.values[i] == expect);
        }
    }
}

TEST_CASE("u orderings count forward arcs inside U") {
    const auto g = gen_Ht(1);
    CHECK(make_u_ordering(g, {0, 1, 2}).q == 2);
    CHECK(make_u_ordering(g, {2, 1}).q == 0);
}

TEST_CASE("block beta") {
    const auto c = gen_Ht(1); // 0 -> 1 -> 2 -> 0
    const std::vector<Vertex> tri{0, 1, 2};
    CHECK(block_beta(c, tri, std::vector<int>{0, 0, 0}) == 2);
    CHECK(block_beta(c, tri, std::vector<int>{0, 1, 1}) == 2);
    CHECK(block_beta(c, tri, std::vector<int>{2, 1, 0}) == 1);
    const auto arc = OrientedGraph::build(2, {{0, 1}});
    CHECK(block_beta(arc, std::vector<Vertex>{0, 1}, std::vector<int>{1, 0}) == 0);
    CHECK(block_beta(arc, std::vector<Vertex>{0, 1}, std::vector<int>{0, 0}) == 1);
    CHECK_THROWS_AS(block_beta(arc, std::vector<Vertex>{0}, std::vector<int>{0}), Error);
}

TEST_CASE("peeling single blocks") {
    const auto c = gen_Ht(1);
    ForestLayout lone(c, {});
    DpState st(lone, std::vector<Vertex>{});
    st.peel_block({0, 1, 2}, 0);
    CHECK(st.vector_of(0).values == std::vector<int>{2});
    CHECK(st.total() == 2);

    const auto arc = OrientedGraph::build(2, {{0, 1}});
    ForestLayout pair(arc, {});
    DpState sp(pair, std::vector<Vertex>{});
    sp.peel_block({0, 1}, 0);
    CHECK(sp.vector_of(0).values == std::vector<int>{1});

    // Triangle 1 -> 2 -> 3 -> 1 with u = 0 and arc 0 -> 2.
    const auto g = OrientedGraph::build(4, {{1, 2}, {2, 3}, {3, 1}, {0, 2}});
    CHECK(solve_for_ordering(g, {0}, std::vector<Vertex>{0}) == testing::brute_force_a(g));
}

TEST_CASE("peeling rejects non-leaf blocks") {
    const auto h3 = gen_Ht(3); // blocks {0,1,2}, {2,3,4}, {4,5,6}
    ForestLayout layout(h3, {});
    DpState st(layout, std::vector<Vertex>{});
    CHECK_THROWS_AS(st.peel_block({2, 3, 4}, 2), Error);
    CHECK_THROWS_AS(st.peel_block({0, 1, 3}, 0), Error);
    CHECK_THROWS_AS(st.peel_block({4, 5, 6}, 7), Error);
    st.peel_block({4, 5, 6}, 4);
    CHECK_THROWS_AS(st.peel_block({4, 5, 6}, 4), Error);
    st.peel_block({2, 3, 4}, 2);
    st.peel_block({0, 1, 2}, 0);
    CHECK(st.total() == 6);
}

TEST_CASE("layout rejects large blocks") {
    const auto k4 = gen_tournament(4, 3);
    CHECK_THROWS_AS(ForestLayout(k4, {}), Error);
    CHECK_NOTHROW(ForestLayout(k4, {0}));
}

TEST_CASE("solve_for_ordering examples") {
    const auto c = gen_Ht(1);
    CHECK(solve_for_ordering(c, {0, 1, 2}, std::vector<Vertex>{0, 1, 2}) == 2);
    CHECK(solve_for_ordering(c, {0, 1, 2}, std::vector<Vertex>{2, 1, 0}) == 1);
    CHECK(solve_for_ordering(c, {}, std::vector<Vertex>{}) == 2);
    CHECK(solve_for_ordering(gen_Ht(2), {}, std::vector<Vertex>{}) == 4);
}

TEST_CASE("solve examples") {
    auto r = solve(Instance{gen_Ht(1), 0});
    CHECK(r.decision);
    CHECK(r.witness.forward_arcs == 2);
    r = solve(Instance{gen_Ht(1), 1});
    CHECK_FALSE(r.decision);
    CHECK(r.exact);
    CHECK(r.a_value == 2);
    CHECK(solve(Instance{gen_Ht(3), 0}).decision);
    CHECK_FALSE(solve(Instance{gen_Ht(3), 1}).decision);
    CHECK_THROWS_AS(solve(Instance{OrientedGraph::build(3, {{0, 1}}), 1}), Error);
}

TEST_CASE("property: the best ordering of U gives a(G) for any U leaving small blocks") {
    SplitMix64 rng(42);
    int checked = 0;
    for (int trial = 0; trial < 600 && checked < 250; ++trial) {
        const auto g = testing::random_connected(rng, 2, 8);
        std::vector<Vertex> ids;
        for (Vertex v = 0; v < g.num_vertices(); ++v)
            if (rng.below(3) == 0) ids.push_back(v);
        const VertexSet u(ids);
        if (u.size() > 4 || !small_blocks(g, u)) continue;
        ++checked;
        const int a = testing::brute_force_a(g);
        CHECK(best_over_orderings(g, u) == a);

        // One fixed ordering never exceeds a(G), and its reconstruction attains its value.
        const ForestLayout layout(g, u);
        DpState st(layout, u.ids());
        st.peel_all();
        CHECK(st.total() <= a);
        const auto order = st.reconstruct();
        CHECK(is_permutation_of(order, g.num_vertices()));
        CHECK(count_forward(g, order) == st.total());
    }
    CHECK(checked >= 200);
}

TEST_CASE("property: parallel and serial ordering searches agree") {
    SplitMix64 rng(43);
    for (int trial = 0; trial < 40; ++trial) {
        SplitMix64 inner(rng.next());
        const auto g = testing::near_tight_graph(inner, 3, 6, 3);
        std::vector<Vertex> ids;
        for (Vertex v = 0; v < g.num_vertices() && ids.size() < 6; ++v)
            if (inner.below(2) == 0) ids.push_back(v);
        const VertexSet u(ids);
        if (u.size() < 5 || !small_blocks(g, u)) continue;
        const auto p = search_orderings(g, u);
        const auto s = search_orderings_serial(g, u);
        CHECK(p.best == s.best);
        CHECK(p.best_order == s.best_order);
        CHECK(p.evaluated == s.evaluated);
    }
}

TEST_CASE("ordering limit") {
    const auto g = gen_tournament(6, 1);
    DpOptions opts;
    opts.max_u = 3;
    CHECK_THROWS_AS(search_orderings(g, {0, 1, 2, 3}, opts), Error);
}

TEST_CASE("property: solve matches the brute-force decision") {
    SplitMix64 rng(44);
    for (int trial = 0; trial < 300; ++trial) {
        const auto g = trial % 2 ? testing::random_connected(rng, 2, 8)
                                 : testing::near_tight_graph(rng, 1 + static_cast<int>(rng.below(3)),
                                                              static_cast<int>(rng.below(2)),
                                                              static_cast<int>(rng.below(2)));
        if (g.num_vertices() > 9) continue;
        const int a = testing::brute_force_a(g);
        for (std::int64_t k = -2; k <= 6; ++k) {
            const Instance in{g, k};
            const auto r = solve(in);
            CHECK(r.decision == decide_threshold(g, k, a));
            if (r.decision) CHECK(verify_yes(in, r.witness));
            if (r.exact) CHECK(r.a_value == a);
        }
    }
}
