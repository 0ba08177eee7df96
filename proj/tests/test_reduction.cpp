#include "asapt/bounds.hpp"
#include "asapt/error.hpp"
#include "asapt/generators.hpp"
#include "asapt/reduction.hpp"
#include "asapt/tournament.hpp"
#include "support.hpp"

#include <doctest.h>

#include <set>

using namespace asapt;

namespace {

OrientedGraph triangle_with_pendant() {
    // Triangle 0 -> 1 -> 2 -> 0 and pendant arc 0 -> 3.
    return OrientedGraph::build(4, {{0, 1}, {1, 2}, {2, 0}, {0, 3}});
}

OrientedGraph double_triangle() {
    // a=0, b=1, c=2, d=3, e=4: triangles 0 -> 1 -> 2 -> 0 and 2 -> 3 -> 4 -> 2.
    return OrientedGraph::build(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}});
}

OrientedGraph transitive(Vertex n) {
    std::vector<Arc> arcs;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j) arcs.push_back({i, j});
    return OrientedGraph::build(n, arcs);
}

} // namespace

TEST_CASE("rule tokens round-trip") {
    for (Rule r : {Rule::R1_SmallClique, Rule::R2_BridgeTriangles, Rule::R3_Degree, Rule::R4_BigClique, Rule::R5_Triplet})
        CHECK(parse_rule_token(rule_token(r)) == r);
    CHECK_FALSE(parse_rule_token("R6"));
}

TEST_CASE("k deltas") {
    CHECK(rule3_delta({2, 1}) == 1);
    CHECK(rule3_delta({2, 0}) == 3);
    CHECK(rule4_delta(4) == 4);
    CHECK(rule4_delta(5) == 3);
    CHECK(rule4_delta(6) == 8);
    CHECK(kRule5Delta == 1);
}

TEST_CASE("hanging triangle rule") {
    const auto g = triangle_with_pendant();
    const auto m = detect_rule1(g);
    REQUIRE(m);
    CHECK(m->x == 0);
    CHECK(m->s == VertexSet{1, 2});
    const auto r = apply_rule1(g, *m, 5);
    CHECK(r.graph.num_vertices() == 2);
    CHECK(r.graph.num_arcs() == 1);
    CHECK(r.k == 5);
    CHECK(testing::brute_force_a(g) == 3);
    CHECK(testing::brute_force_a(r.graph) == 1);

    const auto lone = detect_rule1(gen_Ht(1));
    REQUIRE(lone);
    CHECK(apply_rule1(gen_Ht(1), *lone).graph.num_vertices() == 1);
    CHECK_FALSE(detect_rule1(OrientedGraph::build(2, {{0, 1}})));

    const auto h2 = gen_Ht(2);
    const Rule1Match hm{2, {3, 4}};
    CHECK(rule1_applies(h2, hm));
    CHECK(apply_rule1(h2, hm).graph == gen_Ht(1));
    CHECK_THROWS_AS(apply_rule1(h2, Rule1Match{2, {0, 3}}), Error);
}

TEST_CASE("triangle pair rule") {
    const auto g = double_triangle();
    const auto m = detect_rule2(g);
    REQUIRE(m);
    const auto r = apply_rule2(g, *m);
    CHECK(r.graph.num_vertices() == 3);
    CHECK(r.graph.num_arcs() == 3);
    CHECK(is_directed_triangle(r.graph, {0, 1, 2}));
    CHECK(r.to_parent.back() == -1);
    CHECK(testing::brute_force_a(g) == 4);
    CHECK(testing::brute_force_a(r.graph) == 2);

    const auto on_h2 = detect_rule2(gen_Ht(2));
    REQUIRE(on_h2);
    CHECK(on_h2->c == 2);
    CHECK(on_h2->a == 0);
    CHECK(on_h2->b == 1);
    CHECK(on_h2->d == 3);
    CHECK(on_h2->e == 4);

    // Pendant at a keeps the rule applicable; the difference stays 2.
    auto arcs = g.arcs();
    arcs.push_back({0, 5});
    const auto pendant = OrientedGraph::build(6, arcs);
    const auto pm = detect_rule2(pendant);
    REQUIRE(pm);
    CHECK(testing::brute_force_a(pendant) - testing::brute_force_a(apply_rule2(pendant, *pm).graph) == 2);

    // An external neighbor at b and at d blocks every labeling.
    arcs = g.arcs();
    arcs.push_back({1, 5});
    arcs.push_back({3, 6});
    arcs.push_back({0, 7});
    arcs.push_back({4, 8});
    CHECK_FALSE(detect_rule2(OrientedGraph::build(9, arcs)));
    CHECK_THROWS_AS(apply_rule2(g, Rule2Match{0, 3, 2, 1, 4}), Error);
}

TEST_CASE("unbalanced vertex rule") {
    const auto path = OrientedGraph::build(3, {{0, 1}, {1, 2}});
    CHECK(detect_rule3(path) == 0);
    const auto r = apply_rule3(path, 0, 3);
    CHECK(r.k == 2);
    CHECK(r.graph.num_arcs() == 1);
    CHECK_FALSE(detect_rule3(gen_Ht(1)));
    CHECK_FALSE(detect_rule3(gen_Ht(2)));
    CHECK(apply_rule3(transitive(3), 0, 5).k == 2);
    CHECK_THROWS_AS(apply_rule3(path, 1, 3), Error);
}

TEST_CASE("tournament rule") {
    // Tournament on 0..3 hanging off 3 via the arc 3 -> 4.
    auto arcs = transitive(4).arcs();
    arcs.push_back({3, 4});
    const auto g = OrientedGraph::build(5, arcs);
    CHECK(detect_rule4(g) == VertexSet{0, 1, 2, 3});
    CHECK(apply_rule4(g, {0, 1, 2, 3}, 10).k == 6);

    CHECK_FALSE(detect_rule4(gen_Ht(1)));
    CHECK(detect_rule4(transitive(5)) == VertexSet{1, 2, 3, 4});
    CHECK(apply_rule4(transitive(5), {1, 2, 3, 4}, 10).k == 6);
    CHECK(apply_rule4(transitive(6), {1, 2, 3, 4, 5}, 10).k == 7);
    CHECK(apply_rule4(transitive(7), {1, 2, 3, 4, 5, 6}, 9).k == 1);

    // The whole graph only counts when the empty remainder is allowed.
    CHECK_FALSE(rule4_applies(transitive(4), VertexSet::range(4)));
    CHECK(rule4_applies(transitive(4), VertexSet::range(4), ReductionOptions{true}));
}

TEST_CASE("induced path rule") {
    const auto path = OrientedGraph::build(4, {{0, 1}, {1, 2}, {2, 3}});
    CHECK(detect_rule5(path) == VertexSet{0, 1, 2});
    CHECK(apply_rule5(path, {0, 1, 2}, 2).k == 1);
    CHECK_FALSE(detect_rule5(gen_Ht(1)));
    CHECK_FALSE(detect_rule5(double_triangle()));

    const auto in = OrientedGraph::build(3, {{0, 1}, {2, 1}});
    CHECK(path3_ordering(in, {0, 1, 2}) == std::vector<Vertex>{0, 2, 1});
    const auto out = OrientedGraph::build(3, {{1, 0}, {1, 2}});
    CHECK(path3_ordering(out, {0, 1, 2}) == std::vector<Vertex>{1, 0, 2});
    CHECK_FALSE(rule5_applies(in, {0, 1, 2}));
    CHECK(rule5_applies(in, {0, 1, 2}, ReductionOptions{true}));
}

TEST_CASE("combine") {
    const auto g = OrientedGraph::build(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {2, 3}});
    const auto w = combine(std::vector<Vertex>{3, 4, 5}, std::vector<Vertex>{0, 1, 2}, g, {0, 1, 2});
    CHECK(w.forward_arcs == 5);
    CHECK(testing::brute_force_a(g) == 5);

    const auto star = OrientedGraph::build(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 3}});
    const auto s = combine(std::vector<Vertex>{1, 2, 3}, std::vector<Vertex>{0}, star, {0});
    CHECK(s.forward_arcs == 2 + 3);

    SplitMix64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const auto h = gen_connected_oriented(2 + static_cast<Vertex>(rng.below(10)), rng.unit(), rng.next());
        std::vector<Vertex> in_s, rest;
        for (Vertex v = 0; v < h.num_vertices(); ++v) (rng.bit() ? in_s : rest).push_back(v);
        if (in_s.empty() || rest.empty()) continue;
        const VertexSet set(in_s);
        const auto cut = cut_degrees(h, set);
        int part = 0;
        for (const Arc& a : h.arcs()) {
            const bool ts = set.contains(a.tail), hs = set.contains(a.head);
            if (ts != hs) continue;
            const auto& order = ts ? in_s : rest;
            const auto pt = std::find(order.begin(), order.end(), a.tail);
            const auto ph = std::find(order.begin(), order.end(), a.head);
            if (pt < ph) ++part;
        }
        const auto c = combine(rest, in_s, h, set);
        CHECK(c.forward_arcs == part + std::max(cut.leaving, cut.entering));
    }
}

TEST_CASE("decompose") {
    const auto tri = decompose(Instance{gen_Ht(1), 1});
    CHECK_FALSE(tri.yes_certificate);
    CHECK(tri.u.empty());
    REQUIRE(tri.trace.steps.size() == 1);
    CHECK(tri.trace.steps[0].rule == Rule::R1_SmallClique);
    CHECK(tri.report.all());

    const auto path = decompose(Instance{OrientedGraph::build(3, {{0, 1}, {1, 2}}), 1});
    CHECK(path.yes_certificate);

    const auto t5 = decompose(Instance{transitive(5), 3});
    CHECK(t5.yes_certificate);

    CHECK_THROWS_AS(decompose(Instance{OrientedGraph::build(3, {{0, 1}}), 1}), Error);
}

TEST_CASE("lift_witness") {
    const auto path = OrientedGraph::build(3, {{0, 1}, {1, 2}});
    const auto d = decompose(Instance{path, 1});
    REQUIRE(d.trace.steps.size() == 1);
    const auto base = WitnessOrdering{{0, 1}, 1};
    const auto lifted = lift_witness(d.trace, base);
    CHECK(lifted.order == std::vector<Vertex>{0, 1, 2});
    CHECK(lifted.forward_arcs == 2);

    const auto tri = decompose(Instance{gen_Ht(1), 1});
    const auto up = lift_witness(tri.trace, WitnessOrdering{{0}, 0});
    CHECK(up.forward_arcs == 2);

    const auto empty = start_trace(Instance{gen_Ht(2), 0});
    CHECK(lift_witness(empty, WitnessOrdering{{4, 3, 2, 1, 0}, 2}).order == std::vector<Vertex>{4, 3, 2, 1, 0});
    CHECK_THROWS_AS(lift_witness(tri.trace, WitnessOrdering{{0, 1}, 0}), Error);
}

TEST_CASE("normalization removes hanging and bridged triangles") {
    const auto t = normalize_two_way(Instance{gen_Ht(3), 1});
    CHECK(t.final_k == 1);
    CHECK(t.final_graph().graph.num_vertices() == 1);
    const auto up = lift_witness(t, WitnessOrdering{{0}, 0});
    CHECK(up.forward_arcs == 6);

    const auto d = normalize_two_way(Instance{double_triangle(), 0});
    for (const auto& s : d.steps) CHECK(s.k_delta == 0);
}

TEST_CASE("property: trace invariants on random graphs") {
    SplitMix64 rng(32);
    for (int trial = 0; trial < 300; ++trial) {
        const auto g = testing::random_connected(rng, 2, 14);
        const std::int64_t k = static_cast<std::int64_t>(rng.below(8));
        const auto d = decompose(Instance{g, k}, DecomposeOptions{{}, false});
        std::int64_t sum = 0;
        std::set<Vertex> seen;
        for (const auto& s : d.trace.steps) {
            sum += s.k_delta;
            for (Vertex v : s.removed) CHECK(seen.insert(v).second);
        }
        CHECK(d.trace.final_k == k - sum);
        CHECK(d.u.size() <= static_cast<std::size_t>(3 * sum));
        // Everything reduces to a single vertex.
        CHECK(d.trace.final_graph().graph.num_vertices() == 1);
        if (!d.yes_certificate) CHECK(d.report.forest_of_cliques);

        const auto w = guaranteed_witness(g);
        CHECK(count_forward(g, w.order) == w.forward_arcs);
        CHECK(4 * w.forward_arcs >= gamma(g).q + sum);
    }
}

TEST_CASE("property: lifted witnesses certify every stopped certificate") {
    SplitMix64 rng(33);
    for (int trial = 0; trial < 300; ++trial) {
        const auto g = testing::random_connected(rng, 2, 14);
        const std::int64_t k = static_cast<std::int64_t>(rng.below(10));
        const auto d = decompose(Instance{g, k});
        if (!d.yes_certificate) continue;
        const auto base = guaranteed_witness(d.trace.final_graph().graph);
        const auto w = lift_witness(d.trace, base);
        CHECK(verify_yes(Instance{g, k}, w));
    }
}

TEST_CASE("forest report detects each violated property") {
    // Four-vertex block in G - U.
    auto r = forest_report(OrientedGraph::build(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}), {});
    CHECK_FALSE(r.blocks_at_most_three);
    // Transitive triangle.
    r = forest_report(transitive(3), {});
    CHECK_FALSE(r.triangles_directed);
    // Two 2-blocks in one component.
    r = forest_report(OrientedGraph::build(3, {{0, 1}, {1, 2}}), {});
    CHECK_FALSE(r.one_pair_per_component);
    // Two isolated vertices once U is removed.
    r = forest_report(OrientedGraph::build(3, {{0, 1}, {0, 2}}), {0});
    CHECK_FALSE(r.at_most_one_isolated);
    CHECK(forest_report(gen_Ht(3), {}).all());
}
