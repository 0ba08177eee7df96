#pragma once

// Helpers shared by the unit tests and the acceptance runner. Nothing here
// calls into the library's oracle: brute_force_a is an independent check.

#include "asapt/generators.hpp"
#include "asapt/graph.hpp"
#include "asapt/reduction.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

namespace asapt::testing {

// Maximum forward-arc count over all n! orderings.
inline int brute_force_a(const OrientedGraph& g) {
    std::vector<Vertex> perm(static_cast<std::size_t>(g.num_vertices()));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> pos(perm.size());
    int best = 0;
    do {
        for (std::size_t i = 0; i < perm.size(); ++i) pos[perm[i]] = static_cast<int>(i);
        int forward = 0;
        for (const Arc& a : g.arcs())
            if (pos[a.tail] < pos[a.head]) ++forward;
        best = std::max(best, forward);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// Independent connectivity check by union-find over the arc list.
inline bool connected_by_union_find(const OrientedGraph& g) {
    const Vertex n = g.num_vertices();
    if (n == 0) return true;
    std::vector<Vertex> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](Vertex v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    int groups = n;
    for (const Arc& a : g.arcs()) {
        Vertex x = find(a.tail), y = find(a.head);
        if (x != y) {
            parent[x] = y;
            --groups;
        }
    }
    return groups == 1;
}

// Calls fn(graph) for every oriented graph on n labeled vertices: each of
// the C(n,2) pairs is absent, i->j or j->i.
template <class Fn>
void for_each_oriented_graph(Vertex n, bool connected_only, Fn&& fn) {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j) pairs.push_back({i, j});
    std::vector<int> state(pairs.size(), 0);
    std::vector<Arc> arcs;
    while (true) {
        arcs.clear();
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            if (state[p] == 1) arcs.push_back({pairs[p].first, pairs[p].second});
            if (state[p] == 2) arcs.push_back({pairs[p].second, pairs[p].first});
        }
        OrientedGraph g = OrientedGraph::build(n, arcs);
        if (!connected_only || connected_by_union_find(g)) fn(g);
        std::size_t p = 0;
        while (p < state.size() && state[p] == 2) state[p++] = 0;
        if (p == state.size()) return;
        ++state[p];
    }
}

inline OrientedGraph random_connected(SplitMix64& rng, Vertex lo, Vertex hi) {
    const Vertex n = lo + static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
    return gen_connected_oriented(n, rng.unit() * 0.7, rng.next());
}

// Union of g and a copy of h placed after g's vertices, plus extra arcs
// given in the combined id space.
inline OrientedGraph disjoint_union(const OrientedGraph& g, const OrientedGraph& h, const std::vector<Arc>& extra) {
    std::vector<Arc> arcs = g.arcs();
    const Vertex off = g.num_vertices();
    for (const Arc& a : h.arcs()) arcs.push_back({a.tail + off, a.head + off});
    arcs.insert(arcs.end(), extra.begin(), extra.end());
    return OrientedGraph::build(off + h.num_vertices(), arcs);
}

inline Arc random_orientation(SplitMix64& rng, Vertex a, Vertex b) { return rng.bit() ? Arc{b, a} : Arc{a, b}; }

inline std::vector<Arc> directed_triangle(SplitMix64& rng, Vertex a, Vertex b, Vertex c) {
    if (rng.bit()) return {{a, b}, {b, c}, {c, a}};
    return {{b, a}, {c, b}, {a, c}};
}

// A connected graph with a directed triangle {x, s1, s2} hanging off x.
// Returns the graph and the hanging pair; n is the total vertex count (>= 3).
inline std::pair<OrientedGraph, Rule1Match> rule1_fixture(SplitMix64& rng, Vertex n) {
    const OrientedGraph base = gen_connected_oriented(n - 2, rng.unit() * 0.6, rng.next());
    const Vertex x = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n - 2)));
    const Vertex s1 = n - 2, s2 = n - 1;
    std::vector<Arc> arcs = base.arcs();
    for (const Arc& a : directed_triangle(rng, x, s1, s2)) arcs.push_back(a);
    return {OrientedGraph::build(n, arcs), Rule1Match{x, VertexSet{s1, s2}}};
}

// Two directed triangles a,b,c and c,d,e where only a and e reach the rest
// of the graph. The rest is one connected piece containing both a and e
// (nonadjacent) or two pieces, one holding a and one holding e.
inline std::optional<std::pair<OrientedGraph, Rule2Match>> rule2_fixture(SplitMix64& rng, Vertex n) {
    const Vertex rest = n - 3;
    if (rest < 2) return std::nullopt;
    std::vector<Arc> arcs;
    Vertex a = -1, e = -1;
    if (rng.bit() && rest >= 3) {
        const OrientedGraph h = gen_connected_oriented(rest, rng.unit() * 0.5, rng.next());
        std::vector<std::pair<Vertex, Vertex>> free;
        for (Vertex i = 0; i < rest; ++i)
            for (Vertex j = 0; j < rest; ++j)
                if (i != j && !h.adjacent(i, j)) free.push_back({i, j});
        if (free.empty()) return std::nullopt;
        std::tie(a, e) = free[rng.below(free.size())];
        arcs = h.arcs();
    } else {
        const Vertex left = 1 + static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(rest - 1)));
        const OrientedGraph h1 = gen_connected_oriented(left, rng.unit() * 0.5, rng.next());
        const OrientedGraph h2 = gen_connected_oriented(rest - left, rng.unit() * 0.5, rng.next());
        arcs = disjoint_union(h1, h2, {}).arcs();
        a = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(left)));
        e = left + static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(rest - left)));
    }
    const Vertex b = rest, c = rest + 1, d = rest + 2;
    for (const Arc& arc : directed_triangle(rng, a, b, c)) arcs.push_back(arc);
    for (const Arc& arc : directed_triangle(rng, c, d, e)) arcs.push_back(arc);
    return std::pair{OrientedGraph::build(n, arcs), Rule2Match{a, b, c, d, e}};
}

// A random tournament on s vertices joined to a random connected graph on
// n - s vertices by random arcs; G - S is exactly the connected part.
inline std::pair<OrientedGraph, VertexSet> rule4_fixture(SplitMix64& rng, Vertex n, Vertex s) {
    const OrientedGraph h = gen_connected_oriented(n - s, rng.unit() * 0.6, rng.next());
    const OrientedGraph t = gen_tournament(s, rng.next());
    std::vector<Arc> extra;
    const Vertex off = h.num_vertices();
    const int links = 1 + static_cast<int>(rng.below(3));
    std::vector<std::pair<Vertex, Vertex>> used;
    for (int i = 0; i < links; ++i) {
        const Vertex x = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(off)));
        const Vertex y = off + static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(s)));
        if (std::find(used.begin(), used.end(), std::pair{x, y}) != used.end()) continue;
        used.push_back({x, y});
        extra.push_back(random_orientation(rng, x, y));
    }
    std::vector<Vertex> ids;
    for (Vertex v = off; v < n; ++v) ids.push_back(v);
    return {disjoint_union(h, t, extra), VertexSet(std::move(ids))};
}

// Connected cactus of directed triangles plus a few random extra arcs and
// pendant vertices: graphs whose excess over the bound stays small, so the
// one-way rules leave a positive parameter.
inline OrientedGraph near_tight_graph(SplitMix64& rng, int triangles, int extra_arcs, int pendants) {
    std::vector<BlockSpec> plan;
    for (int i = 0; i < triangles; ++i) {
        BlockSpec b;
        b.size = 3;
        b.parent = i == 0 ? -1 : static_cast<int>(rng.below(static_cast<std::uint64_t>(i)));
        b.parent_slot = static_cast<int>(rng.below(3));
        plan.push_back(b);
    }
    const GeneratedForest f = gen_forest_of_cliques(plan, rng.next());
    Vertex n = f.graph.num_vertices();
    std::vector<Arc> arcs = f.graph.arcs();
    auto has_pair = [&](Vertex x, Vertex y) {
        return std::any_of(arcs.begin(), arcs.end(), [&](const Arc& a) {
            return (a.tail == x && a.head == y) || (a.tail == y && a.head == x);
        });
    };
    for (int i = 0; i < pendants; ++i) {
        const Vertex at = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
        arcs.push_back(random_orientation(rng, at, n));
        ++n;
    }
    for (int i = 0; i < extra_arcs; ++i) {
        const Vertex x = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
        const Vertex y = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
        if (x != y && !has_pair(x, y)) arcs.push_back(random_orientation(rng, x, y));
    }
    return OrientedGraph::build(n, arcs);
}

// Hub 0 with one more out-arc than in-arcs, adjacent to all but two of the
// 2*triangles + 1 vertices of a chain of directed triangles. The hub is the only vertex
// the degree rule can take; afterwards the chain dissolves at no cost.
inline OrientedGraph hub_over_triangle_chain(int triangles) {
    std::vector<Arc> arcs;
    for (int t = 0; t < triangles; ++t) {
        const Vertex a = 1 + 2 * t, b = a + 1, c = a + 2;
        arcs.insert(arcs.end(), {{a, b}, {b, c}, {c, a}});
    }
    const Vertex last = 2 * triangles + 1;
    for (Vertex x = 1, i = 0; x <= last; ++x) {
        if (x == 3 || x == last) continue;
        arcs.push_back(i++ % 2 == 0 ? Arc{0, x} : Arc{x, 0});
    }
    return OrientedGraph::build(last + 1, arcs);
}

// Hubs 0 and 1, each closing a directed triangle with every gadget arc
// 2i -> 2i+1, plus a small random core wired to the hubs. Once the hubs
// are removed the gadgets are components touching them only through
// such triangles.
inline OrientedGraph two_hub_gadgets(SplitMix64& rng, int gadgets) {
    const Vertex core_n = 1 + static_cast<Vertex>(rng.below(6));
    const OrientedGraph core = gen_connected_oriented(core_n, rng.unit(), rng.next());
    const Vertex off = 2 + 2 * gadgets;
    std::vector<Arc> arcs;
    if (rng.bit()) arcs.push_back(random_orientation(rng, 0, 1));
    for (int i = 0; i < gadgets; ++i) {
        const Vertex a = 2 + 2 * i, b = a + 1;
        arcs.insert(arcs.end(), {{0, a}, {a, b}, {b, 0}, {1, a}, {b, 1}});
    }
    for (const Arc& a : core.arcs()) arcs.push_back({a.tail + off, a.head + off});
    std::vector<std::pair<Vertex, Vertex>> used;
    const int links = 1 + static_cast<int>(rng.below(4));
    for (int l = 0; l < links; ++l) {
        const std::pair<Vertex, Vertex> p{static_cast<Vertex>(rng.below(2)),
                                          off + static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(core_n)))};
        if (std::find(used.begin(), used.end(), p) != used.end()) continue;
        used.push_back(p);
        arcs.push_back(random_orientation(rng, p.first, p.second));
    }
    return OrientedGraph::build(off + core_n, arcs);
}

} // namespace asapt::testing
