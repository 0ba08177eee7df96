#include "asapt/tournament.hpp"

#include "asapt/error.hpp"

#include <algorithm>
#include <deque>

namespace asapt {

bool is_tournament(const OrientedGraph& g) {
    const std::int64_t n = g.num_vertices();
    return g.num_arcs() == n * (n - 1) / 2;
}

std::int64_t tournament_bound_q(Vertex n) {
    const std::int64_t nn = n;
    const std::int64_t m = nn * (nn - 1) / 2;
    const std::int64_t q = nn % 2 == 0 ? 2 * m + 3 * nn - 4 : 2 * m + 3 * (nn - 1) - 4;
    return std::max<std::int64_t>(q, 0);
}

namespace {

// Orders `alive` (ascending ids) following the inductive construction.
std::deque<Vertex> order_subset(const OrientedGraph& t, std::vector<Vertex> alive) {
    const int n = static_cast<int>(alive.size());
    if (n == 0) return {};
    if (n == 1) return {alive[0]};
    if (n == 2) {
        if (t.has_arc(alive[0], alive[1])) return {alive[0], alive[1]};
        return {alive[1], alive[0]};
    }

    auto out_degree = [&](Vertex x) {
        int d = 0;
        for (Vertex y : alive)
            if (y != x && t.has_arc(x, y)) ++d;
        return d;
    };
    auto without = [&](std::initializer_list<Vertex> drop) {
        std::vector<Vertex> rest;
        rest.reserve(alive.size());
        for (Vertex v : alive)
            if (std::find(drop.begin(), drop.end(), v) == drop.end()) rest.push_back(v);
        return rest;
    };

    if (n % 2 == 1) {
        const Vertex x = alive[0];
        const int out = out_degree(x);
        const int in = n - 1 - out;
        auto order = order_subset(t, without({x}));
        if (in >= out) order.push_back(x);
        else order.push_front(x);
        return order;
    }

    std::vector<int> outdeg(alive.size());
    for (int i = 0; i < n; ++i) outdeg[i] = out_degree(alive[i]);
    for (int i = 0; i < n; ++i) {
        if (outdeg[i] >= n / 2 + 1) {
            auto order = order_subset(t, without({alive[i]}));
            order.push_front(alive[i]);
            return order;
        }
    }
    for (int i = 0; i < n; ++i) {
        if (n - 1 - outdeg[i] >= n / 2 + 1) {
            auto order = order_subset(t, without({alive[i]}));
            order.push_back(alive[i]);
            return order;
        }
    }
    // Every out-degree is n/2 - 1 or n/2, and half of the vertices reach n/2.
    for (int i = 0; i < n; ++i) {
        if (outdeg[i] != n / 2) continue;
        for (int j = 0; j < n; ++j) {
            if (j == i || outdeg[j] != n / 2 || !t.has_arc(alive[i], alive[j])) continue;
            auto order = order_subset(t, without({alive[i], alive[j]}));
            order.push_front(alive[j]);
            order.push_front(alive[i]);
            return order;
        }
    }
    throw Error(ErrorCode::NotTournament, "no arc between out-degree n/2 vertices");
}

} // namespace

WitnessOrdering tournament_ordering(const OrientedGraph& t) {
    if (!is_tournament(t)) throw Error(ErrorCode::NotTournament, "graph is not a tournament");
    auto order = order_subset(t, VertexSet::range(t.num_vertices()).ids());
    WitnessOrdering w;
    w.order.assign(order.begin(), order.end());
    w.forward_arcs = count_forward(t, w.order);
    return w;
}

} // namespace asapt
