#include "asapt/bounds.hpp"

#include "asapt/error.hpp"

#include <bit>
#include <string>
#include <vector>

namespace asapt {

ScoreQ gamma(const OrientedGraph& g) {
    const std::int64_t n = g.num_vertices();
    const std::int64_t m = g.num_arcs();
    return {2 * m + n - count_components(g)};
}

ScoreQ threshold(const OrientedGraph& g, std::int64_t k) {
    if (!is_connected(g)) throw Error(ErrorCode::NotConnected, "threshold needs a connected graph");
    const std::int64_t n = g.num_vertices();
    const std::int64_t m = g.num_arcs();
    return {2 * m + (n - 1) + k};
}

bool decide_threshold(const OrientedGraph& g, std::int64_t k, std::int64_t a_value) {
    return ScoreQ::arcs(a_value) >= threshold(g, k);
}

Instance make_instance(OrientedGraph g, std::int64_t k) {
    if (!is_connected(g)) throw Error(ErrorCode::NotConnected, "instance graph must be connected");
    return {std::move(g), k};
}

bool is_permutation_of(std::span<const Vertex> order, Vertex n) {
    if (static_cast<Vertex>(order.size()) != n) return false;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (Vertex v : order) {
        if (v < 0 || v >= n || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

int count_forward(const OrientedGraph& g, std::span<const Vertex> order) {
    if (!is_permutation_of(order, g.num_vertices()))
        throw Error(ErrorCode::NotPermutation, "order is not a permutation of the vertex set");
    std::vector<int> pos(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
    int forward = 0;
    for (const Arc& a : g.arcs())
        if (pos[a.tail] < pos[a.head]) ++forward;
    return forward;
}

bool verify_yes(const Instance& instance, const WitnessOrdering& witness) {
    if (!is_permutation_of(witness.order, instance.graph.num_vertices())) return false;
    if (count_forward(instance.graph, witness.order) != witness.forward_arcs) return false;
    if (!is_connected(instance.graph)) return false;
    return decide_threshold(instance.graph, instance.k, witness.forward_arcs);
}

namespace {

struct SubsetTable {
    Vertex n = 0;
    std::vector<std::uint32_t> in_mask;
    std::vector<std::uint16_t> best;
    std::vector<std::uint8_t> last;

    explicit SubsetTable(const OrientedGraph& g, Vertex cap) : n(g.num_vertices()) {
        if (n > cap || n > 30)
            throw Error(ErrorCode::TooLarge,
                        "oracle supports at most " + std::to_string(std::min<Vertex>(cap, 30)) +
                            " vertices, got " + std::to_string(n));
        in_mask.assign(static_cast<std::size_t>(n), 0);
        for (const Arc& a : g.arcs()) in_mask[a.head] |= 1u << a.tail;
        best.assign(std::size_t{1} << n, 0);
        last.assign(std::size_t{1} << n, 0);
    }

    void relax(std::uint32_t s) {
        int value = -1;
        std::uint8_t choice = 0;
        for (std::uint32_t rest = s; rest; rest &= rest - 1) {
            const int v = std::countr_zero(rest);
            const std::uint32_t without = s & ~(1u << v);
            const int cand = best[without] + std::popcount(in_mask[v] & without);
            if (cand > value) {
                value = cand;
                choice = static_cast<std::uint8_t>(v);
            }
        }
        best[s] = static_cast<std::uint16_t>(value);
        last[s] = choice;
    }

    OracleResult extract() const {
        OracleResult r;
        const std::uint32_t full = n == 0 ? 0u : static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1);
        r.a = best[full];
        r.witness.order.assign(static_cast<std::size_t>(n), 0);
        std::uint32_t s = full;
        for (Vertex pos = n - 1; pos >= 0; --pos) {
            const Vertex v = last[s];
            r.witness.order[pos] = v;
            s &= ~(1u << v);
        }
        r.witness.forward_arcs = r.a;
        return r;
    }
};

} // namespace

OracleResult oracle_max_acyclic_serial(const OrientedGraph& g, Vertex cap) {
    SubsetTable t(g, cap);
    const std::uint64_t total = std::uint64_t{1} << t.n;
    for (std::uint64_t s = 1; s < total; ++s) t.relax(static_cast<std::uint32_t>(s));
    return t.extract();
}

OracleResult oracle_max_acyclic(const OrientedGraph& g, Vertex cap) {
    SubsetTable t(g, cap);
    const std::uint32_t total = std::uint32_t{1} << t.n;
    if (t.n <= 10) {
        for (std::uint32_t s = 1; s < total; ++s) t.relax(s);
        return t.extract();
    }
    // Subsets grouped by size; a subset only reads smaller ones, so each
    // group is one parallel layer.
    std::vector<std::uint32_t> start(static_cast<std::size_t>(t.n) + 2, 0);
    for (std::uint32_t s = 0; s < total; ++s) ++start[static_cast<std::size_t>(std::popcount(s)) + 1];
    for (std::size_t i = 1; i < start.size(); ++i) start[i] += start[i - 1];
    std::vector<std::uint32_t> by_size(total);
    std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
    for (std::uint32_t s = 0; s < total; ++s) by_size[fill[static_cast<std::size_t>(std::popcount(s))]++] = s;
    for (int layer = 1; layer <= t.n; ++layer) {
        const std::int64_t lo = start[static_cast<std::size_t>(layer)], hi = start[static_cast<std::size_t>(layer) + 1];
#pragma omp parallel for schedule(static)
        for (std::int64_t i = lo; i < hi; ++i) t.relax(by_size[static_cast<std::size_t>(i)]);
    }
    return t.extract();
}

std::int64_t excess_q(const OrientedGraph& g, Vertex cap) {
    return ScoreQ::arcs(oracle_max_acyclic(g, cap).a).q - gamma(g).q;
}

} // namespace asapt
