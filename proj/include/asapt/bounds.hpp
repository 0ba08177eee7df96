#pragma once

#include "asapt/graph.hpp"

#include <compare>
#include <cstdint>
#include <vector>

namespace asapt {

// A score measured in quarter arcs: value q stands for q/4 arcs.
struct ScoreQ {
    std::int64_t q = 0;

    static constexpr ScoreQ arcs(std::int64_t a) { return {4 * a}; }

    friend constexpr auto operator<=>(ScoreQ, ScoreQ) = default;
    friend constexpr ScoreQ operator+(ScoreQ a, ScoreQ b) { return {a.q + b.q}; }
    friend constexpr ScoreQ operator-(ScoreQ a, ScoreQ b) { return {a.q - b.q}; }
};

// gamma(D) = m/2 + (n - c)/4, with c the number of components.
ScoreQ gamma(const OrientedGraph& g);

// m/2 + (n-1)/4 + k/4 for a connected graph. Throws NotConnected.
ScoreQ threshold(const OrientedGraph& g, std::int64_t k);

// 4 * a_value >= 2m + (n - 1) + k. Throws NotConnected.
bool decide_threshold(const OrientedGraph& g, std::int64_t k, std::int64_t a_value);

struct Instance {
    OrientedGraph graph;
    std::int64_t k = 0;
};

// Throws NotConnected.
Instance make_instance(OrientedGraph g, std::int64_t k);

struct WitnessOrdering {
    std::vector<Vertex> order;
    int forward_arcs = 0;
};

// Arcs (u, v) with u placed before v. Throws NotPermutation.
int count_forward(const OrientedGraph& g, std::span<const Vertex> order);

bool is_permutation_of(std::span<const Vertex> order, Vertex n);

// Recounts the witness, then checks the threshold. Never throws.
bool verify_yes(const Instance& instance, const WitnessOrdering& witness);

struct OracleResult {
    int a = 0;
    WitnessOrdering witness;
};

inline constexpr Vertex kDefaultOracleCap = 20;

// Exact a(G) by dynamic programming over vertex subsets: f(S) is the best
// forward count of an ordering of S, obtained by choosing the last vertex.
// Ties pick the smallest vertex id. Throws TooLarge when n > cap.
// The layered variant evaluates each popcount layer with an OpenMP loop;
// the serial variant sweeps subsets in increasing order and is kept as the
// reference. Both return identical results.
OracleResult oracle_max_acyclic(const OrientedGraph& g, Vertex cap = kDefaultOracleCap);
OracleResult oracle_max_acyclic_serial(const OrientedGraph& g, Vertex cap = kDefaultOracleCap);

// 4 * a(G) - gamma(G).q for a graph under the oracle cap.
std::int64_t excess_q(const OrientedGraph& g, Vertex cap = kDefaultOracleCap);

} // namespace asapt
