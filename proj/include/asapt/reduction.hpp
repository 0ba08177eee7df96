#pragma once

#include "asapt/bounds.hpp"
#include "asapt/graph.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace asapt {

// R1, R2 keep the answer at the same k. R3, R4, R5 only carry YES back
// from the reduced instance and lower k.
enum class Rule {
    R1_SmallClique,     // directed triangle hanging off one vertex
    R2_BridgeTriangles, // two triangles sharing a degree-4 vertex
    R3_Degree,          // unbalanced vertex whose removal keeps G connected
    R4_BigClique,       // tournament on >= 4 vertices
    R5_Triplet,         // induced path on three vertices
};

// "R1" .. "R5".
std::string_view rule_token(Rule rule);
std::optional<Rule> parse_rule_token(std::string_view token);

struct ReductionOptions {
    // Whether the tournament and path rules may remove every remaining vertex. The empty
    // remainder is not treated as connected by default.
    bool empty_remainder_connected = false;
};

// Result of applying a rule: the reduced graph, where each vertex came
// from (-1 for a vertex the rule created), and the new parameter.
struct Reduced {
    OrientedGraph graph;
    std::vector<Vertex> to_parent;
    std::int64_t k = 0;
};

struct Rule1Match {
    Vertex x = -1;
    VertexSet s; // the two triangle vertices hanging off x
};

struct Rule2Match {
    Vertex a = -1, b = -1, c = -1, d = -1, e = -1;
};

// --- k accounting -----------------------------------------------------------

std::int64_t rule3_delta(Degrees d);      // 2|d+ - d-| - 1
std::int64_t rule4_delta(std::size_t s);  // 2|S| - 4 (even), 2|S| - 7 (odd)
inline constexpr std::int64_t kRule5Delta = 1;

// --- detection and application ---------------------------------------------
//
// detect_* return the first match in a fixed vertex-id order; apply_*
// re-check the rule's preconditions and throw PreconditionViolated.

std::optional<Rule1Match> detect_rule1(const OrientedGraph& g);
bool rule1_applies(const OrientedGraph& g, const Rule1Match& m);
Reduced apply_rule1(const OrientedGraph& g, const Rule1Match& m, std::int64_t k = 0);

std::optional<Rule2Match> detect_rule2(const OrientedGraph& g);
bool rule2_applies(const OrientedGraph& g, const Rule2Match& m);
// Deletes b, c, d and appends a new vertex x with arcs a->x, x->e, e->a.
Reduced apply_rule2(const OrientedGraph& g, const Rule2Match& m, std::int64_t k = 0);

std::optional<Vertex> detect_rule3(const OrientedGraph& g);
bool rule3_applies(const OrientedGraph& g, Vertex x);
Reduced apply_rule3(const OrientedGraph& g, Vertex x, std::int64_t k);

std::optional<VertexSet> detect_rule4(const OrientedGraph& g, const ReductionOptions& opts = {});
bool rule4_applies(const OrientedGraph& g, const VertexSet& s, const ReductionOptions& opts = {});
Reduced apply_rule4(const OrientedGraph& g, const VertexSet& s, std::int64_t k,
                    const ReductionOptions& opts = {});

std::optional<VertexSet> detect_rule5(const OrientedGraph& g, const ReductionOptions& opts = {});
bool rule5_applies(const OrientedGraph& g, const VertexSet& s, const ReductionOptions& opts = {});
Reduced apply_rule5(const OrientedGraph& g, const VertexSet& s, std::int64_t k,
                    const ReductionOptions& opts = {});

// Ordering of the path g[s] (|s| = 3, underlying graph P3) with both arcs forward.
std::vector<Vertex> path3_ordering(const OrientedGraph& g, const VertexSet& s);

// Puts order_s before order_rest when d+(S) >= d-(S), after it otherwise,
// so every arc on the majority side of the cut becomes forward. Both
// orders use g's vertex ids and together must cover V(g).
WitnessOrdering combine(std::span<const Vertex> order_rest, std::span<const Vertex> order_s,
                        const OrientedGraph& g, const VertexSet& s);

// --- traces -----------------------------------------------------------------

// Vertices in a trace are named by "trace ids": the original ids of the
// input graph, followed by fresh ids for vertices created by R2.
struct RuleApplication {
    Rule rule = Rule::R3_Degree;
    VertexSet removed;
    VertexSet added;
    std::int64_t k_delta = 0;

    // Lift payload, all in trace ids.
    Vertex anchor = -1;            // R1: x.  R3: the removed vertex.
    int sign = 0;                  // R3: sign of d+(x) - d-(x).
    std::vector<Vertex> attachment; // R2: a, b, c, d, e.
    std::vector<Vertex> s_order;    // R1: s1, s2 with x->s1->s2->x. R4/R5: ordering of S.
};

struct TraceGraph {
    OrientedGraph graph;
    std::vector<Vertex> label; // local id -> trace id
};

struct ReductionTrace {
    Instance initial;
    std::vector<RuleApplication> steps;
    // graphs[i] is the graph before steps[i]; graphs.back() is the final graph.
    std::vector<TraceGraph> graphs;
    std::int64_t final_k = 0;
    VertexSet u; // removed by R3, R4, R5

    const TraceGraph& final_graph() const { return graphs.back(); }
    Vertex next_trace_id() const;
};

ReductionTrace start_trace(const Instance& instance);
// Appends `step` (whose ids are local to the current final graph) and the
// reduced graph, translating ids into trace ids.
void append_step(ReductionTrace& trace, RuleApplication step, const Reduced& reduced);

// Replays the trace backwards from an ordering of the final graph (local
// ids), producing an ordering of the initial graph. Throws TraceMismatch.
WitnessOrdering lift_witness(const ReductionTrace& trace, const WitnessOrdering& base);

// --- R1, R3, R4, R5 to exhaustion (decomposition into U + forest) ------------

struct ForestReport {
    bool forest_of_cliques = true;
    bool blocks_at_most_three = true;    // P1
    bool triangles_directed = true;      // P2
    bool one_pair_per_component = true;  // P3
    bool at_most_one_isolated = true;    // P4

    bool all() const {
        return forest_of_cliques && blocks_at_most_three && triangles_directed &&
               one_pair_per_component && at_most_one_isolated;
    }
};

ForestReport forest_report(const OrientedGraph& g, const VertexSet& u);

struct DecomposeOptions {
    ReductionOptions rules;
    // Stop with a certificate as soon as k <= 0.
    bool stop_at_nonpositive_k = true;
};

struct DecomposeResult {
    bool yes_certificate = false;
    ReductionTrace trace;
    VertexSet u;
    ForestReport report; // only meaningful when !yes_certificate
};

// Priority: R3, R1, R4, R5. Throws NotConnected.
DecomposeResult decompose(const Instance& instance, const DecomposeOptions& opts = {});

// Applies the next applicable one of R3, R1, R4, R5, or returns nullopt.
std::optional<std::pair<RuleApplication, Reduced>> reduce_once(const OrientedGraph& g, std::int64_t k,
                                                               const ReductionOptions& opts = {});

// Ordering of a connected graph by reducing it to one vertex and lifting:
// 4 * forward >= gamma(g).q + (sum of k deltas) >= gamma(g).q.
WitnessOrdering guaranteed_witness(const OrientedGraph& g, const ReductionOptions& opts = {});

// R1 and R2 to exhaustion (R1 first). k is unchanged.
ReductionTrace normalize_two_way(const Instance& instance);

} // namespace asapt
