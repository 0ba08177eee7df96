#pragma once

#include "asapt/bounds.hpp"
#include "asapt/graph.hpp"
#include "asapt/reduction.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace asapt {

// Gap i is the slot between u_i and u_{i+1} of an ordering u_1..u_t of U
// (gap 0 before u_1, gap t after u_t).
struct GapVector {
    Vertex owner = -1;
    std::vector<int> values; // index = gap, size t + 1
};

struct UOrdering {
    std::vector<Vertex> order;
    int q = 0; // arcs u_i -> u_j of g[U] with i < j
};

UOrdering make_u_ordering(const OrientedGraph& g, std::vector<Vertex> order);

// values[i] = #{j <= i : u_j -> x} + #{j > i : x -> u_j}  (1-based j).
GapVector init_gap_vector(const OrientedGraph& g, std::span<const Vertex> u_order, Vertex x);

// Largest number of block arcs that are forward in an internal order
// respecting the gaps, where an arc v->w also needs gap(v) <= gap(w).
// `gaps` is aligned with `block` (2 or 3 vertices).
int block_beta(const OrientedGraph& g, std::span<const Vertex> block, std::span<const int> gaps);

// Forest G - U with a fixed peeling schedule, shared by every ordering of U.
class ForestLayout {
public:
    struct PeelStep {
        int block;     // index into blocks().blocks
        Vertex anchor;
    };

    ForestLayout(const OrientedGraph& g, VertexSet u);

    const OrientedGraph& graph() const { return *g_; }
    const VertexSet& u() const { return u_; }
    bool in_u(Vertex v) const { return in_u_[v] != 0; }
    // Blocks of G - U in g's ids; blocks_of is empty for vertices of U.
    const BlockDecomposition& blocks() const { return blocks_; }
    // Post-order over each component's block tree, rooted at the block
    // holding the component's smallest vertex.
    const std::vector<PeelStep>& schedule() const { return schedule_; }
    // One vertex per component of G - U: what remains after peeling.
    const std::vector<Vertex>& representatives() const { return representatives_; }

private:
    const OrientedGraph* g_;
    VertexSet u_;
    std::vector<char> in_u_;
    BlockDecomposition blocks_;
    std::vector<PeelStep> schedule_;
    std::vector<Vertex> representatives_;
};

// Working state of the block-peeling program for one ordering of U.
class DpState {
public:
    DpState(const ForestLayout& layout, std::span<const Vertex> u_order);

    int num_gaps() const { return static_cast<int>(u_order_.size()) + 1; }
    const GapVector& vector_of(Vertex x) const;

    // Folds `block` into `anchor`: alpha_i = max over the other vertices'
    // gaps of (sum of their vectors + beta). Every non-anchor vertex must
    // belong to no other unpeeled block. Throws NotLeafBlock.
    void peel_block(const VertexSet& block, Vertex anchor);

    // Runs the layout's schedule.
    void peel_all();

    // Q + sum over component representatives of max_i values[i].
    int total() const;

    // Ordering of the whole graph placing each forest vertex in its chosen
    // gap; its forward-arc count equals total() after peel_all().
    std::vector<Vertex> reconstruct() const;

private:
    struct Choice {
        std::vector<int> gaps;  // aligned with Record::block
        std::vector<int> order; // internal order, indices into Record::block
    };
    struct Record {
        std::vector<Vertex> block; // anchor first
        std::vector<Choice> by_anchor_gap;
    };

    const ForestLayout* layout_;
    std::vector<Vertex> u_order_;
    int q_ = 0;
    std::vector<GapVector> vec_;
    std::vector<int> open_blocks_; // unpeeled blocks containing each vertex
    std::vector<char> peeled_;     // per block
    std::vector<Record> records_;
};

// Builds a DpState for `u_order`, peels everything and returns total().
int solve_for_ordering(const OrientedGraph& g, const VertexSet& u, std::span<const Vertex> u_order);

struct DpOptions {
    int max_u = 11;      // refuse |U|! enumerations beyond this (TooLarge)
    bool parallel = true;
};

struct OrderingSearch {
    int best = -1;
    std::vector<Vertex> best_order; // lexicographically first among the maxima
    std::uint64_t evaluated = 0;
};

// Maximum of solve_for_ordering over all |U|! orderings.
OrderingSearch search_orderings(const OrientedGraph& g, const VertexSet& u, const DpOptions& opts = {});
OrderingSearch search_orderings_serial(const OrientedGraph& g, const VertexSet& u, const DpOptions& opts = {});

struct SolveResult {
    bool decision = false;
    WitnessOrdering witness;
    int a_value = 0;            // forward count of the witness
    bool exact = false;         // a_value is a(G) (dynamic program ran)
    bool via_certificate = false;
    DecomposeResult decomposition;
    std::uint64_t orderings = 0;
};

// Decompose; on a certificate lift a witness, otherwise run the dynamic
// program over every ordering of U. Throws NotConnected.
SolveResult solve(const Instance& instance, const DpOptions& opts = {}, const DecomposeOptions& dopts = {});

} // namespace asapt
