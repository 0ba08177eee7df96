#pragma once

#include "asapt/graph.hpp"
#include "asapt/kernel.hpp"

#include <cstdint>
#include <vector>

namespace asapt {

// splitmix64. Each draw advances the state by 0x9E3779B97F4A7C15 and mixes:
//   z = state
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
// below(b) = high 64 bits of next() * b, bit() = next() >> 63,
// unit() = (next() >> 11) * 2^-53.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    std::uint64_t below(std::uint64_t bound); // uniform in [0, bound)
    bool bit() { return (next() >> 63) != 0; }
    double unit();

private:
    std::uint64_t state_;
};

// Path x_1 .. x_{2t+1} (x_i is id i-1) plus arcs x_3 x_1, x_5 x_3, ...
OrientedGraph gen_Ht(int t);

// For each pair i < j in increasing order, one bit picks i->j (0) or j->i (1).
OrientedGraph gen_tournament(Vertex n, std::uint64_t seed);

// Random recursive spanning tree on shuffled ids, then each remaining pair
// i < j joins with probability `density`; every edge gets a random direction.
OrientedGraph gen_connected_oriented(Vertex n, double density, std::uint64_t seed);

// A block of a forest-of-cliques plan. A block with parent -1 starts a new
// component; otherwise slot 0 of this block is glued to vertex
// `parent_slot` of block `parent`, which must come earlier in the plan.
struct BlockSpec {
    int size = 3;
    int parent = -1;
    int parent_slot = 0;
};

struct ForestPlanOptions {
    bool cyclic_triangles = true; // 3-blocks as directed 3-cycles, else random
    bool strict_p3 = false;       // at most one 2-block per component
};

struct GeneratedForest {
    OrientedGraph graph;
    std::vector<VertexSet> blocks; // as laid out by the plan
    BlockProfile profile;          // classification of the planned blocks
};

// Vertex ids follow the plan: each block's new vertices in order. Throws
// InvalidPlan for sizes outside {1,2,3}, forward or out-of-range parents,
// gluing onto or from a one-vertex block, or a strict_p3 violation.
GeneratedForest gen_forest_of_cliques(const std::vector<BlockSpec>& plan, std::uint64_t seed,
                                      const ForestPlanOptions& opts = {});

// A random valid plan with `num_blocks` blocks; about one block in
// `new_component_every` starts a new component (0 = single tree).
std::vector<BlockSpec> random_forest_plan(int num_blocks, std::uint64_t seed, int new_component_every = 0);

} // namespace asapt
