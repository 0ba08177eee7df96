#pragma once

#include "asapt/bounds.hpp"
#include "asapt/graph.hpp"
#include "asapt/reduction.hpp"

#include <array>
#include <optional>
#include <vector>

namespace asapt {

// --- labeled triangles ----------------------------------------------------------

// Two arcs of a directed 3-cycle forming an acyclic subgraph with no arc
// from a vertex labeled 1 to a vertex labeled 0. `labels` is aligned with
// `triangle`. Throws NotTriangle.
std::array<Arc, 2> label_and_pick(const OrientedGraph& g, const std::array<Vertex, 3>& triangle,
                                  const std::array<int, 3>& labels);

// --- dangerous triangles and the Yes-shortcuts ----------------------------------

struct DangerousTriangle {
    Vertex u = -1;
    VertexSet block; // {a, b}, a two-vertex block of G - U
};

// The forest G - U in g's ids, with blocks and components.
struct ForestView {
    VertexSet u;
    std::vector<char> in_u;
    BlockDecomposition blocks;    // blocks of G - U in g's ids
    std::vector<VertexSet> comps; // components of G - U in g's ids
    std::vector<int> comp_of;     // -1 for U
};

ForestView make_forest_view(const OrientedGraph& g, const VertexSet& u);

std::vector<DangerousTriangle> dangerous_triangles(const OrientedGraph& g, const ForestView& f);

struct TuCount {
    int total = 0;
    std::vector<int> per_component; // aligned with ForestView::comps
};

// Neighbors of u in G - U not lying in a dangerous triangle with u.
TuCount t_u_count(const OrientedGraph& g, const ForestView& f, Vertex u);

// Some u in U has t_u >= 4k.
std::optional<Vertex> shortcut_degree_u(const OrientedGraph& g, const ForestView& f, std::int64_t k);

// Components of G - U that touch U and in which every (neighbor, u)
// adjacency lies inside a dangerous triangle with u.
int count_all_dangerous_components(const OrientedGraph& g, const ForestView& f);
// s >= k.
bool shortcut_danger(const OrientedGraph& g, const ForestView& f, std::int64_t k);

// --- leaf-blocks and path-blocks ----------------------------------------------

enum class BlockKind { Leaf, Path, Inner };

struct BlockProfile {
    int leaf_blocks = 0; // l
    int path_blocks = 0; // p: path-blocks that are not leaf-blocks
    std::vector<BlockKind> kinds; // aligned with the block list
    Vertex vertices = 0;

    bool within_bound() const { return vertices <= 8 * leaf_blocks + 2 * path_blocks; }
};

// Classifies an explicit block list (blocks of at most three vertices).
BlockProfile classify_blocks(Vertex n, const std::vector<VertexSet>& blocks);

// Throws NotForestOfCliques when a block is larger than three or not a clique.
BlockProfile block_profile(const OrientedGraph& forest);

// --- kernelization ----------------------------------------------------------------

struct SizeBounds {
    std::int64_t vertices = 0; // 20(12k^2 + 2k) + 3k
    std::int64_t arcs = 0;     // 9k^2 + 60(12k^2 + 2k)
};

SizeBounds kernel_size_bounds(std::int64_t k);

enum class KernelVerdict { Yes, Kernel };
enum class YesReason { None, NonPositiveK, Decomposition, DegreeU, Danger };

std::string_view to_string(YesReason r);

struct KernelOptions {
    bool shortcuts = true;
};

struct KernelResult {
    KernelVerdict verdict = KernelVerdict::Kernel;
    YesReason reason = YesReason::None;
    std::optional<WitnessOrdering> witness; // on the input graph, when constructive
    ReductionTrace normalization;           // two-way rules R1, R2
    std::optional<ReductionTrace> decomposition; // on the kernel, when it ran
    Instance kernel;                        // the normalized instance
    std::vector<Vertex> kernel_labels;      // kernel vertex -> trace id
    VertexSet u;                            // in kernel ids
    SizeBounds bounds;
    bool within_bounds = true;
};

// Throws NotConnected.
KernelResult kernelize(const Instance& instance, const KernelOptions& opts = {});

} // namespace asapt
