#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace asapt {

using Vertex = std::int32_t;

struct Arc {
    Vertex tail;
    Vertex head;

    friend auto operator<=>(const Arc&, const Arc&) = default;
};

// Sorted, duplicate-free list of vertex ids.
class VertexSet {
public:
    VertexSet() = default;
    VertexSet(std::initializer_list<Vertex> ids);
    explicit VertexSet(std::vector<Vertex> ids);

    static VertexSet range(Vertex n);

    bool contains(Vertex v) const;
    bool empty() const { return ids_.empty(); }
    std::size_t size() const { return ids_.size(); }
    Vertex operator[](std::size_t i) const { return ids_[i]; }
    Vertex front() const { return ids_.front(); }

    auto begin() const { return ids_.begin(); }
    auto end() const { return ids_.end(); }
    const std::vector<Vertex>& ids() const { return ids_; }

    VertexSet united(const VertexSet& other) const;
    VertexSet minus(const VertexSet& other) const;

    friend bool operator==(const VertexSet&, const VertexSet&) = default;
    friend auto operator<=>(const VertexSet& a, const VertexSet& b) { return a.ids_ <=> b.ids_; }

private:
    std::vector<Vertex> ids_;
};

struct Degrees {
    int out = 0;
    int in = 0;

    friend bool operator==(const Degrees&, const Degrees&) = default;
};

struct CutDegrees {
    int leaving = 0;
    int entering = 0;

    int total() const { return leaving + entering; }
};

// Simple digraph without loops, parallel arcs or directed 2-cycles.
// Immutable once built; every removal produces a new graph.
class OrientedGraph {
public:
    OrientedGraph() = default;

    // Throws Error{SelfLoop, TwoCycle, DuplicateArc, VertexOutOfRange}.
    static OrientedGraph build(Vertex n, std::span<const Arc> arcs);
    static OrientedGraph build(Vertex n, std::initializer_list<Arc> arcs) {
        return build(n, std::span<const Arc>(arcs.begin(), arcs.size()));
    }

    Vertex num_vertices() const { return n_; }
    int num_arcs() const { return static_cast<int>(arcs_.size()); }

    // Arcs in construction order.
    const std::vector<Arc>& arcs() const { return arcs_; }

    std::span<const Vertex> out_neighbors(Vertex v) const;
    std::span<const Vertex> in_neighbors(Vertex v) const;
    // Neighbors in the underlying undirected graph, ascending.
    std::span<const Vertex> neighbors(Vertex v) const;

    bool has_arc(Vertex tail, Vertex head) const;
    bool adjacent(Vertex u, Vertex v) const { return has_arc(u, v) || has_arc(v, u); }

    Degrees degrees(Vertex v) const;

    friend bool operator==(const OrientedGraph& a, const OrientedGraph& b);

private:
    Vertex n_ = 0;
    std::vector<Arc> arcs_;
    std::vector<std::int32_t> out_offset_, in_offset_, nbr_offset_;
    std::vector<Vertex> out_, in_, nbr_;

    void check_vertex(Vertex v) const;
};

// Induced subgraph with dense re-indexing; to_parent[new_id] = old_id.
struct Subgraph {
    OrientedGraph graph;
    std::vector<Vertex> to_parent;

    // -1 when the parent vertex is not part of the subgraph.
    std::vector<Vertex> from_parent(Vertex parent_n) const;
};

// Maximal 2-connected pieces of the underlying graph; isolated vertices
// are one-vertex blocks.
struct BlockDecomposition {
    std::vector<VertexSet> blocks;
    VertexSet cut_vertices;
    // blocks_of[v]: indices into `blocks` containing v, ascending.
    std::vector<std::vector<int>> blocks_of;
};

// (d+(S), d-(S)). Throws EmptySet / FullSet.
CutDegrees cut_degrees(const OrientedGraph& g, const VertexSet& s);

// Weakly connected components of g - removed, ordered by minimum id.
std::vector<VertexSet> components(const OrientedGraph& g, const VertexSet& removed = {});

int count_components(const OrientedGraph& g);
bool is_connected(const OrientedGraph& g);

BlockDecomposition blocks(const OrientedGraph& g);

Subgraph induced(const OrientedGraph& g, const VertexSet& s);
Subgraph remove_vertices(const OrientedGraph& g, const VertexSet& s);

// Complement of s in [0, n).
VertexSet complement(const VertexSet& s, Vertex n);

// True when g[s] is a directed 3-cycle (|s| must be 3).
bool is_directed_triangle(const OrientedGraph& g, const VertexSet& s);

} // namespace asapt
