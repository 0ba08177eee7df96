#include "asapt/kernel.hpp"

#include "asapt/error.hpp"

#include <algorithm>
#include <string>

namespace asapt {

std::array<Arc, 2> label_and_pick(const OrientedGraph& g, const std::array<Vertex, 3>& triangle,
                                  const std::array<int, 3>& labels) {
    if (!is_directed_triangle(g, VertexSet{triangle[0], triangle[1], triangle[2]}))
        throw Error(ErrorCode::NotTriangle, "vertices do not induce a directed 3-cycle");
    auto label_of = [&](Vertex v) {
        return labels[static_cast<std::size_t>(std::find(triangle.begin(), triangle.end(), v) - triangle.begin())];
    };
    std::vector<Arc> arcs;
    for (Vertex a : triangle)
        for (Vertex b : triangle)
            if (g.has_arc(a, b)) arcs.push_back({a, b});
    // Drop candidates: arcs pointing to a smaller id first, then the rest,
    // each ascending. Dropping any one arc of the cycle leaves a path.
    std::sort(arcs.begin(), arcs.end(), [](const Arc& x, const Arc& y) {
        const bool xb = x.tail > x.head, yb = y.tail > y.head;
        if (xb != yb) return xb;
        return x < y;
    });
    for (std::size_t drop = 0; drop < 3; ++drop) {
        std::array<Arc, 2> keep{};
        std::size_t n = 0;
        bool fine = true;
        for (std::size_t i = 0; i < 3; ++i) {
            if (i == drop) continue;
            if (label_of(arcs[i].tail) == 1 && label_of(arcs[i].head) == 0) fine = false;
            keep[n++] = arcs[i];
        }
        if (fine) {
            std::sort(keep.begin(), keep.end());
            return keep;
        }
    }
    throw Error(ErrorCode::NotTriangle, "no admissible arc pair");
}

ForestView make_forest_view(const OrientedGraph& g, const VertexSet& u) {
    ForestView f;
    f.u = u;
    f.in_u.assign(static_cast<std::size_t>(g.num_vertices()), 0);
    for (Vertex v : u) f.in_u[v] = 1;
    const Subgraph sub = remove_vertices(g, u);
    const BlockDecomposition local = blocks(sub.graph);
    for (const VertexSet& b : local.blocks) {
        std::vector<Vertex> ids;
        for (Vertex v : b) ids.push_back(sub.to_parent[v]);
        f.blocks.blocks.emplace_back(std::move(ids));
    }
    f.blocks.blocks_of.assign(static_cast<std::size_t>(g.num_vertices()), {});
    for (int b = 0; b < static_cast<int>(f.blocks.blocks.size()); ++b)
        for (Vertex v : f.blocks.blocks[b]) f.blocks.blocks_of[v].push_back(b);
    f.comp_of.assign(static_cast<std::size_t>(g.num_vertices()), -1);
    for (const VertexSet& c : components(sub.graph)) {
        std::vector<Vertex> ids;
        for (Vertex v : c) ids.push_back(sub.to_parent[v]);
        const int index = static_cast<int>(f.comps.size());
        for (Vertex v : ids) f.comp_of[v] = index;
        f.comps.emplace_back(std::move(ids));
    }
    return f;
}

namespace {

bool in_dangerous_triangle(const OrientedGraph& g, const ForestView& f, Vertex u, Vertex x) {
    for (int b : f.blocks.blocks_of[x]) {
        const VertexSet& block = f.blocks.blocks[b];
        if (block.size() == 2 && is_directed_triangle(g, block.united({u}))) return true;
    }
    return false;
}

} // namespace

std::vector<DangerousTriangle> dangerous_triangles(const OrientedGraph& g, const ForestView& f) {
    std::vector<DangerousTriangle> out;
    for (Vertex u : f.u)
        for (const VertexSet& block : f.blocks.blocks)
            if (block.size() == 2 && is_directed_triangle(g, block.united({u}))) out.push_back({u, block});
    return out;
}

TuCount t_u_count(const OrientedGraph& g, const ForestView& f, Vertex u) {
    TuCount t;
    t.per_component.assign(f.comps.size(), 0);
    for (Vertex x : g.neighbors(u)) {
        if (f.in_u[x] || in_dangerous_triangle(g, f, u, x)) continue;
        ++t.total;
        ++t.per_component[f.comp_of[x]];
    }
    return t;
}

std::optional<Vertex> shortcut_degree_u(const OrientedGraph& g, const ForestView& f, std::int64_t k) {
    for (Vertex u : f.u)
        if (t_u_count(g, f, u).total >= 4 * k) return u;
    return std::nullopt;
}

int count_all_dangerous_components(const OrientedGraph& g, const ForestView& f) {
    int s = 0;
    for (const VertexSet& comp : f.comps) {
        bool touches = false, all_dangerous = true;
        for (Vertex x : comp) {
            for (Vertex u : g.neighbors(x)) {
                if (!f.in_u[u]) continue;
                touches = true;
                if (!in_dangerous_triangle(g, f, u, x)) all_dangerous = false;
            }
        }
        if (touches && all_dangerous) ++s;
    }
    return s;
}

bool shortcut_danger(const OrientedGraph& g, const ForestView& f, std::int64_t k) {
    return count_all_dangerous_components(g, f) >= k;
}

// --- block profile ------------------------------------------------------------

BlockProfile classify_blocks(Vertex n, const std::vector<VertexSet>& blocks) {
    std::vector<std::vector<int>> blocks_of(static_cast<std::size_t>(n));
    for (int b = 0; b < static_cast<int>(blocks.size()); ++b)
        for (Vertex v : blocks[b]) blocks_of[v].push_back(b);

    // Vertices of block b that also lie in a block other than b and other.
    auto outside = [&](int b, int other) {
        int count = 0;
        for (Vertex v : blocks[b]) {
            for (int c : blocks_of[v]) {
                if (c != b && c != other) {
                    ++count;
                    break;
                }
            }
        }
        return count;
    };

    BlockProfile p;
    p.vertices = 0;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (const VertexSet& b : blocks)
        for (Vertex v : b)
            if (!seen[v]) {
                seen[v] = 1;
                ++p.vertices;
            }

    p.kinds.assign(blocks.size(), BlockKind::Inner);
    for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
        if (outside(b, -1) <= 1) {
            p.kinds[b] = BlockKind::Leaf;
            ++p.leaf_blocks;
            continue;
        }
        bool path = false;
        for (Vertex c : blocks[b]) {
            if (blocks_of[c].size() != 2) continue;
            const int other = blocks_of[c][0] == b ? blocks_of[c][1] : blocks_of[c][0];
            if (outside(b, other) <= 1 && outside(other, b) <= 1) {
                path = true;
                break;
            }
        }
        if (path) {
            p.kinds[b] = BlockKind::Path;
            ++p.path_blocks;
        }
    }
    return p;
}

BlockProfile block_profile(const OrientedGraph& forest) {
    const BlockDecomposition bd = blocks(forest);
    for (const VertexSet& b : bd.blocks) {
        if (b.size() > 3) throw Error(ErrorCode::NotForestOfCliques, "block larger than three vertices");
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = i + 1; j < b.size(); ++j)
                if (!forest.adjacent(b[i], b[j])) throw Error(ErrorCode::NotForestOfCliques, "block is not a clique");
    }
    return classify_blocks(forest.num_vertices(), bd.blocks);
}

// --- kernelization --------------------------------------------------------------

SizeBounds kernel_size_bounds(std::int64_t k) {
    const std::int64_t w = 12 * k * k + 2 * k;
    return {20 * w + 3 * k, 9 * k * k + 60 * w};
}

std::string_view to_string(YesReason r) {
    switch (r) {
    case YesReason::None: return "none";
    case YesReason::NonPositiveK: return "nonpositive-k";
    case YesReason::Decomposition: return "decomposition";
    case YesReason::DegreeU: return "shortcut-degree-u";
    case YesReason::Danger: return "shortcut-danger";
    }
    return "unknown";
}

KernelResult kernelize(const Instance& instance, const KernelOptions& opts) {
    if (!is_connected(instance.graph)) throw Error(ErrorCode::NotConnected, "kernelize needs a connected graph");
    KernelResult r;
    r.bounds = kernel_size_bounds(std::max<std::int64_t>(instance.k, 0));

    if (instance.k <= 0) {
        r.verdict = KernelVerdict::Yes;
        r.reason = YesReason::NonPositiveK;
        r.witness = guaranteed_witness(instance.graph);
        r.normalization = start_trace(instance);
        r.kernel = instance;
        r.kernel_labels = r.normalization.final_graph().label;
        return r;
    }

    r.normalization = normalize_two_way(instance);
    const TraceGraph& normalized = r.normalization.final_graph();
    r.kernel = Instance{normalized.graph, instance.k};
    r.kernel_labels = normalized.label;

    const DecomposeResult d = decompose(r.kernel);
    r.decomposition = d.trace;
    if (d.yes_certificate) {
        const WitnessOrdering base = guaranteed_witness(d.trace.final_graph().graph);
        const WitnessOrdering on_kernel = lift_witness(d.trace, base);
        r.verdict = KernelVerdict::Yes;
        r.reason = YesReason::Decomposition;
        r.witness = lift_witness(r.normalization, on_kernel);
        return r;
    }

    r.u = d.u;
    if (opts.shortcuts) {
        const ForestView view = make_forest_view(r.kernel.graph, r.u);
        if (shortcut_degree_u(r.kernel.graph, view, instance.k)) {
            r.verdict = KernelVerdict::Yes;
            r.reason = YesReason::DegreeU;
            return r;
        }
        if (shortcut_danger(r.kernel.graph, view, instance.k)) {
            r.verdict = KernelVerdict::Yes;
            r.reason = YesReason::Danger;
            return r;
        }
    }

    r.verdict = KernelVerdict::Kernel;
    r.within_bounds = r.kernel.graph.num_vertices() <= r.bounds.vertices && r.kernel.graph.num_arcs() <= r.bounds.arcs;
    return r;
}

} // namespace asapt
