#include "asapt/graph.hpp"

#include "asapt/error.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace asapt {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::TwoCycle: return "TwoCycle";
    case ErrorCode::DuplicateArc: return "DuplicateArc";
    case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::FullSet: return "FullSet";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotPermutation: return "NotPermutation";
    case ErrorCode::NotTournament: return "NotTournament";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::TraceMismatch: return "TraceMismatch";
    case ErrorCode::NotLeafBlock: return "NotLeafBlock";
    case ErrorCode::NotTriangle: return "NotTriangle";
    case ErrorCode::NotForestOfCliques: return "NotForestOfCliques";
    case ErrorCode::InvalidPlan: return "InvalidPlan";
    case ErrorCode::Parse: return "Parse";
    }
    return "Unknown";
}

// --- VertexSet -------------------------------------------------------------

VertexSet::VertexSet(std::initializer_list<Vertex> ids) : VertexSet(std::vector<Vertex>(ids)) {}

VertexSet::VertexSet(std::vector<Vertex> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

VertexSet VertexSet::range(Vertex n) {
    std::vector<Vertex> ids(static_cast<std::size_t>(n));
    std::iota(ids.begin(), ids.end(), 0);
    VertexSet s;
    s.ids_ = std::move(ids);
    return s;
}

bool VertexSet::contains(Vertex v) const {
    return std::binary_search(ids_.begin(), ids_.end(), v);
}

VertexSet VertexSet::united(const VertexSet& other) const {
    VertexSet out;
    std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                   std::back_inserter(out.ids_));
    return out;
}

VertexSet VertexSet::minus(const VertexSet& other) const {
    VertexSet out;
    std::set_difference(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                        std::back_inserter(out.ids_));
    return out;
}

VertexSet complement(const VertexSet& s, Vertex n) { return VertexSet::range(n).minus(s); }

// --- OrientedGraph ---------------------------------------------------------

namespace {

std::string arc_name(const Arc& a) {
    return "(" + std::to_string(a.tail) + "," + std::to_string(a.head) + ")";
}

void fill_csr(Vertex n, const std::vector<std::pair<Vertex, Vertex>>& pairs,
              std::vector<std::int32_t>& offset, std::vector<Vertex>& data) {
    offset.assign(static_cast<std::size_t>(n) + 1, 0);
    for (auto [from, to] : pairs) ++offset[from + 1];
    for (Vertex v = 0; v < n; ++v) offset[v + 1] += offset[v];
    data.assign(pairs.size(), 0);
    std::vector<std::int32_t> fill(offset.begin(), offset.end() - 1);
    for (auto [from, to] : pairs) data[fill[from]++] = to;
    for (Vertex v = 0; v < n; ++v) std::sort(data.begin() + offset[v], data.begin() + offset[v + 1]);
}

} // namespace

OrientedGraph OrientedGraph::build(Vertex n, std::span<const Arc> arcs) {
    if (n < 0) throw Error(ErrorCode::VertexOutOfRange, "negative vertex count");
    OrientedGraph g;
    g.n_ = n;
    g.arcs_.assign(arcs.begin(), arcs.end());

    for (const Arc& a : g.arcs_) {
        if (a.tail < 0 || a.tail >= n || a.head < 0 || a.head >= n)
            throw Error(ErrorCode::VertexOutOfRange, "arc " + arc_name(a));
        if (a.tail == a.head) throw Error(ErrorCode::SelfLoop, "arc " + arc_name(a));
    }

    std::vector<Arc> sorted = g.arcs_;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1]) throw Error(ErrorCode::DuplicateArc, "arc " + arc_name(sorted[i]));
    for (const Arc& a : sorted)
        if (std::binary_search(sorted.begin(), sorted.end(), Arc{a.head, a.tail}))
            throw Error(ErrorCode::TwoCycle, "arc " + arc_name(a) + " and its reverse");

    std::vector<std::pair<Vertex, Vertex>> out, in, both;
    out.reserve(sorted.size());
    in.reserve(sorted.size());
    both.reserve(2 * sorted.size());
    for (const Arc& a : sorted) {
        out.emplace_back(a.tail, a.head);
        in.emplace_back(a.head, a.tail);
        both.emplace_back(a.tail, a.head);
        both.emplace_back(a.head, a.tail);
    }
    fill_csr(n, out, g.out_offset_, g.out_);
    fill_csr(n, in, g.in_offset_, g.in_);
    fill_csr(n, both, g.nbr_offset_, g.nbr_);
    return g;
}

void OrientedGraph::check_vertex(Vertex v) const {
    if (v < 0 || v >= n_) throw Error(ErrorCode::VertexOutOfRange, "vertex " + std::to_string(v));
}

std::span<const Vertex> OrientedGraph::out_neighbors(Vertex v) const {
    check_vertex(v);
    return {out_.data() + out_offset_[v], static_cast<std::size_t>(out_offset_[v + 1] - out_offset_[v])};
}

std::span<const Vertex> OrientedGraph::in_neighbors(Vertex v) const {
    check_vertex(v);
    return {in_.data() + in_offset_[v], static_cast<std::size_t>(in_offset_[v + 1] - in_offset_[v])};
}

std::span<const Vertex> OrientedGraph::neighbors(Vertex v) const {
    check_vertex(v);
    return {nbr_.data() + nbr_offset_[v], static_cast<std::size_t>(nbr_offset_[v + 1] - nbr_offset_[v])};
}

bool OrientedGraph::has_arc(Vertex tail, Vertex head) const {
    auto out = out_neighbors(tail);
    return std::binary_search(out.begin(), out.end(), head);
}

Degrees OrientedGraph::degrees(Vertex v) const {
    return {static_cast<int>(out_neighbors(v).size()), static_cast<int>(in_neighbors(v).size())};
}

bool operator==(const OrientedGraph& a, const OrientedGraph& b) {
    if (a.n_ != b.n_ || a.arcs_.size() != b.arcs_.size()) return false;
    return a.out_ == b.out_ && a.out_offset_ == b.out_offset_;
}

// --- structural queries ----------------------------------------------------

CutDegrees cut_degrees(const OrientedGraph& g, const VertexSet& s) {
    if (s.empty()) throw Error(ErrorCode::EmptySet, "cut of the empty set");
    if (static_cast<Vertex>(s.size()) >= g.num_vertices())
        throw Error(ErrorCode::FullSet, "cut of the full vertex set");
    std::vector<char> in_s(static_cast<std::size_t>(g.num_vertices()), 0);
    for (Vertex v : s) {
        if (v < 0 || v >= g.num_vertices()) throw Error(ErrorCode::VertexOutOfRange, "vertex " + std::to_string(v));
        in_s[v] = 1;
    }
    CutDegrees d;
    for (const Arc& a : g.arcs()) {
        if (in_s[a.tail] && !in_s[a.head]) ++d.leaving;
        if (!in_s[a.tail] && in_s[a.head]) ++d.entering;
    }
    return d;
}

std::vector<VertexSet> components(const OrientedGraph& g, const VertexSet& removed) {
    const Vertex n = g.num_vertices();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (Vertex v : removed)
        if (v >= 0 && v < n) seen[v] = 1;

    std::vector<VertexSet> out;
    std::vector<Vertex> stack;
    for (Vertex root = 0; root < n; ++root) {
        if (seen[root]) continue;
        std::vector<Vertex> comp;
        seen[root] = 1;
        stack.push_back(root);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (Vertex w : g.neighbors(v)) {
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        out.emplace_back(std::move(comp));
    }
    return out;
}

int count_components(const OrientedGraph& g) { return static_cast<int>(components(g).size()); }

bool is_connected(const OrientedGraph& g) { return count_components(g) == 1; }

BlockDecomposition blocks(const OrientedGraph& g) {
    const Vertex n = g.num_vertices();
    std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
    std::vector<Vertex> vstack;
    std::vector<VertexSet> found;

    struct Frame {
        Vertex v;
        Vertex parent;
        std::size_t next;
    };
    std::vector<Frame> frames;
    int clock = 0;

    for (Vertex root = 0; root < n; ++root) {
        if (disc[root] != -1) continue;
        if (g.neighbors(root).empty()) {
            disc[root] = clock++;
            found.push_back(VertexSet{root});
            continue;
        }
        disc[root] = low[root] = clock++;
        vstack.push_back(root);
        frames.push_back({root, -1, 0});
        while (!frames.empty()) {
            Frame& f = frames.back();
            auto nbrs = g.neighbors(f.v);
            if (f.next < nbrs.size()) {
                Vertex w = nbrs[f.next++];
                if (disc[w] == -1) {
                    disc[w] = low[w] = clock++;
                    vstack.push_back(w);
                    frames.push_back({w, f.v, 0});
                } else if (w != f.parent) {
                    low[f.v] = std::min(low[f.v], disc[w]);
                }
                continue;
            }
            Vertex child = f.v;
            Vertex parent = f.parent;
            frames.pop_back();
            if (parent == -1) continue;
            low[parent] = std::min(low[parent], low[child]);
            if (low[child] >= disc[parent]) {
                std::vector<Vertex> block{parent};
                while (true) {
                    Vertex x = vstack.back();
                    vstack.pop_back();
                    block.push_back(x);
                    if (x == child) break;
                }
                found.emplace_back(std::move(block));
            }
        }
        vstack.clear();
    }

    std::sort(found.begin(), found.end());
    BlockDecomposition bd;
    bd.blocks = std::move(found);
    bd.blocks_of.assign(static_cast<std::size_t>(n), {});
    for (int b = 0; b < static_cast<int>(bd.blocks.size()); ++b)
        for (Vertex v : bd.blocks[b]) bd.blocks_of[v].push_back(b);
    std::vector<Vertex> cuts;
    for (Vertex v = 0; v < n; ++v)
        if (bd.blocks_of[v].size() > 1) cuts.push_back(v);
    bd.cut_vertices = VertexSet(std::move(cuts));
    return bd;
}

std::vector<Vertex> Subgraph::from_parent(Vertex parent_n) const {
    std::vector<Vertex> map(static_cast<std::size_t>(parent_n), -1);
    for (Vertex i = 0; i < static_cast<Vertex>(to_parent.size()); ++i) map[to_parent[i]] = i;
    return map;
}

Subgraph induced(const OrientedGraph& g, const VertexSet& s) {
    Subgraph sub;
    sub.to_parent = s.ids();
    std::vector<Vertex> map(static_cast<std::size_t>(g.num_vertices()), -1);
    for (Vertex i = 0; i < static_cast<Vertex>(s.size()); ++i) {
        if (s[i] < 0 || s[i] >= g.num_vertices())
            throw Error(ErrorCode::VertexOutOfRange, "vertex " + std::to_string(s[i]));
        map[s[i]] = i;
    }
    std::vector<Arc> arcs;
    for (const Arc& a : g.arcs())
        if (map[a.tail] >= 0 && map[a.head] >= 0) arcs.push_back({map[a.tail], map[a.head]});
    sub.graph = OrientedGraph::build(static_cast<Vertex>(s.size()), arcs);
    return sub;
}

Subgraph remove_vertices(const OrientedGraph& g, const VertexSet& s) {
    return induced(g, complement(s, g.num_vertices()));
}

bool is_directed_triangle(const OrientedGraph& g, const VertexSet& s) {
    if (s.size() != 3) return false;
    const Vertex a = s[0], b = s[1], c = s[2];
    return (g.has_arc(a, b) && g.has_arc(b, c) && g.has_arc(c, a)) ||
           (g.has_arc(b, a) && g.has_arc(c, b) && g.has_arc(a, c));
}

} // namespace asapt
