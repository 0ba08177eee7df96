#include "asapt/dp_solver.hpp"

#include "asapt/error.hpp"

#include <algorithm>
#include <array>
#include <list>
#include <numeric>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace asapt {

UOrdering make_u_ordering(const OrientedGraph& g, std::vector<Vertex> order) {
    UOrdering u;
    std::vector<int> pos(static_cast<std::size_t>(g.num_vertices()), -1);
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
    for (const Arc& a : g.arcs())
        if (pos[a.tail] >= 0 && pos[a.head] >= 0 && pos[a.tail] < pos[a.head]) ++u.q;
    u.order = std::move(order);
    return u;
}

GapVector init_gap_vector(const OrientedGraph& g, std::span<const Vertex> u_order, Vertex x) {
    if (std::find(u_order.begin(), u_order.end(), x) != u_order.end())
        throw Error(ErrorCode::PreconditionViolated, "gap vector owner lies in U");
    GapVector gv;
    gv.owner = x;
    gv.values.assign(u_order.size() + 1, 0);
    int value = 0;
    for (Vertex u : u_order)
        if (g.has_arc(x, u)) ++value;
    gv.values[0] = value;
    for (std::size_t i = 1; i <= u_order.size(); ++i) {
        const Vertex u = u_order[i - 1];
        if (g.has_arc(u, x)) ++value;
        if (g.has_arc(x, u)) --value;
        gv.values[i] = value;
    }
    return gv;
}

namespace {

// beta together with the first internal order attaining it.
int beta_with_order(const OrientedGraph& g, std::span<const Vertex> block, std::span<const int> gaps,
                    std::vector<int>* best_order) {
    const int s = static_cast<int>(block.size());
    std::array<int, 3> perm{0, 1, 2};
    int best = -1;
    do {
        bool consistent = true;
        for (int p = 0; p + 1 < s && consistent; ++p)
            if (gaps[perm[p]] > gaps[perm[p + 1]]) consistent = false;
        if (!consistent) continue;
        int forward = 0;
        for (int p = 0; p < s; ++p)
            for (int q = p + 1; q < s; ++q)
                if (g.has_arc(block[perm[p]], block[perm[q]])) ++forward;
        if (forward > best) {
            best = forward;
            if (best_order) best_order->assign(perm.begin(), perm.begin() + s);
        }
    } while (std::next_permutation(perm.begin(), perm.begin() + s));
    return best;
}

int cmp(int a, int b) { return (a > b) - (a < b); }

} // namespace

int block_beta(const OrientedGraph& g, std::span<const Vertex> block, std::span<const int> gaps) {
    if (block.size() < 2 || block.size() > 3 || gaps.size() != block.size())
        throw Error(ErrorCode::PreconditionViolated, "beta needs a block of two or three vertices");
    return beta_with_order(g, block, gaps, nullptr);
}

// --- ForestLayout -------------------------------------------------------------

ForestLayout::ForestLayout(const OrientedGraph& g, VertexSet u) : g_(&g), u_(std::move(u)) {
    const Vertex n = g.num_vertices();
    in_u_.assign(static_cast<std::size_t>(n), 0);
    for (Vertex v : u_) in_u_[v] = 1;

    const Subgraph forest = remove_vertices(g, u_);
    const BlockDecomposition local = asapt::blocks(forest.graph);
    for (const VertexSet& b : local.blocks) {
        if (b.size() > 3)
            throw Error(ErrorCode::NotForestOfCliques, "block with " + std::to_string(b.size()) + " vertices");
        std::vector<Vertex> ids;
        for (Vertex v : b) ids.push_back(forest.to_parent[v]);
        blocks_.blocks.emplace_back(std::move(ids));
    }
    blocks_.blocks_of.assign(static_cast<std::size_t>(n), {});
    for (int b = 0; b < static_cast<int>(blocks_.blocks.size()); ++b)
        for (Vertex v : blocks_.blocks[b]) blocks_.blocks_of[v].push_back(b);
    std::vector<Vertex> cuts;
    for (Vertex v : local.cut_vertices) cuts.push_back(forest.to_parent[v]);
    blocks_.cut_vertices = VertexSet(std::move(cuts));

    // Post-order over the block tree: children of a block are the other
    // blocks hanging off its non-anchor vertices.
    std::vector<char> visited(blocks_.blocks.size(), 0);
    struct Frame {
        int block;
        Vertex anchor;
        std::vector<std::pair<int, Vertex>> children;
        std::size_t next = 0;
    };
    auto make_frame = [&](int b, Vertex anchor) {
        Frame f{b, anchor, {}, 0};
        for (Vertex v : blocks_.blocks[b]) {
            if (v == anchor) continue;
            for (int c : blocks_.blocks_of[v])
                if (c != b) f.children.emplace_back(c, v);
        }
        return f;
    };
    for (const VertexSet& comp : components(forest.graph)) {
        const Vertex root = forest.to_parent[comp.front()];
        representatives_.push_back(root);
        for (int b : blocks_.blocks_of[root]) {
            if (blocks_.blocks[b].size() == 1) continue;
            std::vector<Frame> stack;
            stack.push_back(make_frame(b, root));
            visited[b] = 1;
            while (!stack.empty()) {
                Frame& f = stack.back();
                if (f.next < f.children.size()) {
                    auto [c, v] = f.children[f.next++];
                    if (!visited[c]) {
                        visited[c] = 1;
                        stack.push_back(make_frame(c, v));
                    }
                    continue;
                }
                schedule_.push_back({f.block, f.anchor});
                stack.pop_back();
            }
        }
    }
}

// --- DpState ------------------------------------------------------------------

DpState::DpState(const ForestLayout& layout, std::span<const Vertex> u_order)
    : layout_(&layout), u_order_(u_order.begin(), u_order.end()) {
    const OrientedGraph& g = layout.graph();
    if (VertexSet(u_order_) != layout.u() || u_order_.size() != layout.u().size())
        throw Error(ErrorCode::NotPermutation, "U ordering is not a permutation of U");
    q_ = make_u_ordering(g, u_order_).q;
    vec_.resize(static_cast<std::size_t>(g.num_vertices()));
    open_blocks_.assign(static_cast<std::size_t>(g.num_vertices()), 0);
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        if (layout.in_u(v)) continue;
        vec_[v] = init_gap_vector(g, u_order_, v);
        open_blocks_[v] = static_cast<int>(layout.blocks().blocks_of[v].size());
    }
    peeled_.assign(layout.blocks().blocks.size(), 0);
}

const GapVector& DpState::vector_of(Vertex x) const {
    if (x < 0 || x >= static_cast<Vertex>(vec_.size()) || layout_->in_u(x))
        throw Error(ErrorCode::VertexOutOfRange, "no gap vector for vertex " + std::to_string(x));
    return vec_[x];
}

void DpState::peel_block(const VertexSet& block, Vertex anchor) {
    const auto& all = layout_->blocks().blocks;
    auto it = std::lower_bound(all.begin(), all.end(), block);
    if (it == all.end() || *it != block || block.size() < 2)
        throw Error(ErrorCode::NotLeafBlock, "not a block of the forest");
    const auto index = static_cast<std::size_t>(it - all.begin());
    if (peeled_[index]) throw Error(ErrorCode::NotLeafBlock, "block already peeled");
    if (!block.contains(anchor)) throw Error(ErrorCode::NotLeafBlock, "anchor outside the block");

    Record rec;
    rec.block.push_back(anchor);
    for (Vertex v : block) {
        if (v == anchor) continue;
        if (open_blocks_[v] != 1)
            throw Error(ErrorCode::NotLeafBlock, "vertex " + std::to_string(v) + " still joins other blocks");
        rec.block.push_back(v);
    }

    const OrientedGraph& g = layout_->graph();
    const int t = num_gaps();
    const int s = static_cast<int>(rec.block.size());
    // beta depends on the gaps only through their pairwise comparisons.
    std::array<int, 27> beta_cache;
    std::array<std::vector<int>, 27> order_cache;
    beta_cache.fill(-1);
    auto beta = [&](const std::array<int, 3>& gaps) -> std::pair<int, const std::vector<int>*> {
        const int key = s == 2 ? cmp(gaps[0], gaps[1]) + 1
                               : (cmp(gaps[0], gaps[1]) + 1) * 9 + (cmp(gaps[0], gaps[2]) + 1) * 3 +
                                     (cmp(gaps[1], gaps[2]) + 1);
        if (beta_cache[key] < 0)
            beta_cache[key] = beta_with_order(g, rec.block, std::span<const int>(gaps.data(), s), &order_cache[key]);
        return {beta_cache[key], &order_cache[key]};
    };

    const std::vector<int>& xs = vec_[anchor].values;
    const std::vector<int>& ys = vec_[rec.block[1]].values;
    std::vector<int> alpha(static_cast<std::size_t>(t), -1);
    rec.by_anchor_gap.resize(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i) {
        Choice best_choice;
        int best = -1;
        if (s == 2) {
            for (int j = 0; j < t; ++j) {
                auto [b, ord] = beta({i, j, 0});
                const int value = xs[i] + ys[j] + b;
                if (value > best) {
                    best = value;
                    best_choice = {{i, j}, *ord};
                }
            }
        } else {
            const std::vector<int>& zs = vec_[rec.block[2]].values;
            for (int j = 0; j < t; ++j) {
                for (int h = 0; h < t; ++h) {
                    auto [b, ord] = beta({i, j, h});
                    const int value = xs[i] + ys[j] + zs[h] + b;
                    if (value > best) {
                        best = value;
                        best_choice = {{i, j, h}, *ord};
                    }
                }
            }
        }
        alpha[i] = best;
        rec.by_anchor_gap[i] = std::move(best_choice);
    }

    vec_[anchor].values = std::move(alpha);
    for (Vertex v : block) --open_blocks_[v];
    peeled_[index] = 1;
    records_.push_back(std::move(rec));
}

void DpState::peel_all() {
    for (const auto& step : layout_->schedule())
        peel_block(layout_->blocks().blocks[step.block], step.anchor);
}

int DpState::total() const {
    int sum = q_;
    for (Vertex r : layout_->representatives()) {
        const auto& v = vec_[r].values;
        sum += *std::max_element(v.begin(), v.end());
    }
    return sum;
}

std::vector<Vertex> DpState::reconstruct() const {
    const Vertex n = layout_->graph().num_vertices();
    const int t = num_gaps();
    std::vector<int> gap(static_cast<std::size_t>(n), -1);
    std::vector<std::list<Vertex>> lists(static_cast<std::size_t>(t));
    std::vector<std::list<Vertex>::iterator> where(static_cast<std::size_t>(n));

    for (Vertex r : layout_->representatives()) {
        const auto& v = vec_[r].values;
        gap[r] = static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
        where[r] = lists[gap[r]].insert(lists[gap[r]].end(), r);
    }
    for (auto rec = records_.rbegin(); rec != records_.rend(); ++rec) {
        const Vertex anchor = rec->block[0];
        if (gap[anchor] < 0) throw Error(ErrorCode::TraceMismatch, "peel records out of order");
        const Choice& c = rec->by_anchor_gap[gap[anchor]];
        for (std::size_t i = 1; i < rec->block.size(); ++i) gap[rec->block[i]] = c.gaps[i];

        const auto anchor_at = std::find(c.order.begin(), c.order.end(), 0);
        auto cursor = where[anchor];
        for (auto p = c.order.begin(); p != c.order.end(); ++p) {
            if (*p == 0) continue;
            const Vertex v = rec->block[*p];
            auto& list = lists[gap[v]];
            if (gap[v] != gap[anchor]) {
                where[v] = list.insert(list.end(), v);
            } else if (p < anchor_at) {
                where[v] = list.insert(where[anchor], v);
            } else {
                where[v] = list.insert(std::next(cursor), v);
                cursor = where[v];
            }
        }
    }

    std::vector<Vertex> order;
    order.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < t; ++i) {
        order.insert(order.end(), lists[i].begin(), lists[i].end());
        if (i < static_cast<int>(u_order_.size())) order.push_back(u_order_[i]);
    }
    return order;
}

int solve_for_ordering(const OrientedGraph& g, const VertexSet& u, std::span<const Vertex> u_order) {
    const ForestLayout layout(g, u);
    DpState st(layout, u_order);
    st.peel_all();
    return st.total();
}

// --- enumeration over orderings of U ------------------------------------------

namespace {

std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

// rank-th permutation of `sorted` in lexicographic order.
std::vector<Vertex> unrank(std::vector<Vertex> sorted, std::uint64_t rank) {
    std::vector<Vertex> out;
    out.reserve(sorted.size());
    while (!sorted.empty()) {
        const std::uint64_t block = factorial(static_cast<int>(sorted.size()) - 1);
        const auto idx = static_cast<std::size_t>(rank / block);
        rank %= block;
        out.push_back(sorted[idx]);
        sorted.erase(sorted.begin() + static_cast<std::ptrdiff_t>(idx));
    }
    return out;
}

void check_size(const VertexSet& u, const DpOptions& opts) {
    if (static_cast<int>(u.size()) > opts.max_u)
        throw Error(ErrorCode::TooLarge, "|U| = " + std::to_string(u.size()) + " exceeds the ordering limit " +
                                             std::to_string(opts.max_u));
}

} // namespace

OrderingSearch search_orderings_serial(const OrientedGraph& g, const VertexSet& u, const DpOptions& opts) {
    check_size(u, opts);
    const ForestLayout layout(g, u);
    OrderingSearch r;
    std::vector<Vertex> perm = u.ids();
    do {
        DpState st(layout, perm);
        st.peel_all();
        const int value = st.total();
        ++r.evaluated;
        if (value > r.best) {
            r.best = value;
            r.best_order = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return r;
}

OrderingSearch search_orderings(const OrientedGraph& g, const VertexSet& u, const DpOptions& opts) {
    check_size(u, opts);
    const std::uint64_t total = factorial(static_cast<int>(u.size()));
    if (!opts.parallel || total < 64) return search_orderings_serial(g, u, opts);

    const ForestLayout layout(g, u);
    const auto chunks = static_cast<std::int64_t>(std::min<std::uint64_t>(total, 256));
    std::vector<int> chunk_best(static_cast<std::size_t>(chunks), -1);
    std::vector<std::uint64_t> chunk_rank(static_cast<std::size_t>(chunks), 0);

#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < chunks; ++c) {
        const std::uint64_t begin = total * static_cast<std::uint64_t>(c) / static_cast<std::uint64_t>(chunks);
        const std::uint64_t end = total * static_cast<std::uint64_t>(c + 1) / static_cast<std::uint64_t>(chunks);
        std::vector<Vertex> perm = unrank(u.ids(), begin);
        for (std::uint64_t rank = begin; rank < end; ++rank) {
            DpState st(layout, perm);
            st.peel_all();
            const int value = st.total();
            if (value > chunk_best[c]) {
                chunk_best[c] = value;
                chunk_rank[c] = rank;
            }
            std::next_permutation(perm.begin(), perm.end());
        }
    }

    OrderingSearch r;
    r.evaluated = total;
    std::uint64_t best_rank = 0;
    for (std::int64_t c = 0; c < chunks; ++c) {
        if (chunk_best[c] > r.best) {
            r.best = chunk_best[c];
            best_rank = chunk_rank[c];
        }
    }
    r.best_order = unrank(u.ids(), best_rank);
    return r;
}

// --- full pipeline ---------------------------------------------------------------

SolveResult solve(const Instance& instance, const DpOptions& opts, const DecomposeOptions& dopts) {
    SolveResult r;
    r.decomposition = decompose(instance, dopts);
    const DecomposeResult& d = r.decomposition;
    if (d.yes_certificate) {
        const TraceGraph& last = d.trace.final_graph();
        const WitnessOrdering base = guaranteed_witness(last.graph, dopts.rules);
        r.witness = lift_witness(d.trace, base);
        r.a_value = r.witness.forward_arcs;
        r.decision = true;
        r.via_certificate = true;
        return r;
    }
    if (!d.report.all())
        throw Error(ErrorCode::NotForestOfCliques, "decomposition left a forest violating its structure properties");

    const OrderingSearch search = search_orderings(instance.graph, d.u, opts);
    const ForestLayout layout(instance.graph, d.u);
    DpState st(layout, search.best_order);
    st.peel_all();
    r.witness.order = st.reconstruct();
    r.witness.forward_arcs = count_forward(instance.graph, r.witness.order);
    r.a_value = search.best;
    r.exact = true;
    r.orderings = search.evaluated;
    r.decision = decide_threshold(instance.graph, instance.k, r.a_value);
    return r;
}

} // namespace asapt
