#include "asapt/reduction.hpp"

#include "asapt/error.hpp"
#include "asapt/tournament.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <string>
#include <unordered_map>

namespace asapt {

std::string_view rule_token(Rule rule) {
    switch (rule) {
    case Rule::R1_SmallClique: return "R1";
    case Rule::R2_BridgeTriangles: return "R2";
    case Rule::R3_Degree: return "R3";
    case Rule::R4_BigClique: return "R4";
    case Rule::R5_Triplet: return "R5";
    }
    return "R?";
}

std::optional<Rule> parse_rule_token(std::string_view token) {
    static constexpr std::array<Rule, 5> all{Rule::R1_SmallClique, Rule::R2_BridgeTriangles, Rule::R3_Degree,
                                             Rule::R4_BigClique, Rule::R5_Triplet};
    for (Rule r : all)
        if (rule_token(r) == token) return r;
    return std::nullopt;
}

std::int64_t rule3_delta(Degrees d) { return 2 * std::abs(d.out - d.in) - 1; }

std::int64_t rule4_delta(std::size_t s) {
    const auto n = static_cast<std::int64_t>(s);
    return n % 2 == 0 ? 2 * n - 4 : 2 * n - 7;
}

namespace {

[[noreturn]] void violated(Rule rule, const std::string& why) {
    throw Error(ErrorCode::PreconditionViolated, std::string(rule_token(rule)) + ": " + why);
}

bool in_range(const OrientedGraph& g, Vertex v) { return v >= 0 && v < g.num_vertices(); }

bool in_range(const OrientedGraph& g, const VertexSet& s) {
    return std::all_of(s.begin(), s.end(), [&](Vertex v) { return in_range(g, v); });
}

// g - s is connected; the empty remainder counts only when allowed.
bool remainder_connected(const OrientedGraph& g, const VertexSet& s, bool allow_empty) {
    const Vertex n = g.num_vertices();
    const Vertex left = n - static_cast<Vertex>(s.size());
    if (left <= 0) return allow_empty;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (Vertex v : s) seen[v] = 1;
    Vertex root = 0;
    while (seen[root]) ++root;
    std::vector<Vertex> stack{root};
    seen[root] = 1;
    Vertex reached = 0;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        ++reached;
        for (Vertex w : g.neighbors(v)) {
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
        }
    }
    return reached == left;
}

bool is_clique(const OrientedGraph& g, const VertexSet& s) {
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (!g.adjacent(s[i], s[j])) return false;
    return true;
}

int edges_within(const OrientedGraph& g, const VertexSet& s) {
    int e = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (g.adjacent(s[i], s[j])) ++e;
    return e;
}

Reduced remove_and_reparam(const OrientedGraph& g, const VertexSet& s, std::int64_t k) {
    Subgraph sub = remove_vertices(g, s);
    return {std::move(sub.graph), std::move(sub.to_parent), k};
}

} // namespace

// --- R1: hanging directed triangle --------------------------------------------

bool rule1_applies(const OrientedGraph& g, const Rule1Match& m) {
    if (!in_range(g, m.x) || m.s.size() != 2 || !in_range(g, m.s) || m.s.contains(m.x)) return false;
    // g[S] is a component of g - x exactly when both vertices see only x and each other.
    for (Vertex v : m.s) {
        for (Vertex w : g.neighbors(v))
            if (w != m.x && !m.s.contains(w)) return false;
    }
    return is_directed_triangle(g, m.s.united({m.x}));
}

std::optional<Rule1Match> detect_rule1(const OrientedGraph& g) {
    for (Vertex x = 0; x < g.num_vertices(); ++x) {
        auto nbrs = g.neighbors(x);
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            if (g.neighbors(nbrs[i]).size() != 2) continue;
            for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
                Rule1Match m{x, VertexSet{nbrs[i], nbrs[j]}};
                if (rule1_applies(g, m)) return m;
            }
        }
    }
    return std::nullopt;
}

Reduced apply_rule1(const OrientedGraph& g, const Rule1Match& m, std::int64_t k) {
    if (!rule1_applies(g, m)) violated(Rule::R1_SmallClique, "S is not a triangle hanging off x");
    return remove_and_reparam(g, m.s, k);
}

// --- R2: two triangles joined at a degree-4 vertex ----------------------------

bool rule2_applies(const OrientedGraph& g, const Rule2Match& m) {
    const std::array<Vertex, 5> five{m.a, m.b, m.c, m.d, m.e};
    for (Vertex v : five)
        if (!in_range(g, v)) return false;
    if (VertexSet(std::vector<Vertex>(five.begin(), five.end())).size() != 5) return false;
    if (!is_directed_triangle(g, {m.a, m.b, m.c}) || !is_directed_triangle(g, {m.c, m.d, m.e})) return false;
    for (Vertex left : {m.a, m.b})
        for (Vertex right : {m.d, m.e})
            if (g.adjacent(left, right)) return false;
    // b, c, d see nothing outside the five.
    return g.neighbors(m.b).size() == 2 && g.neighbors(m.d).size() == 2 && g.neighbors(m.c).size() == 4;
}

std::optional<Rule2Match> detect_rule2(const OrientedGraph& g) {
    static constexpr std::array<std::array<int, 4>, 3> pairings{{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
    for (Vertex c = 0; c < g.num_vertices(); ++c) {
        auto p = g.neighbors(c);
        if (p.size() != 4) continue;
        for (const auto& pr : pairings) {
            for (int flip_left = 0; flip_left < 2; ++flip_left) {
                for (int flip_right = 0; flip_right < 2; ++flip_right) {
                    Rule2Match m;
                    m.a = p[pr[flip_left]];
                    m.b = p[pr[1 - flip_left]];
                    m.c = c;
                    m.d = p[pr[2 + flip_right]];
                    m.e = p[pr[3 - flip_right]];
                    if (rule2_applies(g, m)) return m;
                }
            }
        }
    }
    return std::nullopt;
}

Reduced apply_rule2(const OrientedGraph& g, const Rule2Match& m, std::int64_t k) {
    if (!rule2_applies(g, m)) violated(Rule::R2_BridgeTriangles, "five vertices do not form a bridged triangle pair");
    Subgraph sub = remove_vertices(g, VertexSet{m.b, m.c, m.d});
    const auto map = sub.from_parent(g.num_vertices());
    const Vertex x = sub.graph.num_vertices();
    std::vector<Arc> arcs = sub.graph.arcs();
    arcs.push_back({map[m.a], x});
    arcs.push_back({x, map[m.e]});
    arcs.push_back({map[m.e], map[m.a]});
    Reduced r;
    r.graph = OrientedGraph::build(x + 1, arcs);
    r.to_parent = std::move(sub.to_parent);
    r.to_parent.push_back(-1);
    r.k = k;
    return r;
}

// --- R3: unbalanced non-cut vertex --------------------------------------------

bool rule3_applies(const OrientedGraph& g, Vertex x) {
    if (!in_range(g, x) || g.num_vertices() < 2) return false;
    const Degrees d = g.degrees(x);
    return d.out != d.in && remainder_connected(g, VertexSet{x}, false);
}

std::optional<Vertex> detect_rule3(const OrientedGraph& g) {
    if (g.num_vertices() < 2) return std::nullopt;
    const BlockDecomposition bd = blocks(g);
    for (Vertex x = 0; x < g.num_vertices(); ++x) {
        const Degrees d = g.degrees(x);
        if (d.out != d.in && !bd.cut_vertices.contains(x)) return x;
    }
    return std::nullopt;
}

Reduced apply_rule3(const OrientedGraph& g, Vertex x, std::int64_t k) {
    if (!rule3_applies(g, x)) violated(Rule::R3_Degree, "vertex is balanced or separates the graph");
    return remove_and_reparam(g, VertexSet{x}, k - rule3_delta(g.degrees(x)));
}

// --- R4: tournament on at least four vertices ---------------------------------

bool rule4_applies(const OrientedGraph& g, const VertexSet& s, const ReductionOptions& opts) {
    return s.size() >= 4 && in_range(g, s) && is_clique(g, s) &&
           remainder_connected(g, s, opts.empty_remainder_connected);
}

std::optional<VertexSet> detect_rule4(const OrientedGraph& g, const ReductionOptions& opts) {
    const Vertex n = g.num_vertices();
    if (n < 4) return std::nullopt;
    auto accept = [&](const VertexSet& s) { return rule4_applies(g, s, opts); };

    // Tournament components of g - v, alone or together with v.
    for (Vertex v = 0; v < n; ++v) {
        for (const VertexSet& x : components(g, VertexSet{v})) {
            if (!is_clique(g, x)) continue;
            if (accept(x)) return x;
            VertexSet with_v = x.united({v});
            if (accept(with_v)) return with_v;
        }
    }
    // Tournament components of g - {x, y} for a non-adjacent pair, extended by x or y.
    for (Vertex x = 0; x < n; ++x) {
        for (Vertex y = x + 1; y < n; ++y) {
            if (g.adjacent(x, y)) continue;
            for (const VertexSet& c : components(g, VertexSet{x, y})) {
                if (c.size() < 3 || !is_clique(g, c)) continue;
                VertexSet with_x = c.united({x});
                if (accept(with_x)) return with_x;
                VertexSet with_y = c.united({y});
                if (accept(with_y)) return with_y;
            }
        }
    }
    return std::nullopt;
}

Reduced apply_rule4(const OrientedGraph& g, const VertexSet& s, std::int64_t k, const ReductionOptions& opts) {
    if (!rule4_applies(g, s, opts)) violated(Rule::R4_BigClique, "S is not a removable tournament of size >= 4");
    return remove_and_reparam(g, s, k - rule4_delta(s.size()));
}

// --- R5: induced path on three vertices ---------------------------------------

bool rule5_applies(const OrientedGraph& g, const VertexSet& s, const ReductionOptions& opts) {
    // Three vertices with exactly two edges among them induce P3.
    return s.size() == 3 && in_range(g, s) && edges_within(g, s) == 2 &&
           remainder_connected(g, s, opts.empty_remainder_connected);
}

std::optional<VertexSet> detect_rule5(const OrientedGraph& g, const ReductionOptions& opts) {
    std::vector<VertexSet> paths;
    for (Vertex mid = 0; mid < g.num_vertices(); ++mid) {
        auto nbrs = g.neighbors(mid);
        for (std::size_t i = 0; i < nbrs.size(); ++i)
            for (std::size_t j = i + 1; j < nbrs.size(); ++j)
                if (!g.adjacent(nbrs[i], nbrs[j])) paths.push_back(VertexSet{nbrs[i], mid, nbrs[j]});
    }
    std::sort(paths.begin(), paths.end());
    for (const VertexSet& s : paths)
        if (remainder_connected(g, s, opts.empty_remainder_connected)) return s;
    return std::nullopt;
}

Reduced apply_rule5(const OrientedGraph& g, const VertexSet& s, std::int64_t k, const ReductionOptions& opts) {
    if (!rule5_applies(g, s, opts)) violated(Rule::R5_Triplet, "S is not a removable induced P3");
    return remove_and_reparam(g, s, k - kRule5Delta);
}

std::vector<Vertex> path3_ordering(const OrientedGraph& g, const VertexSet& s) {
    std::vector<Vertex> perm = s.ids();
    do {
        int forward = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (g.has_arc(perm[i], perm[j])) ++forward;
        if (forward == 2) return perm;
    } while (std::next_permutation(perm.begin(), perm.end()));
    violated(Rule::R5_Triplet, "vertex triple does not induce a path");
}

// --- combine -------------------------------------------------------------------

WitnessOrdering combine(std::span<const Vertex> order_rest, std::span<const Vertex> order_s,
                        const OrientedGraph& g, const VertexSet& s) {
    WitnessOrdering w;
    w.order.reserve(order_rest.size() + order_s.size());
    bool s_first = true;
    if (!order_rest.empty()) {
        const CutDegrees cut = cut_degrees(g, s);
        s_first = cut.leaving >= cut.entering;
    }
    if (s_first) {
        w.order.insert(w.order.end(), order_s.begin(), order_s.end());
        w.order.insert(w.order.end(), order_rest.begin(), order_rest.end());
    } else {
        w.order.insert(w.order.end(), order_rest.begin(), order_rest.end());
        w.order.insert(w.order.end(), order_s.begin(), order_s.end());
    }
    w.forward_arcs = count_forward(g, w.order);
    return w;
}

// --- traces --------------------------------------------------------------------

Vertex ReductionTrace::next_trace_id() const {
    Vertex next = initial.graph.num_vertices();
    for (const RuleApplication& s : steps) next += static_cast<Vertex>(s.added.size());
    return next;
}

ReductionTrace start_trace(const Instance& instance) {
    ReductionTrace t;
    t.initial = instance;
    t.graphs.push_back({instance.graph, VertexSet::range(instance.graph.num_vertices()).ids()});
    t.final_k = instance.k;
    return t;
}

void append_step(ReductionTrace& trace, RuleApplication step, const Reduced& reduced) {
    const std::vector<Vertex>& label = trace.final_graph().label;
    auto relabel = [&](Vertex v) { return v < 0 ? v : label.at(static_cast<std::size_t>(v)); };
    auto relabel_all = [&](std::vector<Vertex> vs) {
        for (Vertex& v : vs) v = relabel(v);
        return vs;
    };

    step.removed = VertexSet(relabel_all(step.removed.ids()));
    step.anchor = relabel(step.anchor);
    step.attachment = relabel_all(std::move(step.attachment));
    step.s_order = relabel_all(std::move(step.s_order));

    TraceGraph next;
    next.graph = reduced.graph;
    next.label.resize(reduced.to_parent.size());
    Vertex fresh = trace.next_trace_id();
    std::vector<Vertex> added;
    for (std::size_t i = 0; i < reduced.to_parent.size(); ++i) {
        if (reduced.to_parent[i] >= 0) {
            next.label[i] = label.at(static_cast<std::size_t>(reduced.to_parent[i]));
        } else {
            next.label[i] = fresh;
            added.push_back(fresh++);
        }
    }
    step.added = VertexSet(std::move(added));

    if (trace.final_k - step.k_delta != reduced.k)
        throw Error(ErrorCode::TraceMismatch, "k delta disagrees with the reduced parameter");
    trace.final_k = reduced.k;
    if (step.rule == Rule::R3_Degree || step.rule == Rule::R4_BigClique || step.rule == Rule::R5_Triplet)
        trace.u = trace.u.united(step.removed);
    trace.steps.push_back(std::move(step));
    trace.graphs.push_back(std::move(next));
}

namespace {

class LocalIds {
public:
    explicit LocalIds(const TraceGraph& tg) {
        for (std::size_t i = 0; i < tg.label.size(); ++i) map_[tg.label[i]] = static_cast<Vertex>(i);
    }

    Vertex operator()(Vertex trace_id) const {
        auto it = map_.find(trace_id);
        if (it == map_.end())
            throw Error(ErrorCode::TraceMismatch, "trace id " + std::to_string(trace_id) + " not in graph");
        return it->second;
    }

    std::vector<Vertex> all(std::span<const Vertex> ids) const {
        std::vector<Vertex> out;
        out.reserve(ids.size());
        for (Vertex v : ids) out.push_back((*this)(v));
        return out;
    }

private:
    std::unordered_map<Vertex, Vertex> map_;
};

void check_covers(const std::vector<Vertex>& order, const TraceGraph& tg) {
    std::vector<Vertex> a = order, b = tg.label;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw Error(ErrorCode::TraceMismatch, "ordering does not cover the graph of this step");
}

// Inserts v at the index maximizing its forward arcs in `order` (local ids).
void insert_best(std::vector<Vertex>& order, Vertex v, const OrientedGraph& g) {
    std::vector<int> pos(static_cast<std::size_t>(g.num_vertices()), -1);
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
    int best_at = 0, best = -1;
    for (int at = 0; at <= static_cast<int>(order.size()); ++at) {
        int forward = 0;
        for (Vertex w : g.out_neighbors(v))
            if (pos[w] >= at) ++forward;
        for (Vertex w : g.in_neighbors(v))
            if (pos[w] >= 0 && pos[w] < at) ++forward;
        if (forward > best) {
            best = forward;
            best_at = at;
        }
    }
    order.insert(order.begin() + best_at, v);
}

} // namespace

WitnessOrdering lift_witness(const ReductionTrace& trace, const WitnessOrdering& base) {
    const TraceGraph& last = trace.final_graph();
    if (!is_permutation_of(base.order, last.graph.num_vertices()))
        throw Error(ErrorCode::TraceMismatch, "base ordering is not a permutation of the final graph");

    std::vector<Vertex> cur;
    cur.reserve(base.order.size());
    for (Vertex v : base.order) cur.push_back(last.label[v]);

    for (std::size_t i = trace.steps.size(); i-- > 0;) {
        const RuleApplication& step = trace.steps[i];
        const TraceGraph& tg = trace.graphs[i];
        check_covers(cur, trace.graphs[i + 1]);
        const LocalIds local(tg);
        std::vector<Vertex> order;

        switch (step.rule) {
        case Rule::R3_Degree:
        case Rule::R4_BigClique:
        case Rule::R5_Triplet: {
            std::vector<Vertex> piece = step.rule == Rule::R3_Degree ? std::vector<Vertex>{step.anchor} : step.s_order;
            const VertexSet s(local.all(step.removed.ids()));
            order = combine(local.all(cur), local.all(piece), tg.graph, s).order;
            break;
        }
        case Rule::R1_SmallClique: {
            order = local.all(cur);
            const Vertex x = local(step.anchor);
            auto it = std::find(order.begin(), order.end(), x);
            if (it == order.end() || step.s_order.size() != 2)
                throw Error(ErrorCode::TraceMismatch, "R1 anchor missing");
            order.insert(it + 1, {local(step.s_order[0]), local(step.s_order[1])});
            break;
        }
        case Rule::R2_BridgeTriangles: {
            if (step.attachment.size() != 5 || step.added.size() != 1)
                throw Error(ErrorCode::TraceMismatch, "R2 payload malformed");
            const Vertex created = step.added[0];
            for (Vertex v : cur) order.push_back(v == created ? local(step.attachment[2]) : local(v));
            insert_best(order, local(step.attachment[1]), tg.graph);
            insert_best(order, local(step.attachment[3]), tg.graph);
            break;
        }
        }

        cur.clear();
        for (Vertex v : order) cur.push_back(tg.label[v]);
    }

    check_covers(cur, trace.graphs.front());
    WitnessOrdering w;
    w.order = std::move(cur);
    w.forward_arcs = count_forward(trace.initial.graph, w.order);
    return w;
}

// --- decomposition -------------------------------------------------------------

ForestReport forest_report(const OrientedGraph& g, const VertexSet& u) {
    ForestReport r;
    const Subgraph sub = remove_vertices(g, u);
    const BlockDecomposition bd = blocks(sub.graph);
    const auto comps = components(sub.graph);
    std::vector<int> comp_of(static_cast<std::size_t>(sub.graph.num_vertices()), -1);
    for (int c = 0; c < static_cast<int>(comps.size()); ++c)
        for (Vertex v : comps[c]) comp_of[v] = c;

    std::vector<int> pairs(comps.size(), 0);
    int isolated = 0;
    for (const VertexSet& b : bd.blocks) {
        if (!is_clique(sub.graph, b)) r.forest_of_cliques = false;
        if (b.size() > 3) r.blocks_at_most_three = false;
        if (b.size() == 3 && !is_directed_triangle(sub.graph, b)) r.triangles_directed = false;
        if (b.size() == 2 && ++pairs[comp_of[b.front()]] > 1) r.one_pair_per_component = false;
        if (b.size() == 1) ++isolated;
    }
    r.at_most_one_isolated = isolated <= 1;
    return r;
}

namespace {

RuleApplication rule1_step(const OrientedGraph& g, const Rule1Match& m) {
    RuleApplication step;
    step.rule = Rule::R1_SmallClique;
    step.removed = m.s;
    step.anchor = m.x;
    const Vertex first = g.has_arc(m.x, m.s[0]) ? m.s[0] : m.s[1];
    step.s_order = {first, first == m.s[0] ? m.s[1] : m.s[0]};
    return step;
}

} // namespace

std::optional<std::pair<RuleApplication, Reduced>> reduce_once(const OrientedGraph& g, std::int64_t k,
                                                               const ReductionOptions& opts) {
    if (auto x = detect_rule3(g)) {
        RuleApplication step;
        step.rule = Rule::R3_Degree;
        step.removed = VertexSet{*x};
        step.anchor = *x;
        const Degrees d = g.degrees(*x);
        step.sign = d.out > d.in ? 1 : -1;
        step.k_delta = rule3_delta(d);
        return std::pair{std::move(step), apply_rule3(g, *x, k)};
    }
    if (auto m = detect_rule1(g)) {
        return std::pair{rule1_step(g, *m), apply_rule1(g, *m, k)};
    }
    if (auto s = detect_rule4(g, opts)) {
        RuleApplication step;
        step.rule = Rule::R4_BigClique;
        step.removed = *s;
        step.k_delta = rule4_delta(s->size());
        const Subgraph t = induced(g, *s);
        for (Vertex v : tournament_ordering(t.graph).order) step.s_order.push_back(t.to_parent[v]);
        return std::pair{std::move(step), apply_rule4(g, *s, k, opts)};
    }
    if (auto s = detect_rule5(g, opts)) {
        RuleApplication step;
        step.rule = Rule::R5_Triplet;
        step.removed = *s;
        step.k_delta = kRule5Delta;
        step.s_order = path3_ordering(g, *s);
        return std::pair{std::move(step), apply_rule5(g, *s, k, opts)};
    }
    return std::nullopt;
}

DecomposeResult decompose(const Instance& instance, const DecomposeOptions& opts) {
    if (!is_connected(instance.graph)) throw Error(ErrorCode::NotConnected, "decompose needs a connected graph");
    DecomposeResult r;
    r.trace = start_trace(instance);
    while (true) {
        if (opts.stop_at_nonpositive_k && r.trace.final_k <= 0) {
            r.yes_certificate = true;
            break;
        }
        auto next = reduce_once(r.trace.final_graph().graph, r.trace.final_k, opts.rules);
        if (!next) break;
        append_step(r.trace, std::move(next->first), next->second);
    }
    r.u = r.trace.u;
    if (!r.yes_certificate) r.report = forest_report(instance.graph, r.u);
    return r;
}

WitnessOrdering guaranteed_witness(const OrientedGraph& g, const ReductionOptions& opts) {
    if (g.num_vertices() == 0) return {};
    DecomposeOptions d;
    d.rules = opts;
    d.stop_at_nonpositive_k = false;
    const DecomposeResult r = decompose(Instance{g, 0}, d);
    const OrientedGraph& last = r.trace.final_graph().graph;
    if (last.num_arcs() != 0)
        throw Error(ErrorCode::PreconditionViolated, "no reduction rule applies to a graph with arcs");
    WitnessOrdering base;
    base.order = VertexSet::range(last.num_vertices()).ids();
    return lift_witness(r.trace, base);
}

ReductionTrace normalize_two_way(const Instance& instance) {
    ReductionTrace trace = start_trace(instance);
    while (true) {
        const OrientedGraph& g = trace.final_graph().graph;
        if (auto m = detect_rule1(g)) {
            Reduced red = apply_rule1(g, *m, trace.final_k);
            append_step(trace, rule1_step(g, *m), red);
            continue;
        }
        if (auto m = detect_rule2(g)) {
            RuleApplication step;
            step.rule = Rule::R2_BridgeTriangles;
            step.removed = VertexSet{m->b, m->c, m->d};
            step.attachment = {m->a, m->b, m->c, m->d, m->e};
            Reduced red = apply_rule2(g, *m, trace.final_k);
            append_step(trace, std::move(step), red);
            continue;
        }
        break;
    }
    return trace;
}

} // namespace asapt
