#include "asapt/generators.hpp"

#include "asapt/error.hpp"

#include <numeric>
#include <set>
#include <string>
#include <utility>

namespace asapt {

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * bound) >> 64);
}

double SplitMix64::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

OrientedGraph gen_Ht(int t) {
    const Vertex n = 2 * t + 1;
    std::vector<Arc> arcs;
    for (Vertex i = 0; i + 1 < n; ++i) arcs.push_back({i, i + 1});
    for (Vertex i = 2; i < n; i += 2) arcs.push_back({i, i - 2});
    return OrientedGraph::build(n, arcs);
}

OrientedGraph gen_tournament(Vertex n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<Arc> arcs;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j) arcs.push_back(rng.bit() ? Arc{j, i} : Arc{i, j});
    return OrientedGraph::build(n, arcs);
}

OrientedGraph gen_connected_oriented(Vertex n, double density, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<Vertex> label(static_cast<std::size_t>(n));
    std::iota(label.begin(), label.end(), 0);
    for (Vertex i = n - 1; i > 0; --i) std::swap(label[i], label[rng.below(static_cast<std::uint64_t>(i) + 1)]);

    std::set<std::pair<Vertex, Vertex>> tree;
    std::vector<Arc> arcs;
    auto add = [&](Vertex a, Vertex b) { arcs.push_back(rng.bit() ? Arc{b, a} : Arc{a, b}); };
    for (Vertex v = 1; v < n; ++v) {
        Vertex a = label[v], b = label[rng.below(static_cast<std::uint64_t>(v))];
        if (a > b) std::swap(a, b);
        tree.insert({a, b});
        add(a, b);
    }
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j)
            if (!tree.count({i, j}) && rng.unit() < density) add(i, j);
    return OrientedGraph::build(n, arcs);
}

GeneratedForest gen_forest_of_cliques(const std::vector<BlockSpec>& plan, std::uint64_t seed,
                                      const ForestPlanOptions& opts) {
    SplitMix64 rng(seed);
    std::vector<std::vector<Vertex>> laid;
    std::vector<int> component(plan.size(), -1);
    std::vector<int> pairs_in_component;
    std::vector<Arc> arcs;
    Vertex n = 0;

    for (std::size_t i = 0; i < plan.size(); ++i) {
        const BlockSpec& spec = plan[i];
        const std::string where = "block " + std::to_string(i);
        if (spec.size < 1 || spec.size > 3) throw Error(ErrorCode::InvalidPlan, where + ": size must be 1, 2 or 3");
        std::vector<Vertex> vs;
        if (spec.parent < 0) {
            component[i] = static_cast<int>(pairs_in_component.size());
            pairs_in_component.push_back(0);
        } else {
            if (spec.parent >= static_cast<int>(i)) throw Error(ErrorCode::InvalidPlan, where + ": parent must come earlier");
            if (spec.size == 1) throw Error(ErrorCode::InvalidPlan, where + ": a one-vertex block cannot be glued");
            const auto& parent = laid[static_cast<std::size_t>(spec.parent)];
            if (parent.size() == 1) throw Error(ErrorCode::InvalidPlan, where + ": cannot glue onto a one-vertex block");
            if (spec.parent_slot < 0 || spec.parent_slot >= static_cast<int>(parent.size()))
                throw Error(ErrorCode::InvalidPlan, where + ": parent slot out of range");
            component[i] = component[static_cast<std::size_t>(spec.parent)];
            vs.push_back(parent[static_cast<std::size_t>(spec.parent_slot)]);
        }
        while (static_cast<int>(vs.size()) < spec.size) vs.push_back(n++);

        if (spec.size == 2) {
            if (opts.strict_p3 && ++pairs_in_component[static_cast<std::size_t>(component[i])] > 1)
                throw Error(ErrorCode::InvalidPlan, where + ": second two-vertex block in a component");
            arcs.push_back(rng.bit() ? Arc{vs[1], vs[0]} : Arc{vs[0], vs[1]});
        } else if (spec.size == 3) {
            if (opts.cyclic_triangles) {
                const bool flip = rng.bit();
                for (int j = 0; j < 3; ++j) {
                    const Vertex a = vs[static_cast<std::size_t>(j)], b = vs[static_cast<std::size_t>((j + 1) % 3)];
                    arcs.push_back(flip ? Arc{b, a} : Arc{a, b});
                }
            } else {
                for (int a = 0; a < 3; ++a)
                    for (int b = a + 1; b < 3; ++b)
                        arcs.push_back(rng.bit() ? Arc{vs[static_cast<std::size_t>(b)], vs[static_cast<std::size_t>(a)]}
                                                 : Arc{vs[static_cast<std::size_t>(a)], vs[static_cast<std::size_t>(b)]});
            }
        }
        laid.push_back(std::move(vs));
    }

    GeneratedForest out;
    out.graph = OrientedGraph::build(n, arcs);
    for (auto& vs : laid) out.blocks.emplace_back(vs);
    out.profile = classify_blocks(n, out.blocks);
    return out;
}

std::vector<BlockSpec> random_forest_plan(int num_blocks, std::uint64_t seed, int new_component_every) {
    SplitMix64 rng(seed);
    std::vector<BlockSpec> plan;
    std::vector<int> gluable; // blocks with at least two vertices
    for (int i = 0; i < num_blocks; ++i) {
        BlockSpec spec;
        const bool fresh = gluable.empty() || (new_component_every > 0 && rng.below(static_cast<std::uint64_t>(new_component_every)) == 0);
        if (fresh) {
            // A lone vertex cannot be glued to, so keep a single-component
            // plan from starting with one.
            const bool allow_single = new_component_every > 0 || num_blocks == 1;
            spec.size = allow_single ? 1 + static_cast<int>(rng.below(3)) : 2 + static_cast<int>(rng.below(2));
            spec.parent = -1;
        } else {
            spec.size = 2 + static_cast<int>(rng.below(2));
            spec.parent = gluable[rng.below(gluable.size())];
            spec.parent_slot = static_cast<int>(rng.below(static_cast<std::uint64_t>(plan[static_cast<std::size_t>(spec.parent)].size)));
        }
        if (spec.size >= 2) gluable.push_back(i);
        plan.push_back(spec);
    }
    return plan;
}

} // namespace asapt
