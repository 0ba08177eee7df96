#include "asapt/io.hpp"

#include "asapt/error.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace asapt {

namespace {

[[noreturn]] void parse_error(int line, const std::string& what) {
    throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> split(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

template <class T>
std::optional<T> to_number(std::string_view s) {
    T value{};
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || end != s.data() + s.size()) return std::nullopt;
    return value;
}

template <class T>
T number_at(std::string_view s, int line, const char* what) {
    auto v = to_number<T>(s);
    if (!v) parse_error(line, std::string("bad ") + what + " '" + std::string(s) + "'");
    return *v;
}

// Strips comments, returns the tokens of each non-empty line with its number.
struct Lines {
    explicit Lines(std::istream& in, bool comments) : in_(in), comments_(comments) {}

    bool next(std::vector<std::string_view>& tokens, int& line) {
        while (std::getline(in_, text_)) {
            ++line_;
            if (comments_) {
                auto hash = text_.find('#');
                if (hash != std::string::npos) text_.resize(hash);
            }
            tokens = split(text_);
            if (!tokens.empty()) {
                line = line_;
                return true;
            }
        }
        line = line_;
        return false;
    }

private:
    std::istream& in_;
    bool comments_;
    std::string text_;
    int line_ = 0;
};

std::string join(std::span<const Vertex> vs, char sep) {
    std::string s;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(vs[i]);
    }
    return s;
}

std::vector<Vertex> parse_id_list(std::string_view s, int line) {
    std::vector<Vertex> out;
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t j = s.find(',', i);
        if (j == std::string_view::npos) j = s.size();
        out.push_back(number_at<Vertex>(s.substr(i, j - i), line, "vertex id"));
        i = j + 1;
    }
    return out;
}

} // namespace

// --- instance files -------------------------------------------------------------

InstanceFile parse_instance(std::istream& in) {
    Lines lines(in, true);
    std::vector<std::string_view> tok;
    int line = 0;
    if (!lines.next(tok, line)) parse_error(line, "missing header 'n m k'");
    if (tok.size() != 3) parse_error(line, "header must be 'n m k'");
    const auto n = number_at<Vertex>(tok[0], line, "vertex count");
    const auto m = number_at<std::int64_t>(tok[1], line, "arc count");
    const auto k = number_at<std::int64_t>(tok[2], line, "parameter k");
    if (n < 1) parse_error(line, "vertex count must be positive");
    if (m < 0) parse_error(line, "arc count must be non-negative");

    std::set<std::pair<Vertex, Vertex>> seen;
    std::vector<Arc> arcs;
    for (std::int64_t i = 0; i < m; ++i) {
        if (!lines.next(tok, line)) parse_error(line, "expected " + std::to_string(m) + " arcs, found " + std::to_string(i));
        if (tok.size() != 2) parse_error(line, "arc line must be 'u v'");
        const auto u = number_at<Vertex>(tok[0], line, "vertex id");
        const auto v = number_at<Vertex>(tok[1], line, "vertex id");
        if (u < 0 || u >= n || v < 0 || v >= n) parse_error(line, "vertex id out of range");
        if (u == v) parse_error(line, "self-loop");
        if (seen.count({u, v})) parse_error(line, "duplicate arc");
        if (seen.count({v, u})) parse_error(line, "opposite arcs form a 2-cycle");
        seen.insert({u, v});
        arcs.push_back({u, v});
    }
    if (lines.next(tok, line)) parse_error(line, "unexpected content after the arc list");
    return {OrientedGraph::build(n, arcs), k};
}

InstanceFile read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Parse, "cannot open " + path);
    return parse_instance(in);
}

void write_instance(std::ostream& out, const OrientedGraph& g, std::int64_t k) {
    out << g.num_vertices() << ' ' << g.num_arcs() << ' ' << k << '\n';
    for (const Arc& a : g.arcs()) out << a.tail << ' ' << a.head << '\n';
}

// --- reports --------------------------------------------------------------------

TraceSection trace_section(const std::string& name, const ReductionTrace& trace) {
    TraceSection s;
    s.name = name;
    s.final_k = trace.final_k;
    for (const RuleApplication& step : trace.steps) {
        StepLine line;
        line.rule = step.rule;
        if (step.rule == Rule::R2_BridgeTriangles)
            line.removed.assign(step.attachment.begin() + 1, step.attachment.begin() + 4);
        else
            line.removed = step.removed.ids();
        line.added = step.added.ids();
        line.k_delta = step.k_delta;
        s.steps.push_back(std::move(line));
    }
    return s;
}

Report report_header(const std::string& command, const Instance& in, bool empty_remainder_connected) {
    Report r;
    r.command = command;
    r.n = in.graph.num_vertices();
    r.m = in.graph.num_arcs();
    r.k = in.k;
    r.gamma_q = gamma(in.graph).q;
    r.threshold_q = threshold(in.graph, in.k).q;
    r.empty_remainder_connected = empty_remainder_connected;
    return r;
}

Report solve_report(const Instance& in, const SolveResult& s, bool empty_remainder_connected) {
    Report r = report_header("solve", in, empty_remainder_connected);
    r.decision = s.decision ? "YES" : "NO";
    if (s.exact) r.a_value = s.a_value;
    r.witness = s.witness;
    r.reason = s.via_certificate ? "decomposition" : "dynamic-program";
    r.u = s.decomposition.u;
    r.traces.push_back(trace_section("decompose", s.decomposition.trace));
    return r;
}

Report kernel_report(const Instance& in, const KernelResult& k) {
    Report r = report_header("kernelize", in);
    r.reason = std::string(to_string(k.reason));
    r.traces.push_back(trace_section("normalize", k.normalization));
    if (k.decomposition) r.traces.push_back(trace_section("decompose", *k.decomposition));
    if (k.verdict == KernelVerdict::Yes) {
        r.decision = "YES";
        if (k.witness) r.witness = *k.witness;
        else r.guaranteed_by_bound = true;
    } else {
        r.decision = "KERNEL";
        r.u = k.u;
        r.kernel = k.kernel;
        r.bounds = k.bounds;
    }
    return r;
}

Report oracle_report(const Instance& in, const OracleResult& o) {
    Report r = report_header("oracle", in);
    r.decision = decide_threshold(in.graph, in.k, o.a) ? "YES" : "NO";
    r.a_value = o.a;
    r.witness = o.witness;
    r.reason = "oracle";
    return r;
}

void write_report(std::ostream& out, const Report& r) {
    out << "asapt-report 1\n";
    out << "command " << r.command << '\n';
    out << "decision " << r.decision << '\n';
    out << "n " << r.n << '\n';
    out << "m " << r.m << '\n';
    out << "k " << r.k << '\n';
    out << "gamma_q " << r.gamma_q << '\n';
    out << "threshold_q " << r.threshold_q << '\n';
    out << "empty_remainder_connected " << (r.empty_remainder_connected ? 1 : 0) << '\n';
    if (r.a_value) out << "a_value " << *r.a_value << '\n';
    if (r.witness) {
        out << "witness_forward " << r.witness->forward_arcs << '\n';
        out << "witness " << join(r.witness->order, ' ') << '\n';
    }
    if (r.guaranteed_by_bound) out << "guaranteed-by-bound\n";
    if (!r.reason.empty()) out << "reason " << r.reason << '\n';
    if (r.u) out << "u " << join(r.u->ids(), ' ') << '\n';
    for (const TraceSection& t : r.traces) {
        out << "trace " << t.name << ' ' << t.steps.size() << '\n';
        for (const StepLine& s : t.steps)
            out << "step " << rule_token(s.rule) << " removed=" << join(s.removed, ',') << " added=" << join(s.added, ',')
                << " kdelta=" << s.k_delta << '\n';
        out << "final_k " << t.final_k << '\n';
    }
    if (r.kernel) {
        const OrientedGraph& g = r.kernel->graph;
        out << "kernel " << g.num_vertices() << ' ' << g.num_arcs() << ' ' << r.kernel->k << '\n';
        for (const Arc& a : g.arcs()) out << a.tail << ' ' << a.head << '\n';
    }
    if (r.bounds) out << "bounds " << r.bounds->vertices << ' ' << r.bounds->arcs << '\n';
    out << "time_ms " << std::fixed << std::setprecision(3) << r.time_ms << '\n';
    out << "end\n";
}

Report parse_report(std::istream& in) {
    Lines lines(in, false);
    std::vector<std::string_view> tok;
    int line = 0;
    if (!lines.next(tok, line) || tok.size() != 2 || tok[0] != "asapt-report" || tok[1] != "1")
        parse_error(line, "expected 'asapt-report 1'");

    Report r;
    std::optional<int> witness_forward;
    bool ended = false;
    auto want = [&](std::size_t count) {
        if (tok.size() != count) parse_error(line, "wrong number of fields for '" + std::string(tok[0]) + "'");
    };
    while (!ended && lines.next(tok, line)) {
        const std::string_view key = tok[0];
        if (key == "command") {
            want(2);
            r.command = tok[1];
        } else if (key == "decision") {
            want(2);
            r.decision = tok[1];
        } else if (key == "n") {
            want(2);
            r.n = number_at<Vertex>(tok[1], line, "n");
        } else if (key == "m") {
            want(2);
            r.m = number_at<std::int64_t>(tok[1], line, "m");
        } else if (key == "k") {
            want(2);
            r.k = number_at<std::int64_t>(tok[1], line, "k");
        } else if (key == "gamma_q") {
            want(2);
            r.gamma_q = number_at<std::int64_t>(tok[1], line, "gamma_q");
        } else if (key == "threshold_q") {
            want(2);
            r.threshold_q = number_at<std::int64_t>(tok[1], line, "threshold_q");
        } else if (key == "empty_remainder_connected") {
            want(2);
            r.empty_remainder_connected = number_at<int>(tok[1], line, "flag") != 0;
        } else if (key == "a_value") {
            want(2);
            r.a_value = number_at<std::int64_t>(tok[1], line, "a_value");
        } else if (key == "witness_forward") {
            want(2);
            witness_forward = number_at<int>(tok[1], line, "witness_forward");
        } else if (key == "witness") {
            WitnessOrdering w;
            for (std::size_t i = 1; i < tok.size(); ++i) w.order.push_back(number_at<Vertex>(tok[i], line, "vertex id"));
            r.witness = std::move(w);
        } else if (key == "guaranteed-by-bound") {
            want(1);
            r.guaranteed_by_bound = true;
        } else if (key == "reason") {
            want(2);
            r.reason = tok[1];
        } else if (key == "u") {
            std::vector<Vertex> ids;
            for (std::size_t i = 1; i < tok.size(); ++i) ids.push_back(number_at<Vertex>(tok[i], line, "vertex id"));
            r.u = VertexSet(std::move(ids));
        } else if (key == "trace") {
            want(3);
            TraceSection t;
            t.name = tok[1];
            const auto steps = number_at<std::int64_t>(tok[2], line, "step count");
            for (std::int64_t i = 0; i < steps; ++i) {
                if (!lines.next(tok, line) || tok[0] != "step" || tok.size() != 5) parse_error(line, "expected a step line");
                StepLine s;
                auto rule = parse_rule_token(tok[1]);
                if (!rule) parse_error(line, "unknown rule '" + std::string(tok[1]) + "'");
                s.rule = *rule;
                auto field = [&](std::string_view t, std::string_view name) {
                    if (t.substr(0, name.size()) != name) parse_error(line, "expected '" + std::string(name) + "'");
                    return t.substr(name.size());
                };
                s.removed = parse_id_list(field(tok[2], "removed="), line);
                s.added = parse_id_list(field(tok[3], "added="), line);
                s.k_delta = number_at<std::int64_t>(field(tok[4], "kdelta="), line, "kdelta");
                t.steps.push_back(std::move(s));
            }
            if (!lines.next(tok, line) || tok.size() != 2 || tok[0] != "final_k") parse_error(line, "expected 'final_k'");
            t.final_k = number_at<std::int64_t>(tok[1], line, "final_k");
            r.traces.push_back(std::move(t));
        } else if (key == "kernel") {
            want(4);
            const auto n = number_at<Vertex>(tok[1], line, "kernel n");
            const auto m = number_at<std::int64_t>(tok[2], line, "kernel m");
            const auto k = number_at<std::int64_t>(tok[3], line, "kernel k");
            std::vector<Arc> arcs;
            for (std::int64_t i = 0; i < m; ++i) {
                if (!lines.next(tok, line) || tok.size() != 2) parse_error(line, "expected a kernel arc");
                arcs.push_back({number_at<Vertex>(tok[0], line, "vertex id"), number_at<Vertex>(tok[1], line, "vertex id")});
            }
            try {
                r.kernel = Instance{OrientedGraph::build(n, arcs), k};
            } catch (const Error& e) {
                parse_error(line, std::string("kernel graph: ") + e.what());
            }
        } else if (key == "bounds") {
            want(3);
            r.bounds = SizeBounds{number_at<std::int64_t>(tok[1], line, "bound"), number_at<std::int64_t>(tok[2], line, "bound")};
        } else if (key == "time_ms") {
            want(2);
            r.time_ms = std::stod(std::string(tok[1]));
        } else if (key == "end") {
            want(1);
            ended = true;
        } else {
            parse_error(line, "unknown key '" + std::string(key) + "'");
        }
    }
    if (!ended) parse_error(line, "missing 'end'");
    if (r.witness) {
        if (!witness_forward) parse_error(line, "witness without witness_forward");
        r.witness->forward_arcs = *witness_forward;
    } else if (witness_forward) {
        parse_error(line, "witness_forward without witness");
    }
    return r;
}

// --- verification ------------------------------------------------------------------

namespace {

struct Replay {
    OrientedGraph graph;
    std::vector<Vertex> label; // local -> section id
    std::int64_t k = 0;
};

// Replays one section starting from `start` (section ids = local ids of start).
bool replay_section(Replay& state, const TraceSection& t, const ReductionOptions& opts, VerifyResult& out) {
    auto fail = [&](std::size_t i, const std::string& why) {
        out.ok = false;
        out.problems.push_back("trace " + t.name + " step " + std::to_string(i + 1) + ": " + why);
        return false;
    };
    state.label = VertexSet::range(state.graph.num_vertices()).ids();
    Vertex fresh = state.graph.num_vertices();

    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        const StepLine& s = t.steps[i];
        std::unordered_map<Vertex, Vertex> local;
        for (std::size_t v = 0; v < state.label.size(); ++v) local[state.label[v]] = static_cast<Vertex>(v);
        std::vector<Vertex> removed;
        for (Vertex id : s.removed) {
            auto it = local.find(id);
            if (it == local.end()) return fail(i, "vertex " + std::to_string(id) + " is not present");
            removed.push_back(it->second);
        }
        if (s.rule != Rule::R2_BridgeTriangles && !s.added.empty()) return fail(i, "only the bridge rule adds vertices");

        const OrientedGraph& g = state.graph;
        const VertexSet rs(removed);
        if (rs.size() != removed.size()) return fail(i, "repeated vertex");
        std::optional<Reduced> next;
        std::int64_t expected_delta = 0;
        try {
            switch (s.rule) {
            case Rule::R1_SmallClique: {
                if (removed.size() != 2) return fail(i, "R1 removes two vertices");
                Vertex x = -1;
                for (Vertex w : g.neighbors(removed[0]))
                    if (w != removed[1]) x = w;
                const Rule1Match m{x, rs};
                if (x < 0 || !rule1_applies(g, m)) return fail(i, "R1 precondition fails");
                next = apply_rule1(g, m, state.k);
                break;
            }
            case Rule::R2_BridgeTriangles: {
                if (removed.size() != 3) return fail(i, "R2 removes b,c,d");
                if (s.added.size() != 1 || s.added[0] != fresh) return fail(i, "R2 must add the next fresh id");
                Rule2Match m;
                m.b = removed[0];
                m.c = removed[1];
                m.d = removed[2];
                for (Vertex w : g.neighbors(m.b))
                    if (w != m.c) m.a = w;
                for (Vertex w : g.neighbors(m.d))
                    if (w != m.c) m.e = w;
                if (!rule2_applies(g, m)) return fail(i, "R2 precondition fails");
                next = apply_rule2(g, m, state.k);
                break;
            }
            case Rule::R3_Degree:
                if (removed.size() != 1) return fail(i, "R3 removes one vertex");
                if (!rule3_applies(g, removed[0])) return fail(i, "R3 precondition fails");
                expected_delta = rule3_delta(g.degrees(removed[0]));
                next = apply_rule3(g, removed[0], state.k);
                break;
            case Rule::R4_BigClique:
                if (!rule4_applies(g, rs, opts)) return fail(i, "R4 precondition fails");
                expected_delta = rule4_delta(rs.size());
                next = apply_rule4(g, rs, state.k, opts);
                break;
            case Rule::R5_Triplet:
                if (!rule5_applies(g, rs, opts)) return fail(i, "R5 precondition fails");
                expected_delta = kRule5Delta;
                next = apply_rule5(g, rs, state.k, opts);
                break;
            }
        } catch (const Error& e) {
            return fail(i, e.what());
        }
        if (s.k_delta != expected_delta)
            return fail(i, "kdelta " + std::to_string(s.k_delta) + " should be " + std::to_string(expected_delta));

        std::vector<Vertex> label(next->to_parent.size());
        for (std::size_t v = 0; v < label.size(); ++v)
            label[v] = next->to_parent[v] >= 0 ? state.label[static_cast<std::size_t>(next->to_parent[v])] : fresh++;
        state.graph = std::move(next->graph);
        state.label = std::move(label);
        state.k = next->k;
    }
    if (state.k != t.final_k) {
        out.ok = false;
        out.problems.push_back("trace " + t.name + ": final_k " + std::to_string(t.final_k) + " should be " +
                               std::to_string(state.k));
        return false;
    }
    return true;
}

} // namespace

VerifyResult verify_report(const OrientedGraph& graph, const Report& r) {
    VerifyResult out;
    auto problem = [&](const std::string& s) {
        out.ok = false;
        out.problems.push_back(s);
    };

    try {
        if (r.n != graph.num_vertices() || r.m != graph.num_arcs()) problem("n or m does not match the instance");
        if (r.gamma_q != gamma(graph).q) problem("gamma_q should be " + std::to_string(gamma(graph).q));
        const bool connected = is_connected(graph);
        const std::int64_t thr = connected ? threshold(graph, r.k).q : 0;
        if (!connected) problem("instance is not connected");
        else if (r.threshold_q != thr) problem("threshold_q should be " + std::to_string(thr));

        std::optional<int> forward;
        if (r.witness) {
            if (!is_permutation_of(r.witness->order, graph.num_vertices())) {
                problem("witness is not a permutation of the vertices");
            } else {
                forward = count_forward(graph, r.witness->order);
                if (*forward != r.witness->forward_arcs)
                    problem("witness_forward " + std::to_string(r.witness->forward_arcs) + " should be " +
                            std::to_string(*forward));
            }
        }
        if (r.a_value && forward && *forward > *r.a_value) problem("witness exceeds a_value");

        if (r.decision == "YES") {
            const bool by_witness = forward && 4 * static_cast<std::int64_t>(*forward) >= thr;
            if (!by_witness && !r.guaranteed_by_bound) problem("YES without a witness meeting the threshold");
        } else if (r.decision == "NO") {
            if (forward && 4 * static_cast<std::int64_t>(*forward) >= thr) problem("NO but the witness meets the threshold");
            if (r.guaranteed_by_bound) problem("NO cannot be guaranteed by the bound");
        } else if (r.decision == "KERNEL") {
            if (!r.kernel) problem("KERNEL decision without a kernel block");
        } else {
            problem("unknown decision '" + r.decision + "'");
        }
        if (r.a_value && connected && (r.decision == "YES" || r.decision == "NO")) {
            const bool meets = 4 * *r.a_value >= thr;
            if (meets != (r.decision == "YES")) problem("decision disagrees with a_value");
        }

        ReductionOptions opts;
        opts.empty_remainder_connected = r.empty_remainder_connected;
        Replay state{graph, {}, r.k};
        std::optional<Instance> normalized;
        for (const TraceSection& t : r.traces) {
            if (!replay_section(state, t, opts, out)) break;
            if (t.name == "normalize") normalized = Instance{state.graph, state.k};
        }
        if (out.ok && r.reason == "decomposition" && !r.traces.empty() && r.traces.back().final_k > 0)
            problem("decomposition certificate ends with positive k");

        if (r.kernel) {
            const Instance expect = normalized ? *normalized : Instance{graph, r.k};
            if (!(r.kernel->graph == expect.graph)) problem("kernel block differs from the replayed graph");
            if (r.kernel->k != expect.k) problem("kernel k should be " + std::to_string(expect.k));
        }
        if (r.bounds) {
            const SizeBounds b = kernel_size_bounds(std::max<std::int64_t>(r.k, 0));
            if (r.bounds->vertices != b.vertices || r.bounds->arcs != b.arcs) problem("size bounds do not match k");
        }
    } catch (const std::exception& e) {
        problem(e.what());
    }
    return out;
}

} // namespace asapt
