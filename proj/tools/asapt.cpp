// asapt: decide whether a connected oriented graph has an acyclic subgraph
// of at least m/2 + (n-1)/4 + k/4 arcs.
//
// Exit codes:
//   solve, oracle   0 YES, 1 NO, 2 error
//   kernelize       0 YES, 1 kernel produced, 2 error
//   verify          0 consistent, 1 inconsistent, 2 error
//   gen             0 ok, 2 error

#include "asapt/bounds.hpp"
#include "asapt/dp_solver.hpp"
#include "asapt/error.hpp"
#include "asapt/generators.hpp"
#include "asapt/io.hpp"
#include "asapt/kernel.hpp"
#include "asapt/reduction.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace asapt;

namespace {

struct Common {
    std::string input;
    std::string output;
    std::optional<std::int64_t> k;
    bool empty_remainder_connected = false;
};

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

Instance load(const Common& c) {
    InstanceFile f = read_instance_file(c.input);
    return Instance{std::move(f.graph), c.k.value_or(f.k)};
}

void emit(const Report& r, const std::string& path) {
    if (path.empty()) {
        write_report(std::cout, r);
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::Parse, "cannot write " + path);
    write_report(out, r);
}

int run_solve(const Common& c, int max_u, int jobs) {
    const auto start = std::chrono::steady_clock::now();
    const Instance in = load(c);
    if (!is_connected(in.graph)) throw Error(ErrorCode::NotConnected, "solve needs a connected graph");
    DpOptions dp;
    dp.max_u = max_u;
    dp.parallel = jobs != 1;
    DecomposeOptions dopts;
    dopts.rules.empty_remainder_connected = c.empty_remainder_connected;
    const SolveResult s = solve(in, dp, dopts);

    Report r = solve_report(in, s, c.empty_remainder_connected);
    r.time_ms = elapsed_ms(start);
    emit(r, c.output);
    return s.decision ? 0 : 1;
}

int run_kernelize(const Common& c, bool no_shortcuts, const std::string& kernel_out) {
    const auto start = std::chrono::steady_clock::now();
    const Instance in = load(c);
    KernelOptions opts;
    opts.shortcuts = !no_shortcuts;
    const KernelResult k = kernelize(in, opts);

    Report r = kernel_report(in, k);
    if (k.verdict == KernelVerdict::Kernel && !kernel_out.empty()) {
        std::ofstream out(kernel_out);
        if (!out) throw Error(ErrorCode::Parse, "cannot write " + kernel_out);
        write_instance(out, k.kernel.graph, k.kernel.k);
    }
    r.time_ms = elapsed_ms(start);
    emit(r, c.output);
    return k.verdict == KernelVerdict::Yes ? 0 : 1;
}

int run_oracle(const Common& c, int cap) {
    const auto start = std::chrono::steady_clock::now();
    const Instance in = load(c);
    if (!is_connected(in.graph)) throw Error(ErrorCode::NotConnected, "oracle decisions need a connected graph");
    const OracleResult o = oracle_max_acyclic(in.graph, static_cast<Vertex>(cap));
    const bool yes = decide_threshold(in.graph, in.k, o.a);
    Report r = oracle_report(in, o);
    r.time_ms = elapsed_ms(start);
    emit(r, c.output);
    return yes ? 0 : 1;
}

int run_verify(const std::string& instance_path, const std::string& report_path) {
    const InstanceFile f = read_instance_file(instance_path);
    std::ifstream in(report_path);
    if (!in) throw Error(ErrorCode::Parse, "cannot open " + report_path);
    const Report r = parse_report(in);
    const VerifyResult v = verify_report(f.graph, r);
    for (const std::string& p : v.problems) std::cout << "mismatch: " << p << '\n';
    std::cout << (v.ok ? "consistent" : "inconsistent") << '\n';
    return v.ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acyclic subgraphs above the m/2 + (n-1)/4 guarantee"};
    app.require_subcommand(1);

    int jobs = 0;
    app.add_option("--jobs", jobs, "Worker threads (0 = OpenMP default, 1 = serial)")->check(CLI::NonNegativeNumber);

    auto add_common = [](CLI::App* sub, Common& c) {
        sub->add_option("instance", c.input, "Instance file")->required();
        sub->add_option("--k", c.k, "Override the parameter from the file header");
        sub->add_option("-o,--out", c.output, "Write the report here instead of stdout");
    };

    Common solve_c, kernel_c, oracle_c;
    int max_u = DpOptions{}.max_u;
    auto* solve_cmd = app.add_subcommand("solve", "Decide the instance");
    add_common(solve_cmd, solve_c);
    solve_cmd->add_option("--max-u", max_u, "Largest removed set whose orderings are enumerated");
    solve_cmd->add_flag("--empty-remainder-connected", solve_c.empty_remainder_connected,
                        "Let the clique and triplet rules remove every remaining vertex");

    bool no_shortcuts = false;
    std::string kernel_out;
    auto* kernel_cmd = app.add_subcommand("kernelize", "Reduce to an equivalent small instance");
    add_common(kernel_cmd, kernel_c);
    kernel_cmd->add_flag("--no-shortcuts", no_shortcuts, "Skip the two early YES tests");
    kernel_cmd->add_option("--kernel-out", kernel_out, "Also write the kernel as an instance file");

    int cap = kDefaultOracleCap;
    auto* oracle_cmd = app.add_subcommand("oracle", "Exact maximum acyclic subgraph by subset DP");
    add_common(oracle_cmd, oracle_c);
    oracle_cmd->add_option("--oracle-cap", cap, "Refuse graphs with more vertices")->check(CLI::Range(1, 30));

    std::string gen_kind;
    int gen_n = 5, gen_t = 1, gen_blocks = 4;
    double density = 0.3;
    std::uint64_t seed = 1;
    std::int64_t gen_k = 0;
    auto* gen_cmd = app.add_subcommand("gen", "Write a generated instance to stdout");
    gen_cmd->add_option("kind", gen_kind, "ht, tournament, connected or forest")
        ->required()
        ->check(CLI::IsMember({"ht", "tournament", "connected", "forest"}));
    gen_cmd->add_option("--n", gen_n, "Vertex count")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--t", gen_t, "Number of triangles for ht")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--blocks", gen_blocks, "Block count for forest")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--density", density, "Extra-pair probability for connected")->check(CLI::Range(0.0, 1.0));
    gen_cmd->add_option("--seed", seed, "Generator seed");
    gen_cmd->add_option("--k", gen_k, "Parameter written to the header");

    std::string verify_instance, verify_report_path;
    auto* verify_cmd = app.add_subcommand("verify", "Check a report against its instance");
    verify_cmd->add_option("instance", verify_instance, "Instance file")->required();
    verify_cmd->add_option("report", verify_report_path, "Report file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    if (jobs > 0) omp_set_num_threads(jobs);

    try {
        if (*solve_cmd) return run_solve(solve_c, max_u, jobs);
        if (*kernel_cmd) return run_kernelize(kernel_c, no_shortcuts, kernel_out);
        if (*oracle_cmd) return run_oracle(oracle_c, cap);
        if (*verify_cmd) return run_verify(verify_instance, verify_report_path);
        if (*gen_cmd) {
            OrientedGraph g;
            if (gen_kind == "ht") g = gen_Ht(gen_t);
            else if (gen_kind == "tournament") g = gen_tournament(gen_n, seed);
            else if (gen_kind == "connected") g = gen_connected_oriented(gen_n, density, seed);
            else g = gen_forest_of_cliques(random_forest_plan(gen_blocks, seed), seed).graph;
            write_instance(std::cout, g, gen_k);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
