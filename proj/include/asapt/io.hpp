#pragma once

#include "asapt/bounds.hpp"
#include "asapt/dp_solver.hpp"
#include "asapt/kernel.hpp"
#include "asapt/reduction.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace asapt {

// --- instance files -------------------------------------------------------------
//
//   n m k
//   u v          (m lines, arc u -> v, 0-indexed)
//
// '#' starts a comment; blank lines are ignored.

struct InstanceFile {
    OrientedGraph graph;
    std::int64_t k = 0;
};

// Throws Parse (message names the line) and the graph build errors.
InstanceFile parse_instance(std::istream& in);
InstanceFile read_instance_file(const std::string& path);
void write_instance(std::ostream& out, const OrientedGraph& g, std::int64_t k);

// --- reports --------------------------------------------------------------------
//
// Line-oriented, one `key value...` per line, starting with "asapt-report 1"
// and ending with "end". Trace sections look like
//
//   trace <name> <steps>
//   step R3 removed=4 added= kdelta=3
//   final_k <k>
//
// with vertex ids local to the graph the section starts from: the input
// for the first section, the previous section's final graph afterwards.
// The triangle-pair rule (R2) lists its removed vertices in the order b,c,d and names the
// created vertex in `added`. A kernel block is
//
//   kernel <n> <m> <k>
//   <u> <v>      (m lines)

struct StepLine {
    Rule rule = Rule::R3_Degree;
    std::vector<Vertex> removed;
    std::vector<Vertex> added;
    std::int64_t k_delta = 0;
};

struct TraceSection {
    std::string name;
    std::vector<StepLine> steps;
    std::int64_t final_k = 0;
};

struct Report {
    std::string command;
    std::string decision; // YES, NO or KERNEL
    Vertex n = 0;
    std::int64_t m = 0;
    std::int64_t k = 0;
    std::int64_t gamma_q = 0;
    std::int64_t threshold_q = 0;
    std::optional<std::int64_t> a_value; // exact a(G)
    std::optional<WitnessOrdering> witness;
    bool guaranteed_by_bound = false; // YES without a witness
    std::string reason;
    bool empty_remainder_connected = false;
    std::vector<TraceSection> traces;
    std::optional<VertexSet> u;
    std::optional<Instance> kernel;
    std::optional<SizeBounds> bounds;
    double time_ms = 0;
};

// Reports for each command; time_ms is left at 0.
Report report_header(const std::string& command, const Instance& instance, bool empty_remainder_connected = false);
Report solve_report(const Instance& instance, const SolveResult& result, bool empty_remainder_connected = false);
Report kernel_report(const Instance& instance, const KernelResult& result);
Report oracle_report(const Instance& instance, const OracleResult& result);

// Section for a trace whose initial graph is the section's starting graph.
TraceSection trace_section(const std::string& name, const ReductionTrace& trace);

void write_report(std::ostream& out, const Report& r);
// Throws Parse.
Report parse_report(std::istream& in);

struct VerifyResult {
    bool ok = true;
    std::vector<std::string> problems;
};

// Recomputes gamma, threshold and the witness count against `instance`
// (with the report's k), replays every trace section checking rule
// preconditions and k deltas, and compares the kernel block with the
// replayed graph. Never throws.
VerifyResult verify_report(const OrientedGraph& graph, const Report& r);

} // namespace asapt
