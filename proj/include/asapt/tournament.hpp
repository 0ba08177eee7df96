#pragma once

#include "asapt/bounds.hpp"
#include "asapt/graph.hpp"

namespace asapt {

bool is_tournament(const OrientedGraph& g);

// Guaranteed forward-arc count for a tournament on n vertices, in quarter
// units: 2m + 3n - 4 for even n, 2m + 3(n-1) - 4 for odd n, clamped at 0.
std::int64_t tournament_bound_q(Vertex n);

// Constructive ordering meeting tournament_bound_q. Throws NotTournament.
WitnessOrdering tournament_ordering(const OrientedGraph& t);

} // namespace asapt
