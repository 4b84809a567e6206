#pragma once

#include <vector>

#include "srp/instance.hpp"

namespace srp {

// A partial solution during the exact search: some requests already woven
// into per-truck stop sequences, the rest not yet placed.
struct SearchNode {
    std::vector<std::vector<Stop>> routes;  // one per truck, may be empty
    std::vector<int> unassigned;            // request ids not yet placed
};

struct ExactOptions {
    // Guard rail against accidental exponential runs; raise deliberately.
    int max_requests = 6;
};

struct ExactResult {
    RoutePlan plan;
    double objective = 0.0;
    long long nodes_explored = 0;
};

// Admissible lower bound on the cost of every feasible completion of the
// node: fees of trucks already in use, plus the distance of the partial
// routes (insertion can only lengthen them -- hub distances obey the
// triangle inequality), plus what the farthest-apart unplaced request must
// add beyond the longest current route, plus the cheapest fee if no truck
// is open yet but work remains.
double lower_bound(const SrpInstance& inst, const SearchNode& node);

// Depth-first branch and bound over request-into-route insertions:
// requests in decreasing-load order, every truck choice (identical unused
// trucks collapsed to the lowest index) and every load/unload position
// pair that respects capacity. Prunes on lower_bound, so the optimum is
// never cut; among equal-cost optima the lexicographically smallest
// (truck, stop sequence) plan wins. Deterministic.
ExactResult solve_exact(const SrpInstance& inst, const ExactOptions& options = {});

}  // namespace srp
