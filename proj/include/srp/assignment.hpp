#pragma once

#include <cstdint>
#include <vector>

#include "srp/instance.hpp"
#include "srp/var_index.hpp"

namespace srp {

// A plan as a 0/1 vector over the core variables: stops packed from the
// front of each route, Z(j) = 1 iff the route is non-empty. Inverse of
// decode_assignment on feasible inputs.
std::vector<uint8_t> encode_plan(const VarIndex& index, const RoutePlan& plan);

struct DecodedAssignment {
    RoutePlan plan;
    FeasibilityReport report;
};

// Reads the stop sequences out of a core-variable assignment (bits beyond
// the X/Y/Z blocks are ignored) and checks the assignment against every
// model constraint family, reporting all violations:
//   C1 service counts, C2 one action per stop, C3 same truck, C4 prefix
//   order, C5/C7 usage-indicator consistency, C6 capacity, C8 stop packing.
// A stop with several set bits decodes to the lowest request id (and is
// reported under C2); nothing is repaired.
DecodedAssignment decode_assignment(const SrpInstance& inst, const VarIndex& index,
                                    const std::vector<uint8_t>& bits);

}  // namespace srp
