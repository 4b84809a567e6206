#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "srp/cqm.hpp"

namespace srp {

// One entry of a sparse upper-triangular QUBO matrix; a == b is the linear
// (diagonal) part.
struct QuboTerm {
    int a = 0;
    int b = 0;
    double coeff = 0.0;
};

// Unconstrained binary quadratic model: energy(x) = sum of coeff * x_a * x_b.
// The first core_count variables are the model's X/Y/Z block; the rest are
// slack bits introduced by inequality penalties. At any assignment that
// satisfies every source constraint (slacks set to absorb their inequality),
// energy(x) - offset equals the source model's objective.
struct QuboModel {
    int var_count = 0;
    int core_count = 0;
    std::vector<QuboTerm> terms;  // a <= b, unique keys, deterministic order
    double offset = 0.0;
    std::vector<std::string> names;

    double energy(const std::vector<uint8_t>& bits) const;
    double max_abs_coeff() const;
};

// Per-family penalty weights.
struct PenaltyWeights {
    std::array<double, 10> by_label{};  // indexed by RowLabel

    double& operator[](RowLabel l) { return by_label[static_cast<int>(l)]; }
    double operator[](RowLabel l) const { return by_label[static_cast<int>(l)]; }
};

// One weight for every family, at least 1 + (largest objective any feasible
// plan can reach), so a single violated constraint always costs more than
// any feasible plan saves. With a dispatch hub the bound also absorbs the
// dispatch legs and the worst-case negative mass of the return-leg products
// (those have negative coefficients off the feasible set).
PenaltyWeights default_penalties(const SrpInstance& inst);

// Compiles the constrained model into a penalty QUBO: equalities become
// weight * (lhs - rhs)^2; inequalities get binary slack expansions sized by
// the constraint's integer range (capacity rows are rescaled by their
// common divisor first; a row that cannot be made integral is rejected).
// The quadratic stop-packing family is penalized through its linear form,
// which matches it wherever the one-action-per-stop penalties are zero.
QuboModel to_penalty_qubo(const CqmModel& model, const PenaltyWeights& weights);

// Coordinate text form: "offset <value>" then one "a b coefficient" line
// per term. read_qubo restores names as v<id>.
void write_qubo(std::ostream& out, const QuboModel& qubo);
QuboModel read_qubo(std::istream& in);

}  // namespace srp
