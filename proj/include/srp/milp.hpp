#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "srp/instance.hpp"
#include "srp/model_ir.hpp"
#include "srp/var_index.hpp"

namespace srp {

// How an auxiliary variable is defined from the core variables: at an
// objective-optimal solution, var = max(0, sum(expr) + expr_const). Used to
// complete a core assignment without solving.
struct AuxDef {
    int var = 0;
    std::vector<LinTerm> expr;
    double expr_const = 0.0;
};

// A mixed-integer linear model of an instance: the IR plus the variable
// bijection and the auxiliary-variable recipes.
struct MilpModel {
    ModelIR ir;
    VarIndex index;
    std::vector<AuxDef> aux;
};

// One-sided linearization of the product a*b of two binaries: a fresh
// continuous w in [0,1] with the row w >= a + b - 1, plus cost*w in the
// objective. Exact at an optimum only because w is minimized, so cost must
// be >= 0 (negative cost throws). Returns the new variable id.
int linearize_and(MilpModel& model, int a, int b, double cost, std::string name,
                  RowLabel label = RowLabel::lin);

// Last-stop detector: continuous w in [0,1] with w >= y - sum(next_stop_bits),
// equal to y * (1 - sum) at an optimum when the sum is 0/1-valued. cost must
// be >= 0. An empty bit list means the detector degenerates to y itself;
// callers are expected to fold that case into the objective directly.
int linearize_last_stop(MilpModel& model, int y, const std::vector<int>& next_stop_bits,
                        double cost, std::string name, RowLabel label = RowLabel::cbeta);

// Builds the full truck-routing MILP for the instance:
//   minimize   sum_j fee_j Z_j + unit_cost * (consecutive-stop distances via
//              linearized products, plus dispatch legs when configured)
//   subject to the C1..C8 families (service, one-action-per-stop, same-truck,
//              load-before-unload, usage coupling, capacity, first-stop
//              loading, stop-prefix packing).
// Products with zero distance are pruned and never become variables.
MilpModel build_milp(const SrpInstance& inst);

// (variable count, constraint count) of the built model.
std::pair<int, int> count_model(const MilpModel& model);

// Closed-form counts for the convention that every consecutive-stop product
// term (4 role combinations per ordered request pair, stops q = 2..2m) gets
// a linearization variable even when its distance coefficient is zero, and
// each return-leg detector (q = 1..2m-1) one more when dispatch is on:
//   4 m^2 k + k  core variables,
//   + 4 m^2 k (2m - 1)  products,  + m k (2m - 1)  detectors if dispatch.
// The built model prunes zero-cost products, so its actual count is at most
// this.
long long milp_variable_count_unpruned(int m, int k, bool dispatch);

// Completes a 0/1 assignment of the core variables with the optimal values
// of every auxiliary variable, yielding a full-model assignment.
std::vector<double> complete_assignment(const MilpModel& model, const std::vector<uint8_t>& core);

}  // namespace srp
