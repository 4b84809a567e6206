#pragma once

#include <cstdint>
#include <vector>

#include "srp/instance.hpp"
#include "srp/model_ir.hpp"
#include "srp/var_index.hpp"

namespace srp {

// Product of two distinct binary variables.
struct QuadTerm {
    int a = 0;
    int b = 0;
    double coeff = 0.0;
};

// A constraint allowing quadratic terms on the left-hand side.
struct CqmConstraint {
    std::vector<LinTerm> lin;
    std::vector<QuadTerm> quad;
    Sense sense = Sense::le;
    double rhs = 0.0;
    RowLabel label = RowLabel::c1;

    // For a quadratic constraint, an equivalent linear form valid wherever
    // the one-action-per-stop family holds (any assignment the two forms
    // disagree on violates that family). The penalty compiler uses this,
    // since squaring a quadratic would leave the QUBO's degree bound.
    std::vector<LinTerm> linear_penalty_form;
};

// The same feasible region as the MILP over the core X/Y/Z variables, but
// stated natively: constraints may be quadratic (the stop-packing family
// is) and the objective prices consecutive-stop products directly, so no
// linearization variables exist. Quadratic throughout, degree <= 2.
struct CqmModel {
    VarIndex index;
    std::vector<CqmConstraint> constraints;
    std::vector<LinTerm> objective_lin;
    std::vector<QuadTerm> objective_quad;

    int var_count() const { return index.base_count(); }
};

CqmModel build_cqm(const SrpInstance& inst);

double cqm_objective(const CqmModel& model, const std::vector<uint8_t>& bits);
bool cqm_constraint_satisfied(const CqmConstraint& c, const std::vector<uint8_t>& bits);
bool cqm_feasible(const CqmModel& model, const std::vector<uint8_t>& bits);

}  // namespace srp
