#include <map>
#include <optional>

#include "doctest.h"
#include "srp/assignment.hpp"
#include "srp/cqm.hpp"
#include "srp/milp.hpp"
#include "srp/rng.hpp"
#include "support.hpp"

using namespace srp;
using test::toy_graph;

namespace {

SrpInstance toy_instance(int m, int k, std::optional<int> dispatch = std::nullopt) {
    return SrpInstance(toy_graph(), generate_requests(*toy_graph(), m, 50.0, 99 + m),
                       uniform_trucks(k, 100.0, 1.0), 1.0, dispatch);
}

std::vector<uint8_t> random_core(const VarIndex& idx, std::mt19937_64& rng) {
    std::vector<uint8_t> bits(static_cast<size_t>(idx.base_count()));
    for (auto& b : bits) b = static_cast<uint8_t>(rng() & 1);
    return bits;
}

}  // namespace

TEST_CASE("constrained model and linear model accept exactly the same core points") {
    for (const bool dispatch : {false, true}) {
        CAPTURE(dispatch);
        const SrpInstance inst = toy_instance(2, 2, dispatch ? std::optional<int>(1) : std::nullopt);
        const CqmModel cqm = build_cqm(inst);
        const MilpModel milp = build_milp(inst);

        // Every feasible plan is accepted by both models, and decoding the
        // encoding reproduces the plan bit for bit.
        const auto plans = test::enumerate_feasible_plans(inst);
        REQUIRE(!plans.empty());
        for (const RoutePlan& plan : plans) {
            const auto core = encode_plan(cqm.index, plan);
            CHECK(cqm_feasible(cqm, core));
            CHECK(assignment_feasible(milp.ir, complete_assignment(milp, core)));
            const DecodedAssignment dec = decode_assignment(inst, cqm.index, core);
            CHECK(dec.report.feasible());
            CHECK(encode_plan(cqm.index, dec.plan) == core);
        }

        // On random core points (nearly all infeasible) the verdicts agree,
        // and both match the decoder's report.
        std::mt19937_64 rng(mix_seed(2024, dispatch));
        for (int trial = 0; trial < 4000; ++trial) {
            const auto core = random_core(cqm.index, rng);
            const bool cqm_ok = cqm_feasible(cqm, core);
            const bool milp_ok = assignment_feasible(milp.ir, complete_assignment(milp, core));
            const bool decode_ok = decode_assignment(inst, cqm.index, core).report.feasible();
            CHECK(cqm_ok == milp_ok);
            CHECK(cqm_ok == decode_ok);
        }
    }
}

TEST_CASE("objective agrees with the plan evaluator on every feasible plan") {
    for (const bool dispatch : {false, true}) {
        const SrpInstance inst = toy_instance(2, 2, dispatch ? std::optional<int>(3) : std::nullopt);
        const CqmModel cqm = build_cqm(inst);
        for (const RoutePlan& plan : test::enumerate_feasible_plans(inst)) {
            const auto core = encode_plan(cqm.index, plan);
            CHECK(cqm_objective(cqm, core) ==
                  doctest::Approx(evaluate_objective(inst, plan)).epsilon(1e-12));
        }
    }
}

TEST_CASE("constraint families mirror the linear model, quadratic packing aside") {
    const SrpInstance inst = toy_instance(2, 2);
    const CqmModel cqm = build_cqm(inst);
    const MilpModel milp = build_milp(inst);

    std::map<std::string, int> cqm_fams, milp_fams;
    for (const CqmConstraint& c : cqm.constraints) ++cqm_fams[to_string(c.label)];
    for (const LinRow& r : milp.ir.rows) ++milp_fams[to_string(r.label)];
    milp_fams.erase("LIN");  // linearization scaffolding has no counterpart here
    CHECK(cqm_fams == milp_fams);

    // No linearization variables anywhere: the model lives on the core.
    CHECK(cqm.var_count() == cqm.index.base_count());
}

TEST_CASE("stop packing is quadratic with a usable linear stand-in") {
    const SrpInstance inst = toy_instance(2, 1);
    const CqmModel cqm = build_cqm(inst);

    int quadratic_rows = 0;
    for (const CqmConstraint& c : cqm.constraints) {
        if (c.quad.empty()) {
            CHECK(c.linear_penalty_form.empty());
            continue;
        }
        ++quadratic_rows;
        CHECK(c.label == RowLabel::c8);
        CHECK(c.sense == Sense::ge);
        CHECK(c.rhs == 0.0);
        CHECK(!c.linear_penalty_form.empty());
    }
    CHECK(quadratic_rows == 1 * (2 * 2 - 2));  // k (2m - 2)

    // On points where each stop hosts at most one action, the quadratic row
    // and its linear stand-in agree; any point they disagree on violates the
    // one-action-per-stop family, so the penalty compiler may substitute.
    std::mt19937_64 rng(77);
    bool saw_disagreement = false;
    for (int trial = 0; trial < 2000; ++trial) {
        const auto bits = random_core(cqm.index, rng);
        bool one_action_per_stop = true;
        for (const CqmConstraint& c : cqm.constraints)
            if (c.label == RowLabel::c2 && !cqm_constraint_satisfied(c, bits))
                one_action_per_stop = false;
        for (const CqmConstraint& c : cqm.constraints) {
            if (c.quad.empty()) continue;
            double lin_val = 0.0;
            for (const LinTerm& t : c.linear_penalty_form) lin_val += t.coeff * bits[t.var];
            const bool lin_ok = lin_val >= c.rhs - 1e-9;
            const bool quad_ok = cqm_constraint_satisfied(c, bits);
            if (one_action_per_stop) CHECK(lin_ok == quad_ok);
            if (lin_ok != quad_ok) {
                saw_disagreement = true;
                CHECK(!one_action_per_stop);
            }
        }
    }
    CHECK(saw_disagreement);  // the stand-in is not trivially identical
}

TEST_CASE("consecutive-stop products are priced directly and pruned at zero") {
    const CqmModel cqm = build_cqm(toy_instance(2, 2));
    CHECK(!cqm.objective_quad.empty());
    for (const QuadTerm& t : cqm.objective_quad) CHECK(t.coeff != 0.0);

    // A start hub adds return-leg pricing: d * (unload bit) minus the same d
    // on follow-up products, so negative cross terms must appear.
    const SrpInstance inst(toy_graph(), {{2, 3, 50.0}, {3, 4, 50.0}}, uniform_trucks(2, 100.0, 1.0),
                           1.0, 1);
    const CqmModel with_dispatch = build_cqm(inst);
    bool saw_negative = false;
    for (const QuadTerm& t : with_dispatch.objective_quad) saw_negative |= t.coeff < 0.0;
    CHECK(saw_negative);
    for (const QuadTerm& t : with_dispatch.objective_quad) CHECK(t.coeff != 0.0);
}
