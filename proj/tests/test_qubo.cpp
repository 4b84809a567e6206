#include <cmath>
#include <optional>
#include <sstream>

#include "doctest.h"
#include "srp/assignment.hpp"
#include "srp/qubo.hpp"
#include "srp/rng.hpp"
#include "support.hpp"

using namespace srp;
using test::toy_graph;

namespace {

SrpInstance toy_instance(int m, int k, std::optional<int> dispatch = std::nullopt) {
    return SrpInstance(toy_graph(), generate_requests(*toy_graph(), m, 50.0, 99 + m),
                       uniform_trucks(k, 100.0, 1.0), 1.0, dispatch);
}

QuboModel compile(const SrpInstance& inst) {
    return to_penalty_qubo(build_cqm(inst), default_penalties(inst));
}

int count_prefix(const QuboModel& q, const std::string& prefix) {
    int n = 0;
    for (const std::string& name : q.names) n += name.rfind(prefix, 0) == 0;
    return n;
}

}  // namespace

TEST_CASE("slack-optimal energy minus offset reproduces the objective at feasible cores") {
    for (const bool dispatch : {false, true}) {
        CAPTURE(dispatch);
        const SrpInstance inst = toy_instance(2, 2, dispatch ? std::optional<int>(1) : std::nullopt);
        const CqmModel cqm = build_cqm(inst);
        const QuboModel qubo = to_penalty_qubo(cqm, default_penalties(inst));
        CHECK(qubo.core_count == cqm.var_count());

        for (const RoutePlan& plan : test::enumerate_feasible_plans(inst)) {
            const auto core = encode_plan(cqm.index, plan);
            const double min_e = test::min_energy_at_core(qubo, core);
            CHECK(min_e - qubo.offset ==
                  doctest::Approx(evaluate_objective(inst, plan)).epsilon(1e-9));
        }
    }
}

TEST_CASE("the global minimum over all bit vectors sits at an optimal feasible core") {
    const SrpInstance inst = toy_instance(1, 1);
    const CqmModel cqm = build_cqm(inst);
    const QuboModel qubo = to_penalty_qubo(cqm, default_penalties(inst));
    REQUIRE(qubo.core_count == 5);
    REQUIRE(qubo.var_count == 14);  // 5 core + 9 slack bits at this size

    double best = std::numeric_limits<double>::infinity();
    std::vector<uint8_t> best_bits;
    std::vector<uint8_t> bits(static_cast<size_t>(qubo.var_count));
    for (uint32_t mask = 0; mask < (1u << qubo.var_count); ++mask) {
        for (int b = 0; b < qubo.var_count; ++b) bits[static_cast<size_t>(b)] = (mask >> b) & 1;
        const double e = qubo.energy(bits);
        if (e < best) {
            best = e;
            best_bits = bits;
        }
    }

    CHECK(best - qubo.offset == doctest::Approx(test::brute_force_optimum(inst)).epsilon(1e-9));
    CHECK(decode_assignment(inst, cqm.index, best_bits).report.feasible());

    // The structured scan over slack components agrees with the raw sweep.
    best_bits.resize(static_cast<size_t>(qubo.core_count));
    CHECK(test::min_energy_at_core(qubo, best_bits) == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("infeasible cores always cost more than any feasible plan") {
    const SrpInstance inst = toy_instance(2, 2);
    const CqmModel cqm = build_cqm(inst);
    const QuboModel qubo = to_penalty_qubo(cqm, default_penalties(inst));

    double worst_feasible = 0.0;
    for (const RoutePlan& plan : test::enumerate_feasible_plans(inst))
        worst_feasible = std::max(worst_feasible, evaluate_objective(inst, plan));

    std::mt19937_64 rng(4242);
    int infeasible_seen = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<uint8_t> core(static_cast<size_t>(qubo.core_count));
        for (auto& b : core) b = static_cast<uint8_t>(rng() & 1);
        if (cqm_feasible(cqm, core)) continue;
        ++infeasible_seen;
        CHECK(test::min_energy_at_core(qubo, core) - qubo.offset > worst_feasible + 0.5);
    }
    CHECK(infeasible_seen > 0);
}

TEST_CASE("slack budgets follow the constraint ranges") {
    const QuboModel small = compile(toy_instance(1, 1));
    CHECK(count_prefix(small, "S_C2_") == 2);  // one bit per one-action-per-stop row
    CHECK(count_prefix(small, "S_C4_") == 1);  // prefix-order rows, range 1 at this size
    CHECK(count_prefix(small, "S_C5_") == 2);  // usage-indicator rows
    CHECK(count_prefix(small, "S_C6_") == 4);  // capacity 100 / load 50 -> two bits per row
    CHECK(count_prefix(small, "S_C8_") == 0);  // no packing rows with a single request
    for (int id = 0; id < small.core_count; ++id) CHECK(small.names[static_cast<size_t>(id)][0] != 'S');

    const QuboModel larger = compile(toy_instance(2, 2));
    CHECK(larger.var_count == 94);
    CHECK(larger.core_count == 34);
    CHECK(count_prefix(larger, "S_C8_") == 8);  // k (2m - 2) rows, capped at two bits

    // A fractional load rescales the capacity rows by the common divisor:
    // capacity 1 / load 0.25 -> right-hand side 4 -> three bits per row.
    const SrpInstance frac(toy_graph(), {{1, 3, 0.25}}, uniform_trucks(1, 1.0, 1.0), 1.0,
                           std::nullopt);
    const QuboModel rescaled = compile(frac);
    CHECK(count_prefix(rescaled, "S_C6_") == 6);
    const CqmModel frac_cqm = build_cqm(frac);
    for (const RoutePlan& plan : test::enumerate_feasible_plans(frac)) {
        const auto core = encode_plan(frac_cqm.index, plan);
        CHECK(test::min_energy_at_core(rescaled, core) - rescaled.offset ==
              doctest::Approx(evaluate_objective(frac, plan)).epsilon(1e-9));
    }
}

TEST_CASE("terms are upper-triangular, deduplicated, and zero-free") {
    const QuboModel qubo = compile(toy_instance(2, 2));
    REQUIRE(!qubo.terms.empty());
    double seen_max = 0.0;
    for (size_t t = 0; t < qubo.terms.size(); ++t) {
        CHECK(qubo.terms[t].a <= qubo.terms[t].b);
        CHECK(qubo.terms[t].b < qubo.var_count);
        CHECK(qubo.terms[t].coeff != 0.0);
        if (t > 0)
            CHECK(std::pair(qubo.terms[t - 1].a, qubo.terms[t - 1].b) <
                  std::pair(qubo.terms[t].a, qubo.terms[t].b));
        seen_max = std::max(seen_max, std::fabs(qubo.terms[t].coeff));
    }
    CHECK(qubo.max_abs_coeff() == seen_max);
    CHECK_THROWS_AS(qubo.energy(std::vector<uint8_t>(8)), std::invalid_argument);
}

TEST_CASE("default weights dominate every feasible objective") {
    for (const bool dispatch : {false, true}) {
        CAPTURE(dispatch);
        const SrpInstance inst = toy_instance(2, 2, dispatch ? std::optional<int>(2) : std::nullopt);
        const PenaltyWeights w = default_penalties(inst);
        double worst = 0.0;
        for (const RoutePlan& plan : test::enumerate_feasible_plans(inst))
            worst = std::max(worst, evaluate_objective(inst, plan));
        for (const double v : w.by_label) {
            CHECK(v == w[RowLabel::c1]);  // one shared weight across families
            CHECK(v >= 1.0 + worst - 1e-9);
        }
    }
}

TEST_CASE("text form round trips") {
    const QuboModel qubo = compile(toy_instance(2, 1));
    std::ostringstream out;
    write_qubo(out, qubo);
    std::istringstream in(out.str());
    const QuboModel back = read_qubo(in);

    CHECK(back.var_count == qubo.var_count);
    CHECK(back.core_count == qubo.core_count);
    CHECK(back.offset == qubo.offset);
    REQUIRE(back.terms.size() == qubo.terms.size());
    for (size_t t = 0; t < qubo.terms.size(); ++t) {
        CHECK(back.terms[t].a == qubo.terms[t].a);
        CHECK(back.terms[t].b == qubo.terms[t].b);
        CHECK(back.terms[t].coeff == qubo.terms[t].coeff);  // 17 digits round-trip exactly
    }
    REQUIRE(static_cast<int>(back.names.size()) == back.var_count);
    CHECK(back.names[3] == "v3");

    std::mt19937_64 rng(9);
    std::vector<uint8_t> bits(static_cast<size_t>(qubo.var_count));
    for (auto& b : bits) b = static_cast<uint8_t>(rng() & 1);
    CHECK(back.energy(bits) == qubo.energy(bits));

    std::istringstream garbage("not a qubo");
    CHECK_THROWS_AS(read_qubo(garbage), std::runtime_error);
    std::istringstream bad_term("offset 0\nvars 2 core 1\n0 5 1.5\n");
    CHECK_THROWS_AS(read_qubo(bad_term), std::runtime_error);
}

TEST_CASE("hopeless or non-integral rows and zero weights are rejected") {
    const CqmModel cqm = build_cqm(toy_instance(1, 1));
    CHECK_THROWS_AS(to_penalty_qubo(cqm, PenaltyWeights{}), std::invalid_argument);

    PenaltyWeights unit;
    for (double& v : unit.by_label) v = 1.0;

    CqmModel irrational{VarIndex(0, 2), {}, {}, {}};
    irrational.constraints.push_back(
        {{{0, 1.0}, {1, 3.14159265358979323846}}, {}, Sense::le, 1.0, RowLabel::c6, {}});
    CHECK_THROWS_AS(to_penalty_qubo(irrational, unit), std::invalid_argument);

    CqmModel hopeless{VarIndex(0, 2), {}, {}, {}};
    hopeless.constraints.push_back({{{0, 1.0}, {1, 1.0}}, {}, Sense::le, -1.0, RowLabel::c2, {}});
    CHECK_THROWS_AS(to_penalty_qubo(hopeless, unit), std::invalid_argument);
}
