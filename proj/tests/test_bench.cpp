#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "srp/bench.hpp"
#include "srp/milp.hpp"
#include "srp/rng.hpp"
#include "srp/var_index.hpp"
#include "support.hpp"

using namespace srp;
using test::toy_graph;

namespace {

BenchConfig quick_config() {
    BenchConfig config;
    config.network_name = "toy";
    config.graph = toy_graph();
    config.request_counts = {1, 2};
    config.trials = 2;
    config.seed = 1;
    config.solvers = {"exact", "milp-emit", "anneal"};
    config.schedule.sweeps = 300;
    config.schedule.restarts = 8;
    return config;
}

bool same_modulo_timing(const RunRecord& a, const RunRecord& b) {
    return a.network == b.network && a.m == b.m && a.k == b.k && a.seed == b.seed &&
           a.solver == b.solver && a.dispatch == b.dispatch && a.variables == b.variables &&
           a.constraints == b.constraints && a.objective == b.objective && a.feasible == b.feasible;
}

RunRecord make_record(const std::string& solver, int m, double objective, bool feasible) {
    RunRecord r;
    r.network = "n";
    r.m = m;
    r.k = m;
    r.seed = 5;
    r.solver = solver;
    if (feasible) r.objective = objective;
    r.feasible = feasible;
    return r;
}

}  // namespace

TEST_CASE("a bench run times every solver on every drawn instance") {
    const BenchConfig config = quick_config();
    std::ostringstream progress;
    const std::vector<RunRecord> runs = run_bench(config, &progress);
    REQUIRE(runs.size() == 2 * 2 * 3);  // request counts x trials x solvers
    CHECK(progress.str().find("toy m=1 k=1 trial=0 exact") == 0);

    for (size_t at = 0; at < runs.size(); ++at) {
        const RunRecord& rec = runs[at];
        CAPTURE(at);
        CHECK(rec.network == "toy");
        CHECK(rec.k == rec.m);  // truck_count 0 means one truck per request
        CHECK(rec.preprocess_seconds >= 0.0);
        CHECK(rec.solve_seconds >= 0.0);
        CHECK(rec.objective.has_value() == rec.feasible);

        // All solvers of one trial see the same drawn instance.
        const uint64_t expect_seed = mix_seed(config.seed, static_cast<uint64_t>(rec.m),
                                              static_cast<uint64_t>((at / 3) % 2));
        CHECK(rec.seed == expect_seed);

        const SrpInstance inst(config.graph,
                               generate_requests(*config.graph, rec.m, config.load, rec.seed),
                               uniform_trucks(rec.k, config.truck_capacity, config.rental_fee),
                               config.unit_cost, std::nullopt);
        if (rec.solver == "exact") {
            CHECK(!rec.variables);
            CHECK(!rec.constraints);
            REQUIRE(rec.feasible);
            CHECK(*rec.objective == doctest::Approx(test::brute_force_optimum(inst)).epsilon(1e-12));
        } else if (rec.solver == "milp-emit") {
            const auto [vars, rows] = count_model(build_milp(inst));
            CHECK(rec.variables == vars);
            CHECK(rec.constraints == rows);
            CHECK(!rec.objective);
            CHECK(rec.solve_seconds == 0.0);  // nothing is solved, only built
        } else {
            REQUIRE(rec.solver == "anneal");
            const QuboModel qubo = to_penalty_qubo(build_cqm(inst), default_penalties(inst));
            CHECK(rec.variables == qubo.var_count);
            CHECK(rec.constraints == static_cast<long long>(build_cqm(inst).constraints.size()));
            if (rec.feasible)
                CHECK(*rec.objective >= test::brute_force_optimum(inst) - 1e-9);
        }
    }

    // Reruns reproduce everything except the wall-clock fields.
    const std::vector<RunRecord> again = run_bench(config);
    REQUIRE(again.size() == runs.size());
    for (size_t at = 0; at < runs.size(); ++at) CHECK(same_modulo_timing(runs[at], again[at]));
}

TEST_CASE("bench configs are validated up front") {
    BenchConfig config = quick_config();
    config.graph = nullptr;
    CHECK_THROWS_AS(run_bench(config), std::invalid_argument);

    config = quick_config();
    config.trials = 0;
    CHECK_THROWS_AS(run_bench(config), std::invalid_argument);

    config = quick_config();
    config.solvers = {"exact", "sorcery"};
    CHECK_THROWS_AS(run_bench(config), std::invalid_argument);
}

TEST_CASE("run records survive the csv byte for byte") {
    std::vector<RunRecord> runs;
    RunRecord a;
    a.network = "sioux-falls";
    a.m = 3;
    a.k = 3;
    a.seed = 18446744073709551615ULL;  // unsigned parse path
    a.solver = "anneal";
    a.dispatch = true;
    a.variables = 94;
    a.constraints = 50;
    a.preprocess_seconds = 1.0 / 3.0;
    a.solve_seconds = 1e-300;
    a.objective = 0.1;
    a.feasible = true;
    runs.push_back(a);
    RunRecord b = make_record("milp-emit", 1, 0.0, false);
    b.variables = 9;
    b.constraints = 12;
    runs.push_back(b);
    runs.push_back(make_record("exact", 2, 21.0, true));

    std::ostringstream out;
    write_runs_csv(out, runs);
    std::istringstream in(out.str());
    const std::vector<RunRecord> back = read_runs_csv(in);
    REQUIRE(back.size() == runs.size());
    for (size_t r = 0; r < runs.size(); ++r) {
        CHECK(same_modulo_timing(runs[r], back[r]));
        CHECK(back[r].preprocess_seconds == runs[r].preprocess_seconds);
        CHECK(back[r].solve_seconds == runs[r].solve_seconds);
    }

    std::istringstream first_line(out.str());
    std::string header;
    std::getline(first_line, header);
    CHECK(header == run_csv_header());

    RunRecord comma = make_record("exact", 1, 1.0, true);
    comma.network = "a,b";
    std::ostringstream sink;
    CHECK_THROWS_AS(write_runs_csv(sink, {comma}), std::invalid_argument);
}

TEST_CASE("csv reading fails loudly and names the line") {
    const auto expect_error = [](const std::string& text, const std::string& needle) {
        std::istringstream in(text);
        try {
            read_runs_csv(in);
            FAIL("expected a parse error for: " << text);
        } catch (const std::runtime_error& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    const std::string header(run_csv_header());

    expect_error("", "empty");
    expect_error("wrong,header\n", "unexpected header");
    expect_error(header + "\nn,1,1,5,exact,false,,,0,0,1\n", "expected 12 fields");
    expect_error(header + "\nn,1,1,5,exact,false,,,zero,0,1,true\n", "line 2");
    expect_error(header + "\nn,1,1,5,exact,maybe,,,0,0,1,true\n", "bad dispatch");
    expect_error(header + "\nn,1,1,5,exact,false,,,0,0,1,true\n" +
                     "n,1,1,5,exact,false,,,0,0,oops,true\n",
                 "line 3");

    // Blank lines and trailing carriage returns are tolerated, though.
    std::istringstream ok(header + "\r\n\nn,1,1,5,exact,false,,,0,0,1,true\r\n");
    CHECK(read_runs_csv(ok).size() == 1);
}

TEST_CASE("aggregation averages within groups and attaches nominal sizes") {
    std::vector<RunRecord> runs;
    RunRecord e1 = make_record("exact", 2, 10.0, true);
    e1.solve_seconds = 1.0;
    RunRecord e2 = make_record("exact", 2, 14.0, true);
    e2.solve_seconds = 3.0;
    runs.insert(runs.end(), {e1, e2});
    for (double objective : {20.0, 30.0}) {
        RunRecord r = make_record("anneal", 2, objective, true);
        r.variables = 94;
        r.constraints = 50;
        runs.push_back(r);
    }
    RunRecord miss = make_record("anneal", 2, 0.0, false);
    miss.variables = 94;
    miss.constraints = 50;
    runs.push_back(miss);
    RunRecord milp = make_record("milp-emit", 1, 0.0, false);
    milp.variables = 9;
    milp.constraints = 12;
    runs.push_back(milp);

    const std::vector<ReportRow> rows = aggregate_runs(runs);
    REQUIRE(rows.size() == 3);  // sorted by solver within one network: anneal, exact, milp-emit
    CHECK(rows[0].solver == "anneal");
    CHECK(rows[0].runs == 3);
    CHECK(rows[0].feasible_runs == 2);
    CHECK(*rows[0].mean_objective == doctest::Approx(25.0));  // over feasible runs only
    CHECK(*rows[0].variables == 94);
    CHECK(*rows[0].variables_nominal == VarIndex(2, 2).base_count());
    CHECK(*rows[0].constraints == 50);

    CHECK(rows[1].solver == "exact");
    CHECK(rows[1].mean_solve_seconds == doctest::Approx(2.0));
    CHECK(*rows[1].mean_objective == doctest::Approx(12.0));
    CHECK(!rows[1].variables);
    CHECK(!rows[1].variables_nominal);

    CHECK(rows[2].solver == "milp-emit");
    CHECK(!rows[2].mean_objective);
    CHECK(*rows[2].variables_nominal == milp_variable_count_unpruned(1, 1, false));

    std::ostringstream out;
    write_report_csv(out, rows);
    std::istringstream lines(out.str());
    std::string header, anneal_row;
    std::getline(lines, header);
    std::getline(lines, anneal_row);
    CHECK(header ==
          "network,m,k,solver,dispatch,runs,feasible_runs,mean_preprocess_s,mean_solve_s,"
          "mean_objective,variables,variables_nominal,constraints");
    CHECK(anneal_row == "n,2,2,anneal,false,3,2,0,0,25,94,34,50");

    RunRecord clash = make_record("anneal", 2, 22.0, true);
    clash.variables = 95;  // same group, different model size
    clash.constraints = 50;
    runs.push_back(clash);
    CHECK_THROWS_AS(aggregate_runs(runs), std::invalid_argument);
}

TEST_CASE("doubles are written in shortest round-trip form") {
    for (const double v : {0.0, 1.0, -3.25, 0.1, 1.0 / 3.0, 1e-300, 6.02214076e23}) {
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(2.0) == "2");
    CHECK(format_double(0.1) == "0.1");
}
