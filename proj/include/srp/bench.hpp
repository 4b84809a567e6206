#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "srp/anneal.hpp"
#include "srp/exact.hpp"
#include "srp/instance.hpp"

namespace srp {

// One timed solver run. `objective` is set only when the run produced a
// feasible plan; `variables`/`constraints` only when the run built a model
// (the exact solver searches plans directly, so it has neither).
struct RunRecord {
    std::string network;
    int m = 0;
    int k = 0;
    uint64_t seed = 0;
    std::string solver;  // "exact" | "milp-emit" | "anneal"
    bool dispatch = false;
    std::optional<long long> variables;
    std::optional<long long> constraints;
    double preprocess_seconds = 0.0;
    double solve_seconds = 0.0;
    std::optional<double> objective;
    bool feasible = false;
};

const char* run_csv_header();

// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double v);

// Doubles are written in shortest round-trip form, so read(write(runs))
// reproduces every field exactly. Network names must not contain commas.
void write_runs_csv(std::ostream& out, const std::vector<RunRecord>& runs, bool header = true);
std::vector<RunRecord> read_runs_csv(std::istream& in);

struct BenchConfig {
    std::string network_name = "net";
    std::shared_ptr<const HubGraph> graph;
    std::vector<int> request_counts{1, 2, 3, 4, 5};
    int truck_count = 0;  // 0 = one truck per request
    int trials = 5;
    uint64_t seed = 1;
    bool dispatch = false;
    int dispatch_hub = 1;
    std::vector<std::string> solvers{"exact", "anneal"};
    double load = 50.0;
    double truck_capacity = 100.0;
    double rental_fee = 1.0;
    double unit_cost = 1.0;
    AnnealSchedule schedule;
    ExactOptions exact;
};

// For each requested shipment count and trial, draws an instance (request
// seed = mix of config.seed, m, trial) and times every requested solver on
// it. Progress lines go to `progress` when non-null.
std::vector<RunRecord> run_bench(const BenchConfig& config, std::ostream* progress = nullptr);

// Aggregate over all runs sharing (network, m, k, solver, dispatch).
// `variables_nominal` is the closed-form formulation size: for the linear
// model the count before zero-cost product terms are dropped, for the
// annealer the decision-bit count before penalty slack bits are added.
struct ReportRow {
    std::string network;
    int m = 0;
    int k = 0;
    std::string solver;
    bool dispatch = false;
    int runs = 0;
    int feasible_runs = 0;
    double mean_preprocess_seconds = 0.0;
    double mean_solve_seconds = 0.0;
    std::optional<double> mean_objective;  // over feasible runs
    std::optional<long long> variables;
    std::optional<long long> variables_nominal;
    std::optional<long long> constraints;
};

// Groups and sorts by (network, dispatch, solver, m, k). Throws if runs in
// one group disagree on variable or constraint counts -- that means the
// CSV mixes incompatible builds.
std::vector<ReportRow> aggregate_runs(const std::vector<RunRecord>& runs);

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows);

}  // namespace srp
