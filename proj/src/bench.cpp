#include "srp/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <tuple>

#include "srp/cqm.hpp"
#include "srp/milp.hpp"
#include "srp/qubo.hpp"
#include "srp/rng.hpp"
#include "srp/var_index.hpp"

namespace srp {

namespace {

constexpr const char* kHeader =
    "network,m,k,seed,solver,dispatch,variables,constraints,preprocess_s,solve_s,objective,"
    "feasible";

template <class F>
double timed(F&& f) {
    const auto start = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

[[noreturn]] void bad_field(int line, const std::string& what, std::string_view value) {
    throw std::runtime_error("runs csv line " + std::to_string(line) + ": bad " + what + " '" +
                             std::string(value) + "'");
}

double parse_double(std::string_view s, int line, const std::string& what) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) bad_field(line, what, s);
    return v;
}

template <class Int>
Int parse_integer(std::string_view s, int line, const std::string& what) {
    Int v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) bad_field(line, what, s);
    return v;
}

bool parse_bool(std::string_view s, int line, const std::string& what) {
    if (s == "true") return true;
    if (s == "false") return false;
    bad_field(line, what, s);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    if (res.ec != std::errc()) throw std::logic_error("format_double: to_chars failed");
    return std::string(buf, res.ptr);
}

const char* run_csv_header() { return kHeader; }

void write_runs_csv(std::ostream& out, const std::vector<RunRecord>& runs, bool header) {
    if (header) out << kHeader << '\n';
    for (const RunRecord& r : runs) {
        if (r.network.find(',') != std::string::npos)
            throw std::invalid_argument("write_runs_csv: network name contains a comma: " +
                                        r.network);
        out << r.network << ',' << r.m << ',' << r.k << ',' << r.seed << ',' << r.solver << ','
            << (r.dispatch ? "true" : "false") << ',';
        if (r.variables) out << *r.variables;
        out << ',';
        if (r.constraints) out << *r.constraints;
        out << ',' << format_double(r.preprocess_seconds) << ',' << format_double(r.solve_seconds)
            << ',';
        if (r.objective) out << format_double(*r.objective);
        out << ',' << (r.feasible ? "true" : "false") << '\n';
    }
}

std::vector<RunRecord> read_runs_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("runs csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kHeader)
        throw std::runtime_error("runs csv: unexpected header '" + line + "'");

    std::vector<RunRecord> runs;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = split_csv(line);
        if (f.size() != 12)
            throw std::runtime_error("runs csv line " + std::to_string(lineno) + ": expected 12 " +
                                     "fields, got " + std::to_string(f.size()));
        RunRecord r;
        r.network = f[0];
        r.m = parse_integer<int>(f[1], lineno, "m");
        r.k = parse_integer<int>(f[2], lineno, "k");
        r.seed = parse_integer<uint64_t>(f[3], lineno, "seed");
        r.solver = f[4];
        r.dispatch = parse_bool(f[5], lineno, "dispatch");
        if (!f[6].empty()) r.variables = parse_integer<long long>(f[6], lineno, "variables");
        if (!f[7].empty()) r.constraints = parse_integer<long long>(f[7], lineno, "constraints");
        r.preprocess_seconds = parse_double(f[8], lineno, "preprocess_s");
        r.solve_seconds = parse_double(f[9], lineno, "solve_s");
        if (!f[10].empty()) r.objective = parse_double(f[10], lineno, "objective");
        r.feasible = parse_bool(f[11], lineno, "feasible");
        runs.push_back(std::move(r));
    }
    return runs;
}

std::vector<RunRecord> run_bench(const BenchConfig& config, std::ostream* progress) {
    if (!config.graph) throw std::invalid_argument("run_bench: config.graph is null");
    if (config.trials <= 0) throw std::invalid_argument("run_bench: trials must be positive");
    for (const std::string& solver : config.solvers)
        if (solver != "exact" && solver != "milp-emit" && solver != "anneal")
            throw std::invalid_argument("run_bench: unknown solver '" + solver + "'");

    std::vector<RunRecord> runs;
    for (int m : config.request_counts) {
        const int k = config.truck_count > 0 ? config.truck_count : m;
        for (int trial = 0; trial < config.trials; ++trial) {
            const uint64_t run_seed =
                mix_seed(config.seed, static_cast<uint64_t>(m), static_cast<uint64_t>(trial));
            SrpInstance inst(config.graph, generate_requests(*config.graph, m, config.load, run_seed),
                             uniform_trucks(k, config.truck_capacity, config.rental_fee),
                             config.unit_cost,
                             config.dispatch ? std::optional<int>(config.dispatch_hub)
                                             : std::nullopt);

            for (const std::string& solver : config.solvers) {
                RunRecord rec;
                rec.network = config.network_name;
                rec.m = m;
                rec.k = k;
                rec.seed = run_seed;
                rec.solver = solver;
                rec.dispatch = config.dispatch;

                if (solver == "exact") {
                    std::optional<ExactResult> res;
                    rec.solve_seconds = timed([&] { res.emplace(solve_exact(inst, config.exact)); });
                    rec.objective = res->objective;
                    rec.feasible = true;
                } else if (solver == "milp-emit") {
                    std::optional<MilpModel> model;
                    rec.preprocess_seconds = timed([&] { model.emplace(build_milp(inst)); });
                    const auto [vars, rows] = count_model(*model);
                    rec.variables = vars;
                    rec.constraints = rows;
                } else {  // anneal
                    std::optional<CqmModel> cqm;
                    std::optional<QuboModel> qubo;
                    rec.preprocess_seconds = timed([&] {
                        cqm.emplace(build_cqm(inst));
                        qubo.emplace(to_penalty_qubo(*cqm, default_penalties(inst)));
                    });
                    AnnealSchedule sched = config.schedule;
                    sched.seed = mix_seed(run_seed, 0xBE27ULL);
                    std::optional<SampleSet> set;
                    rec.solve_seconds = timed([&] { set.emplace(anneal(*qubo, sched)); });
                    rec.variables = qubo->var_count;
                    rec.constraints = static_cast<long long>(cqm->constraints.size());
                    const DecodedAssignment dec = decode_sample(inst, cqm->index, set->best());
                    if (dec.report.feasible()) {
                        rec.objective = evaluate_objective(inst, dec.plan);
                        rec.feasible = true;
                    }
                }

                if (progress) {
                    *progress << rec.network << " m=" << m << " k=" << k << " trial=" << trial
                              << ' ' << solver << ": solve " << format_double(rec.solve_seconds)
                              << "s";
                    if (rec.objective) *progress << " objective " << format_double(*rec.objective);
                    else if (solver == "anneal") *progress << " (no feasible sample)";
                    *progress << '\n';
                }
                runs.push_back(std::move(rec));
            }
        }
    }
    return runs;
}

std::vector<ReportRow> aggregate_runs(const std::vector<RunRecord>& runs) {
    using Key = std::tuple<std::string, bool, std::string, int, int>;
    std::map<Key, ReportRow> groups;
    std::map<Key, std::pair<double, int>> objective_sums;

    for (const RunRecord& r : runs) {
        const Key key{r.network, r.dispatch, r.solver, r.m, r.k};
        auto [it, inserted] = groups.try_emplace(key);
        ReportRow& row = it->second;
        if (inserted) {
            row.network = r.network;
            row.m = r.m;
            row.k = r.k;
            row.solver = r.solver;
            row.dispatch = r.dispatch;
        }
        ++row.runs;
        if (r.feasible) ++row.feasible_runs;
        row.mean_preprocess_seconds += r.preprocess_seconds;
        row.mean_solve_seconds += r.solve_seconds;
        for (auto [have, want] : {std::pair{r.variables, &row.variables},
                                  std::pair{r.constraints, &row.constraints}}) {
            if (!have) continue;
            if (*want && **want != *have)
                throw std::invalid_argument("aggregate_runs: group " + r.network + "/" + r.solver +
                                            " m=" + std::to_string(r.m) +
                                            " mixes different model sizes");
            *want = *have;
        }
        if (r.objective) {
            auto& [sum, n] = objective_sums[key];
            sum += *r.objective;
            ++n;
        }
    }

    std::vector<ReportRow> rows;
    rows.reserve(groups.size());
    for (auto& [key, row] : groups) {
        row.mean_preprocess_seconds /= row.runs;
        row.mean_solve_seconds /= row.runs;
        if (const auto it = objective_sums.find(key); it != objective_sums.end())
            row.mean_objective = it->second.first / it->second.second;
        if (row.solver == "milp-emit")
            row.variables_nominal = milp_variable_count_unpruned(row.m, row.k, row.dispatch);
        else if (row.solver == "anneal")
            row.variables_nominal = VarIndex(row.m, row.k).base_count();
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
    out << "network,m,k,solver,dispatch,runs,feasible_runs,mean_preprocess_s,mean_solve_s,"
           "mean_objective,variables,variables_nominal,constraints\n";
    for (const ReportRow& r : rows) {
        out << r.network << ',' << r.m << ',' << r.k << ',' << r.solver << ','
            << (r.dispatch ? "true" : "false") << ',' << r.runs << ',' << r.feasible_runs << ','
            << format_double(r.mean_preprocess_seconds) << ',' << format_double(r.mean_solve_seconds)
            << ',';
        if (r.mean_objective) out << format_double(*r.mean_objective);
        out << ',';
        if (r.variables) out << *r.variables;
        out << ',';
        if (r.variables_nominal) out << *r.variables_nominal;
        out << ',';
        if (r.constraints) out << *r.constraints;
        out << '\n';
    }
}

}  // namespace srp
