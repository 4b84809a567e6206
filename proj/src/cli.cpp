#include "srp/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include "CLI11.hpp"

#include "srp/anneal.hpp"
#include "srp/bench.hpp"
#include "srp/cqm.hpp"
#include "srp/exact.hpp"
#include "srp/hub_graph.hpp"
#include "srp/instance.hpp"
#include "srp/milp.hpp"
#include "srp/qubo.hpp"
#include "srp/tntp.hpp"

namespace srp {
namespace {

std::ofstream open_output(const std::string& path, std::ios::openmode mode = std::ios::out) {
    std::ofstream f(path, mode);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    return f;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open input file: " + path);
    return f;
}

const std::map<std::string, CostColumn>& cost_columns() {
    static const std::map<std::string, CostColumn> columns{
        {"length", CostColumn::length},
        {"fftt", CostColumn::free_flow_time},
        {"capacity", CostColumn::capacity},
    };
    return columns;
}

// Where the instance's hub graph comes from: a raw network file (metric
// closure computed on the fly) or a matrix written earlier by `preprocess`.
struct GraphArgs {
    std::string network;
    std::string hub_csv;
    CostColumn cost = CostColumn::length;
    std::vector<int> hubs;
};

void add_graph_options(CLI::App& cmd, GraphArgs& g) {
    auto* net = cmd.add_option("--network", g.network, "TNTP network file");
    auto* csv =
        cmd.add_option("--hub-csv", g.hub_csv, "hub distance matrix written by `preprocess`");
    net->excludes(csv);
    csv->excludes(net);
    cmd.add_option("--cost", g.cost, "network column used as arc cost")
        ->transform(CLI::CheckedTransformer(cost_columns(), CLI::ignore_case));
    cmd.add_option("--hubs", g.hubs, "hub node ids, comma separated (default: every node)")
        ->delimiter(',');
}

std::shared_ptr<const HubGraph> load_graph(const GraphArgs& g) {
    if (!g.hub_csv.empty()) {
        if (!g.hubs.empty())
            throw std::runtime_error("--hubs applies to --network input, not --hub-csv");
        auto in = open_input(g.hub_csv);
        return std::make_shared<HubGraph>(read_hub_csv(in));
    }
    if (g.network.empty()) throw std::runtime_error("need --network or --hub-csv");
    return std::make_shared<HubGraph>(build_hub_graph(parse_tntp_file(g.network, g.cost), g.hubs));
}

std::string default_network_name(const GraphArgs& g) {
    const std::string& path = g.hub_csv.empty() ? g.network : g.hub_csv;
    const std::string stem = std::filesystem::path(path).stem().string();
    return stem.empty() ? "net" : stem;
}

void print_plan(std::ostream& out, const SrpInstance& inst, const RoutePlan& plan) {
    for (size_t j = 0; j < plan.routes.size(); ++j) {
        const auto& route = plan.routes[j];
        if (route.empty()) continue;
        out << "  truck " << j + 1 << " (capacity "
            << format_double(inst.trucks()[j].capacity) << ", fee "
            << format_double(inst.trucks()[j].rental_fee) << "):";
        if (inst.dispatch_hub()) out << " hub " << *inst.dispatch_hub();
        for (size_t p = 0; p < route.size(); ++p) {
            const Stop& s = route[p];
            if (p > 0 || inst.dispatch_hub()) out << " ->";
            out << (s.action == StopAction::load ? " load r" : " unload r") << s.request + 1
                << " @ hub " << inst.stop_hub(s);
        }
        if (inst.dispatch_hub()) out << " -> hub " << *inst.dispatch_hub();
        out << "  (distance " << format_double(route_distance(inst, route)) << ")\n";
    }
}

struct SolveArgs {
    GraphArgs graph;
    std::string instance_path;
    std::string save_instance_path;
    int m = 0;
    int k = 0;
    uint64_t seed = 1;
    double load = 50.0;
    double capacity = 100.0;
    double fee = 1.0;
    double unit_cost = 1.0;
    bool dispatch = false;
    int dispatch_hub = 1;
    std::string solver = "exact";
    ExactOptions exact;
    AnnealSchedule schedule;
    std::string model_out;
    std::string samples_out;
    std::string plan_out;
};

SrpInstance make_instance(const SolveArgs& s) {
    if (!s.instance_path.empty()) {
        auto in = open_input(s.instance_path);
        return load_instance(in);
    }
    if (s.m <= 0)
        throw std::runtime_error("solve: pass --instance, or a graph source with --m");
    auto graph = load_graph(s.graph);
    const int k = s.k > 0 ? s.k : s.m;
    return SrpInstance(graph, generate_requests(*graph, s.m, s.load, s.seed),
                       uniform_trucks(k, s.capacity, s.fee), s.unit_cost,
                       s.dispatch ? std::optional<int>(s.dispatch_hub) : std::nullopt);
}

int cmd_solve(const SolveArgs& s, std::ostream& out, std::ostream& err) {
    const SrpInstance inst = make_instance(s);
    if (!s.save_instance_path.empty()) {
        auto f = open_output(s.save_instance_path);
        save_instance(f, inst);
    }
    err << "instance: " << inst.request_count() << " shipments, " << inst.truck_count()
        << " trucks, " << inst.graph().hub_count() << " hubs";
    if (inst.dispatch_hub()) err << ", dispatch hub " << *inst.dispatch_hub();
    err << '\n';

    const auto save_plan_if_requested = [&](const RoutePlan& plan) {
        if (s.plan_out.empty()) return;
        auto f = open_output(s.plan_out);
        save_plan(f, plan);
    };

    if (s.solver == "exact") {
        const ExactResult res = solve_exact(inst, s.exact);
        out << "objective " << format_double(res.objective) << "  (nodes explored "
            << res.nodes_explored << ")\n";
        print_plan(out, inst, res.plan);
        save_plan_if_requested(res.plan);
        return 0;
    }

    if (s.solver == "milp-emit") {
        const MilpModel model = build_milp(inst);
        const auto [vars, rows] = count_model(model);
        if (s.model_out.empty()) {
            emit_lp(out, model.ir);
            err << "variables " << vars << ", constraints " << rows << '\n';
        } else {
            auto f = open_output(s.model_out);
            emit_lp(f, model.ir);
            out << "wrote " << s.model_out << ": variables " << vars << ", constraints " << rows
                << '\n';
        }
        return 0;
    }

    if (s.solver == "anneal") {
        const CqmModel cqm = build_cqm(inst);
        const QuboModel qubo = to_penalty_qubo(cqm, default_penalties(inst));
        if (!s.model_out.empty()) {
            auto f = open_output(s.model_out);
            write_qubo(f, qubo);
        }
        const SampleSet set = anneal(qubo, s.schedule);
        if (!s.samples_out.empty()) {
            auto f = open_output(s.samples_out);
            write_samples_csv(f, set, qubo);
        }
        const Sample& best = set.best();
        out << "qubo: " << qubo.var_count << " variables (" << qubo.core_count << " core), "
            << qubo.terms.size() << " terms\n";
        out << "best energy " << format_double(best.energy) << ", energy - offset = "
            << format_double(best.energy - set.offset) << '\n';
        const DecodedAssignment dec = decode_sample(inst, cqm.index, best);
        if (!dec.report.feasible()) {
            out << "best sample is infeasible: " << dec.report.summary() << '\n';
            return 2;
        }
        out << "objective " << format_double(evaluate_objective(inst, dec.plan)) << '\n';
        print_plan(out, inst, dec.plan);
        save_plan_if_requested(dec.plan);
        return 0;
    }

    throw std::runtime_error("unknown solver '" + s.solver + "'");
}

struct BenchArgs {
    GraphArgs graph;
    BenchConfig config;
    std::string out_path;
    bool append = false;
};

int cmd_bench(BenchArgs& b, std::ostream& out, std::ostream& err) {
    b.config.graph = load_graph(b.graph);
    if (b.config.network_name.empty()) b.config.network_name = default_network_name(b.graph);
    const std::vector<RunRecord> runs = run_bench(b.config, &err);
    if (b.out_path.empty()) {
        write_runs_csv(out, runs);
        return 0;
    }
    bool header = true;
    if (b.append) {
        std::error_code ec;
        header = std::filesystem::file_size(b.out_path, ec) == 0 || ec;
    }
    auto f = open_output(b.out_path, b.append ? std::ios::app : std::ios::out);
    write_runs_csv(f, runs, header);
    out << "wrote " << runs.size() << " runs to " << b.out_path << '\n';
    return 0;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"shipment rerouting toolkit: hub preprocessing, exact / linear-model / "
                 "annealer solving, benchmark sweeps",
                 "srp"};
    app.require_subcommand(1);
    int rc = 0;

    // preprocess ---------------------------------------------------------
    auto pre = std::make_shared<std::pair<GraphArgs, std::pair<std::string, bool>>>();
    {
        auto* cmd = app.add_subcommand(
            "preprocess", "compute the all-pairs hub distance matrix of a network");
        GraphArgs& g = pre->first;
        cmd->add_option("--network", g.network, "TNTP network file")->required();
        cmd->add_option("--cost", g.cost, "network column used as arc cost")
            ->transform(CLI::CheckedTransformer(cost_columns(), CLI::ignore_case));
        cmd->add_option("--hubs", g.hubs, "hub node ids, comma separated (default: every node)")
            ->delimiter(',');
        cmd->add_option("-o,--out", pre->second.first, "matrix CSV destination (default: stdout)");
        cmd->add_flag("--fixed", pre->second.second,
                      "two-decimal fixed point instead of full precision");
        cmd->callback([pre, &out, &err] {
            const GraphArgs& g = pre->first;
            const Network net = parse_tntp_file(g.network, g.cost);
            const HubGraph hub_graph = build_hub_graph(net, g.hubs);
            const std::string summary =
                std::to_string(net.node_count) + " nodes, " + std::to_string(net.edges.size()) +
                " arcs, " + std::to_string(hub_graph.hub_count()) + " hubs, max distance " +
                format_double(hub_graph.max_dist()) + "\n";
            const std::string& path = pre->second.first;
            if (path.empty()) {
                write_hub_csv(out, hub_graph, !pre->second.second);
                err << summary;
            } else {
                auto f = open_output(path);
                write_hub_csv(f, hub_graph, !pre->second.second);
                out << "wrote " << path << ": " << summary;
            }
        });
    }

    // solve ----------------------------------------------------------------
    auto sol = std::make_shared<SolveArgs>();
    {
        auto* cmd = app.add_subcommand("solve",
                                       "solve one instance (or emit its model) with the chosen "
                                       "solver");
        add_graph_options(*cmd, sol->graph);
        cmd->add_option("--instance", sol->instance_path,
                        "load a saved instance instead of generating one");
        cmd->add_option("--save-instance", sol->save_instance_path,
                        "save the instance (self-contained JSON) before solving");
        cmd->add_option("-m,--m", sol->m, "number of shipment requests to generate");
        cmd->add_option("-k,--k", sol->k, "number of trucks (default: one per request)");
        cmd->add_option("--seed", sol->seed, "request generation seed")->capture_default_str();
        cmd->add_option("--load", sol->load, "load of every generated request")
            ->capture_default_str();
        cmd->add_option("--capacity", sol->capacity, "capacity of every truck")
            ->capture_default_str();
        cmd->add_option("--fee", sol->fee, "rental fee of every truck")->capture_default_str();
        cmd->add_option("--unit-cost", sol->unit_cost, "cost per unit travelled distance")
            ->capture_default_str();
        cmd->add_flag("--dispatch", sol->dispatch,
                      "trucks start from and return to the dispatch hub");
        auto* dh = cmd->add_option("--dispatch-hub", sol->dispatch_hub,
                                   "dispatch hub node id (implies --dispatch)")
                       ->capture_default_str();
        cmd->add_option("--solver", sol->solver, "exact | milp-emit | anneal")
            ->check(CLI::IsMember({"exact", "milp-emit", "anneal"}))
            ->capture_default_str();
        cmd->add_option("--max-requests", sol->exact.max_requests,
                        "exhaustive-search guard of the exact solver")
            ->capture_default_str();
        cmd->add_option("--sweeps", sol->schedule.sweeps, "annealer sweeps per restart")
            ->capture_default_str();
        cmd->add_option("--restarts", sol->schedule.restarts, "annealer restarts")
            ->capture_default_str();
        cmd->add_option("--anneal-seed", sol->schedule.seed, "annealer seed")
            ->capture_default_str();
        cmd->add_option("--t-initial", sol->schedule.t_initial,
                        "initial temperature (<= 0: derive from the model)");
        cmd->add_option("--t-final-factor", sol->schedule.t_final_factor,
                        "final temperature as a fraction of the initial one")
            ->capture_default_str();
        cmd->add_option("-o,--out", sol->model_out,
                        "model destination: LP file for milp-emit, QUBO file for anneal");
        cmd->add_option("--samples-out", sol->samples_out, "annealer sample CSV destination");
        cmd->add_option("--plan-out", sol->plan_out, "winning plan destination (JSON)");
        cmd->callback([sol, dh, &out, &err, &rc] {
            if (dh->count() > 0) sol->dispatch = true;
            rc = cmd_solve(*sol, out, err);
        });
    }

    // bench ------------------------------------------------------------
    auto ben = std::make_shared<BenchArgs>();
    {
        auto* cmd = app.add_subcommand(
            "bench", "sweep shipment counts and trials, timing every requested solver");
        add_graph_options(*cmd, ben->graph);
        BenchConfig& c = ben->config;
        c.network_name.clear();  // default: derive from the input file name
        cmd->add_option("--name", c.network_name, "network label in the CSV");
        cmd->add_option("--m-list", c.request_counts, "shipment counts to sweep")
            ->delimiter(',');
        cmd->add_option("-k,--k", c.truck_count, "trucks (default: one per request)");
        cmd->add_option("--trials", c.trials, "instances per shipment count")
            ->capture_default_str();
        cmd->add_option("--seed", c.seed, "sweep seed")->capture_default_str();
        cmd->add_flag("--dispatch", c.dispatch,
                      "trucks start from and return to the dispatch hub");
        auto* dh = cmd->add_option("--dispatch-hub", c.dispatch_hub,
                                   "dispatch hub node id (implies --dispatch)")
                       ->capture_default_str();
        cmd->add_option("--solvers", c.solvers, "solvers to time: exact | milp-emit | anneal")
            ->delimiter(',');
        cmd->add_option("--load", c.load, "load of every generated request")
            ->capture_default_str();
        cmd->add_option("--capacity", c.truck_capacity, "capacity of every truck")
            ->capture_default_str();
        cmd->add_option("--fee", c.rental_fee, "rental fee of every truck")
            ->capture_default_str();
        cmd->add_option("--unit-cost", c.unit_cost, "cost per unit travelled distance")
            ->capture_default_str();
        cmd->add_option("--sweeps", c.schedule.sweeps, "annealer sweeps per restart")
            ->capture_default_str();
        cmd->add_option("--restarts", c.schedule.restarts, "annealer restarts")
            ->capture_default_str();
        cmd->add_option("--max-requests", c.exact.max_requests,
                        "exhaustive-search guard of the exact solver")
            ->capture_default_str();
        cmd->add_option("-o,--out", ben->out_path, "runs CSV destination (default: stdout)");
        cmd->add_flag("--append", ben->append,
                      "append to --out, writing the header only if the file is empty");
        cmd->callback([ben, dh, &out, &err, &rc] {
            if (dh->count() > 0) ben->config.dispatch = true;
            rc = cmd_bench(*ben, out, err);
        });
    }

    // report -----------------------------------------------------------
    auto rep = std::make_shared<std::pair<std::string, std::string>>();
    {
        auto* cmd = app.add_subcommand(
            "report", "aggregate a runs CSV into per-(network, m, solver) means");
        cmd->add_option("-i,--in", rep->first, "runs CSV produced by `bench`")->required();
        cmd->add_option("-o,--out", rep->second, "report CSV destination (default: stdout)");
        cmd->callback([rep, &out] {
            auto in = open_input(rep->first);
            const auto rows = aggregate_runs(read_runs_csv(in));
            if (rep->second.empty()) {
                write_report_csv(out, rows);
            } else {
                auto f = open_output(rep->second);
                write_report_csv(f, rows);
                out << "wrote " << rows.size() << " report rows to " << rep->second << '\n';
            }
        });
    }

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return rc;
}

}  // namespace srp
