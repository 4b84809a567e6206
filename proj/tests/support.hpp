#pragma once

// Shared fixtures and brute-force oracles for the test binaries. Everything
// here is deliberately simple and exhaustive; the point is independence from
// the clever code under test.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "srp/hub_graph.hpp"
#include "srp/instance.hpp"
#include "srp/qubo.hpp"
#include "srp/rng.hpp"
#include "srp/tntp.hpp"

namespace srp::test {

// A 4-node digraph whose metric closure is easy to verify by hand. Arc
// costs: 1->2 4, 2->1 5, 2->3 2, 3->2 3, 3->4 4, 4->3 5, 1->4 9, 4->1 9.
// Closure (row = from):
//        1   2   3   4
//   1    0   4   6   9     (1->4 direct beats 1->2->3->4 = 10)
//   2    5   0   2   6
//   3    8   3   0   4
//   4   9  8  5  0         (4->2 = 4->3->2 = 8, 4->1 direct 9)
inline const char* toy_tntp() {
    return "<NUMBER OF ZONES> 4\n"
           "<NUMBER OF NODES> 4\n"
           "<FIRST THRU NODE> 1\n"
           "<NUMBER OF LINKS> 8\n"
           "<END OF METADATA>\n"
           "~ init term capacity length fftt b power speed toll type\n"
           "1 2 100 4 4 0 0 1 0 1 ;\n"
           "2 1 100 5 5 0 0 1 0 1 ;\n"
           "2 3 100 2 2 0 0 1 0 1 ;\n"
           "3 2 100 3 3 0 0 1 0 1 ;\n"
           "3 4 100 4 4 0 0 1 0 1 ;\n"
           "4 3 100 5 5 0 0 1 0 1 ;\n"
           "1 4 100 9 9 0 0 1 0 1 ;\n"
           "4 1 100 9 9 0 0 1 0 1 ;\n";
}

inline Network toy_network() {
    std::istringstream in(toy_tntp());
    return parse_tntp(in);
}

inline std::shared_ptr<const HubGraph> toy_graph() {
    return std::make_shared<HubGraph>(build_hub_graph(toy_network()));
}

// Strongly connected random digraph with exactly `nodes` nodes and `arcs`
// arcs: a Hamiltonian cycle backbone plus distinct extra arcs. Costs are
// multiples of 0.5 in [1, 20.5], so every distance is exact in binary.
inline std::string synthetic_tntp(int nodes, int arcs, uint64_t seed) {
    if (nodes < 2) throw std::invalid_argument("synthetic_tntp: need at least 2 nodes");
    if (arcs < nodes || arcs > static_cast<long long>(nodes) * (nodes - 1))
        throw std::invalid_argument("synthetic_tntp: arc count out of range");

    std::mt19937_64 rng(mix_seed(seed, 0x7e57da7aULL));
    const auto cost = [&rng] { return 1.0 + 0.5 * static_cast<double>(bounded(rng, 40)); };

    std::set<std::pair<int, int>> used;
    std::ostringstream rows;
    rows.setf(std::ios::fmtflags(0), std::ios::floatfield);
    const auto add = [&](int from, int to) {
        used.insert({from, to});
        rows << from << ' ' << to << " 100 " << cost() << ' ' << cost() << " 0 0 1 0 1 ;\n";
    };

    for (int v = 1; v <= nodes; ++v) add(v, v % nodes + 1);
    while (static_cast<int>(used.size()) < arcs) {
        const int from = 1 + static_cast<int>(bounded(rng, static_cast<uint64_t>(nodes)));
        const int to = 1 + static_cast<int>(bounded(rng, static_cast<uint64_t>(nodes)));
        if (from == to || used.count({from, to})) continue;
        add(from, to);
    }

    std::ostringstream out;
    out << "<NUMBER OF ZONES> " << nodes << "\n<NUMBER OF NODES> " << nodes
        << "\n<FIRST THRU NODE> 1\n<NUMBER OF LINKS> " << arcs << "\n<END OF METADATA>\n"
        << rows.str();
    return out.str();
}

// Textbook Bellman-Ford; the slow, obviously correct counterpart of the
// library's shortest-path routine. Index 0 is padding, as there.
inline std::vector<double> bellman_ford(const Network& net, int source) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(static_cast<size_t>(net.node_count) + 1, inf);
    dist[static_cast<size_t>(source)] = 0.0;
    for (int round = 0; round < net.node_count; ++round) {
        bool changed = false;
        for (const Edge& e : net.edges) {
            if (e.from == e.to || dist[e.from] == inf) continue;
            if (dist[e.from] + e.cost < dist[e.to]) {
                dist[e.to] = dist[e.from] + e.cost;
                changed = true;
            }
        }
        if (!changed) break;
    }
    return dist;
}

// All orders of the stops of one truck in which every load precedes its
// unload. Capacity is not checked here; the caller filters.
inline void stop_orders(const std::vector<int>& requests, std::vector<Stop>& prefix,
                        std::vector<int>& state,  // 0 = untouched, 1 = loaded, 2 = done
                        std::vector<std::vector<Stop>>& out) {
    if (prefix.size() == 2 * requests.size()) {
        out.push_back(prefix);
        return;
    }
    for (size_t r = 0; r < requests.size(); ++r) {
        if (state[r] == 2) continue;
        const int was = state[r];
        state[r] = was + 1;
        prefix.push_back({requests[r], was == 0 ? StopAction::load : StopAction::unload});
        stop_orders(requests, prefix, state, out);
        prefix.pop_back();
        state[r] = was;
    }
}

// Every feasible plan of the instance, by brute force: all request-to-truck
// assignments crossed with all valid stop orders, filtered through the
// library's validator. Exhaustive by construction; practical to m ~ 3.
inline std::vector<RoutePlan> enumerate_feasible_plans(const SrpInstance& inst) {
    const int m = inst.request_count();
    const int k = inst.truck_count();
    std::vector<RoutePlan> feasible;

    std::vector<int> owner(static_cast<size_t>(std::max(m, 1)), 0);
    const long long assignments = [&] {
        long long a = 1;
        for (int i = 0; i < m; ++i) a *= k;
        return a;
    }();

    for (long long code = 0; code < assignments; ++code) {
        long long rest = code;
        for (int i = 0; i < m; ++i, rest /= k) owner[static_cast<size_t>(i)] = static_cast<int>(rest % k);

        // Per-truck request lists, then all stop orders per truck.
        std::vector<std::vector<int>> mine(static_cast<size_t>(k));
        for (int i = 0; i < m; ++i) mine[static_cast<size_t>(owner[static_cast<size_t>(i)])].push_back(i);
        std::vector<std::vector<std::vector<Stop>>> choices(static_cast<size_t>(k));
        for (int j = 0; j < k; ++j) {
            std::vector<Stop> prefix;
            std::vector<int> state(mine[static_cast<size_t>(j)].size(), 0);
            stop_orders(mine[static_cast<size_t>(j)], prefix, state, choices[static_cast<size_t>(j)]);
        }

        // Cartesian product across trucks.
        std::vector<size_t> pick(static_cast<size_t>(k), 0);
        while (true) {
            RoutePlan plan;
            plan.routes.resize(static_cast<size_t>(k));
            for (int j = 0; j < k; ++j) plan.routes[static_cast<size_t>(j)] = choices[static_cast<size_t>(j)][pick[static_cast<size_t>(j)]];
            if (validate_plan(inst, plan).feasible()) feasible.push_back(std::move(plan));

            size_t j = 0;
            while (j < pick.size() && ++pick[j] == choices[j].size()) pick[j++] = 0;
            if (j == pick.size()) break;
        }
    }
    return feasible;
}

inline double brute_force_optimum(const SrpInstance& inst, RoutePlan* argmin = nullptr) {
    double best = std::numeric_limits<double>::infinity();
    for (const RoutePlan& plan : enumerate_feasible_plans(inst)) {
        const double value = evaluate_objective(inst, plan);
        if (value < best) {
            best = value;
            if (argmin) *argmin = plan;
        }
    }
    if (inst.request_count() == 0) best = 0.0;
    return best;
}

// Minimum QUBO energy over the slack bits with the core bits held fixed.
// Slack variables of different constraints never share a term, so optimizing
// each connected slack component separately (exhaustively) is exact.
inline double min_energy_at_core(const QuboModel& q, const std::vector<uint8_t>& core) {
    if (static_cast<int>(core.size()) != q.core_count)
        throw std::invalid_argument("min_energy_at_core: wrong core size");
    std::vector<uint8_t> bits(static_cast<size_t>(q.var_count), 0);
    std::copy(core.begin(), core.end(), bits.begin());

    // Union-find over slack variables connected by a quadratic term.
    std::vector<int> parent(static_cast<size_t>(q.var_count));
    for (int v = 0; v < q.var_count; ++v) parent[static_cast<size_t>(v)] = v;
    const auto find = [&](int v) {
        while (parent[static_cast<size_t>(v)] != v) v = parent[static_cast<size_t>(v)] = parent[static_cast<size_t>(parent[static_cast<size_t>(v)])];
        return v;
    };
    for (const QuboTerm& t : q.terms)
        if (t.a >= q.core_count && t.b >= q.core_count && t.a != t.b)
            parent[static_cast<size_t>(find(t.a))] = find(t.b);

    std::vector<std::vector<int>> components;
    {
        std::vector<int> where(static_cast<size_t>(q.var_count), -1);
        for (int v = q.core_count; v < q.var_count; ++v) {
            const int root = find(v);
            if (where[static_cast<size_t>(root)] < 0) {
                where[static_cast<size_t>(root)] = static_cast<int>(components.size());
                components.emplace_back();
            }
            components[static_cast<size_t>(where[static_cast<size_t>(root)])].push_back(v);
        }
    }

    // Components are independent, so fixing each one's argmin in turn is a
    // global argmin over all slack bits.
    for (const std::vector<int>& comp : components) {
        if (comp.size() > 24) throw std::logic_error("min_energy_at_core: component too large");
        uint64_t best_mask = 0;
        double best = std::numeric_limits<double>::infinity();
        for (uint64_t mask = 0; mask < (uint64_t{1} << comp.size()); ++mask) {
            for (size_t b = 0; b < comp.size(); ++b)
                bits[static_cast<size_t>(comp[b])] = static_cast<uint8_t>((mask >> b) & 1);
            const double e = q.energy(bits);
            if (e < best) {
                best = e;
                best_mask = mask;
            }
        }
        for (size_t b = 0; b < comp.size(); ++b)
            bits[static_cast<size_t>(comp[b])] = static_cast<uint8_t>((best_mask >> b) & 1);
    }
    return q.energy(bits);
}

struct TempDir {
    std::filesystem::path path;

    TempDir() {
        static const uint64_t run_tag = std::random_device{}();
        static uint64_t counter = 0;
        path = std::filesystem::temp_directory_path() /
               ("srp_test_" + std::to_string(run_tag) + "_" + std::to_string(counter++));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string file(const std::string& name) const { return (path / name).string(); }
};

inline std::string write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
    if (!out) throw std::runtime_error("write_file failed: " + path);
    return path;
}

inline std::string data_file(const std::string& name) {
    return std::string(SRP_TEST_DATA_DIR) + "/" + name;
}

}  // namespace srp::test
