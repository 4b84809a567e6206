#include "srp/exact.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace srp {

namespace {

bool stop_less(const Stop& a, const Stop& b) {
    if (a.request != b.request) return a.request < b.request;
    return static_cast<int>(a.action) < static_cast<int>(b.action);
}

// Lexicographic order on (truck index, stop sequence), the published
// tie-break among equal-cost optima.
bool plan_less(const std::vector<std::vector<Stop>>& a, const std::vector<std::vector<Stop>>& b) {
    for (size_t j = 0; j < a.size() && j < b.size(); ++j) {
        const auto& ra = a[j];
        const auto& rb = b[j];
        for (size_t p = 0; p < ra.size() && p < rb.size(); ++p) {
            if (ra[p] == rb[p]) continue;
            return stop_less(ra[p], rb[p]);
        }
        if (ra.size() != rb.size()) return ra.size() < rb.size();
    }
    return a.size() < b.size();
}

bool capacity_ok(const SrpInstance& inst, int truck, const std::vector<Stop>& route) {
    double onboard = 0.0;
    for (const Stop& s : route) {
        onboard += s.action == StopAction::load ? inst.requests()[s.request].load
                                                : -inst.requests()[s.request].load;
        if (onboard > inst.trucks()[truck].capacity) return false;
    }
    return true;
}

struct Search {
    const SrpInstance& inst;
    std::vector<int> order;  // request ids, decreasing load
    std::vector<std::vector<Stop>> routes;
    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<std::vector<Stop>> best_routes;
    long long nodes = 0;

    explicit Search(const SrpInstance& instance) : inst(instance) {
        routes.resize(inst.truck_count());
        order.resize(inst.request_count());
        for (int i = 0; i < inst.request_count(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return inst.requests()[a].load > inst.requests()[b].load;
        });
    }

    double node_cost() const {
        double cost = 0.0;
        for (size_t j = 0; j < routes.size(); ++j) {
            if (routes[j].empty()) continue;
            cost += inst.trucks()[j].rental_fee + inst.unit_cost() * route_distance(inst, routes[j]);
        }
        return cost;
    }

    double bound(int next) const {
        SearchNode node{routes, {}};
        for (size_t t = next; t < order.size(); ++t) node.unassigned.push_back(order[t]);
        return lower_bound(inst, node);
    }

    void dfs(int next) {
        ++nodes;
        if (next == static_cast<int>(order.size())) {
            const double cost = node_cost();
            if (cost < best_cost || (cost == best_cost && plan_less(routes, best_routes))) {
                best_cost = cost;
                best_routes = routes;
            }
            return;
        }

        const int i = order[next];
        for (int j = 0; j < inst.truck_count(); ++j) {
            // Identical unused trucks are interchangeable; only the first
            // of each group is worth opening.
            if (routes[j].empty()) {
                bool duplicate = false;
                for (int j2 = 0; j2 < j && !duplicate; ++j2)
                    duplicate = routes[j2].empty() &&
                                inst.trucks()[j2].capacity == inst.trucks()[j].capacity &&
                                inst.trucks()[j2].rental_fee == inst.trucks()[j].rental_fee;
                if (duplicate) continue;
            }

            auto& route = routes[j];
            const int len = static_cast<int>(route.size());
            for (int lp = 0; lp <= len; ++lp) {
                route.insert(route.begin() + lp, Stop{i, StopAction::load});
                for (int up = lp + 1; up <= len + 1; ++up) {
                    route.insert(route.begin() + up, Stop{i, StopAction::unload});
                    if (capacity_ok(inst, j, route) && bound(next + 1) <= best_cost) dfs(next + 1);
                    route.erase(route.begin() + up);
                }
                route.erase(route.begin() + lp);
            }
        }
    }
};

}  // namespace

double lower_bound(const SrpInstance& inst, const SearchNode& node) {
    if (static_cast<int>(node.routes.size()) > inst.truck_count())
        throw std::invalid_argument("lower_bound: node has more routes than trucks");

    double cost = 0.0;
    double longest_partial = 0.0;
    bool any_open = false;
    for (size_t j = 0; j < node.routes.size(); ++j) {
        if (node.routes[j].empty()) continue;
        any_open = true;
        const double dist = route_distance(inst, node.routes[j]);
        cost += inst.trucks()[j].rental_fee + inst.unit_cost() * dist;
        longest_partial = std::max(longest_partial, dist);
    }
    if (node.unassigned.empty()) return cost;

    // Whichever truck ends up with the farthest-apart unplaced request must
    // cover at least that request's direct leg.
    double longest_direct = 0.0;
    for (int i : node.unassigned) {
        const TransportRequest& r = inst.requests().at(i);
        longest_direct = std::max(longest_direct, inst.graph().dist(r.source_hub, r.dest_hub));
    }
    cost += inst.unit_cost() * std::max(0.0, longest_direct - longest_partial);

    if (!any_open) {
        double min_fee = std::numeric_limits<double>::infinity();
        for (const TruckSpec& t : inst.trucks()) min_fee = std::min(min_fee, t.rental_fee);
        cost += min_fee;
    }
    return cost;
}

ExactResult solve_exact(const SrpInstance& inst, const ExactOptions& options) {
    if (inst.request_count() > options.max_requests)
        throw std::invalid_argument(
            "solve_exact: " + std::to_string(inst.request_count()) +
            " requests exceed the exhaustive-search guard of " + std::to_string(options.max_requests) +
            " (raise ExactOptions::max_requests deliberately if you mean it)");
    if (inst.request_count() > 0 && inst.truck_count() == 0)
        throw std::invalid_argument("solve_exact: no trucks available");

    Search search(inst);
    search.dfs(0);

    ExactResult result;
    result.plan.routes = search.best_routes.empty() && inst.request_count() == 0
                             ? std::vector<std::vector<Stop>>(inst.truck_count())
                             : search.best_routes;
    result.objective = inst.request_count() == 0 ? 0.0 : search.best_cost;
    result.nodes_explored = search.nodes;
    return result;
}

}  // namespace srp
