#include "srp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

#include "srp/rng.hpp"

namespace srp {

const char* to_string(ConstraintTag tag) {
    switch (tag) {
        case ConstraintTag::A1: return "A1";
        case ConstraintTag::A2: return "A2";
        case ConstraintTag::C1: return "C1";
        case ConstraintTag::C2: return "C2";
        case ConstraintTag::C3: return "C3";
        case ConstraintTag::C4: return "C4";
        case ConstraintTag::C5: return "C5";
        case ConstraintTag::C6: return "C6";
        case ConstraintTag::C7: return "C7";
        case ConstraintTag::C8: return "C8";
    }
    return "?";
}

std::string FeasibilityReport::summary() const {
    std::string s;
    for (const Violation& v : violations) {
        if (!s.empty()) s += "; ";
        s += to_string(v.tag);
        s += ": ";
        s += v.detail;
    }
    return s;
}

SrpInstance::SrpInstance(std::shared_ptr<const HubGraph> graph,
                         std::vector<TransportRequest> requests, std::vector<TruckSpec> trucks,
                         double unit_cost, std::optional<int> dispatch_hub)
    : graph_(std::move(graph)),
      requests_(std::move(requests)),
      trucks_(std::move(trucks)),
      unit_cost_(unit_cost),
      dispatch_hub_(dispatch_hub) {
    if (!graph_) throw std::invalid_argument("SrpInstance: null hub graph");
    if (unit_cost_ < 0.0) throw std::invalid_argument("SrpInstance: negative unit cost");

    for (size_t i = 0; i < requests_.size(); ++i) {
        const TransportRequest& r = requests_[i];
        if (graph_->index_of(r.source_hub) < 0 || graph_->index_of(r.dest_hub) < 0)
            throw std::invalid_argument("SrpInstance: request " + std::to_string(i) +
                                        " references a node that is not a hub");
        if (!(r.load > 0.0))
            throw std::invalid_argument("SrpInstance: request " + std::to_string(i) +
                                        " must have positive load");
    }
    for (size_t j = 0; j < trucks_.size(); ++j) {
        if (!(trucks_[j].capacity > 0.0))
            throw std::invalid_argument("SrpInstance: truck " + std::to_string(j) +
                                        " must have positive capacity");
        if (trucks_[j].rental_fee < 0.0)
            throw std::invalid_argument("SrpInstance: truck " + std::to_string(j) +
                                        " has negative rental fee");
    }

    // Normalize truck order to ascending capacity. The model relies on fees
    // being ascending along with capacities; reject inputs where that cannot
    // be established (a bigger truck renting for less than a smaller one).
    std::stable_sort(trucks_.begin(), trucks_.end(), [](const TruckSpec& a, const TruckSpec& b) {
        return a.capacity < b.capacity || (a.capacity == b.capacity && a.rental_fee < b.rental_fee);
    });
    for (size_t j = 1; j < trucks_.size(); ++j)
        if (trucks_[j].rental_fee < trucks_[j - 1].rental_fee)
            throw std::invalid_argument(
                "SrpInstance: rental fees must be non-decreasing with capacity (truck with capacity " +
                std::to_string(trucks_[j].capacity) + " rents for less than a smaller one)");

    if (!requests_.empty()) {
        double max_cap = 0.0;
        for (const TruckSpec& t : trucks_) max_cap = std::max(max_cap, t.capacity);
        for (size_t i = 0; i < requests_.size(); ++i)
            if (requests_[i].load > max_cap)
                throw std::invalid_argument("SrpInstance: request " + std::to_string(i) + " (load " +
                                            std::to_string(requests_[i].load) +
                                            ") exceeds every truck capacity");
    }

    if (dispatch_hub_ && graph_->index_of(*dispatch_hub_) < 0)
        throw std::invalid_argument("SrpInstance: dispatch hub " + std::to_string(*dispatch_hub_) +
                                    " is not a hub");
}

int SrpInstance::stop_hub(const Stop& s) const {
    const TransportRequest& r = requests_.at(s.request);
    return s.action == StopAction::load ? r.source_hub : r.dest_hub;
}

std::vector<TransportRequest> generate_requests(const HubGraph& graph, int m, double load,
                                                uint64_t seed) {
    if (m < 0) throw std::invalid_argument("generate_requests: negative m");
    if (!(load > 0.0)) throw std::invalid_argument("generate_requests: load must be positive");
    const int64_t n = graph.hub_count();
    const int64_t pair_count = n * (n - 1);
    if (m > pair_count)
        throw std::invalid_argument("generate_requests: m = " + std::to_string(m) + " exceeds the " +
                                    std::to_string(pair_count) + " distinct ordered hub pairs");

    // Partial Fisher-Yates over the implicit pair codes 0..n(n-1)-1, so the
    // draw is uniform without replacement and O(m) space.
    std::mt19937_64 rng(mix_seed(seed, 0x5270526571ULL));
    std::unordered_map<int64_t, int64_t> moved;
    std::vector<TransportRequest> out;
    out.reserve(m);
    for (int i = 0; i < m; ++i) {
        int64_t swap_at = static_cast<int64_t>(i) + static_cast<int64_t>(bounded(rng, pair_count - i));
        auto fetch = [&](int64_t k) {
            auto it = moved.find(k);
            return it == moved.end() ? k : it->second;
        };
        int64_t code = fetch(swap_at);
        moved[swap_at] = fetch(i);

        int a = static_cast<int>(code / (n - 1));
        int r = static_cast<int>(code % (n - 1));
        int b = r < a ? r : r + 1;
        out.push_back({graph.hubs()[a], graph.hubs()[b], load});
    }
    return out;
}

std::vector<TruckSpec> uniform_trucks(int k, double capacity, double rental_fee) {
    return std::vector<TruckSpec>(static_cast<size_t>(k), TruckSpec{capacity, rental_fee});
}

FeasibilityReport validate_plan(const SrpInstance& inst, const RoutePlan& plan) {
    const int m = inst.request_count();
    const int k = inst.truck_count();
    if (static_cast<int>(plan.routes.size()) > k)
        throw std::invalid_argument("validate_plan: plan has " + std::to_string(plan.routes.size()) +
                                    " routes but the instance has " + std::to_string(k) + " trucks");

    struct Seen {
        int truck = -1;
        int pos = -1;
        int times = 0;
    };
    std::vector<Seen> loads(m), unloads(m);

    FeasibilityReport report;
    auto note = [&](ConstraintTag tag, std::string detail) {
        report.violations.push_back({tag, std::move(detail)});
    };

    for (int j = 0; j < static_cast<int>(plan.routes.size()); ++j) {
        const auto& route = plan.routes[j];
        double onboard = 0.0;
        for (int p = 0; p < static_cast<int>(route.size()); ++p) {
            const Stop& s = route[p];
            if (s.request < 0 || s.request >= m)
                throw std::invalid_argument("validate_plan: stop references request " +
                                            std::to_string(s.request) + " of " + std::to_string(m));
            Seen& slot = s.action == StopAction::load ? loads[s.request] : unloads[s.request];
            if (slot.times++ == 0) {
                slot.truck = j;
                slot.pos = p;
            } else if (slot.times == 2) {
                note(ConstraintTag::A1, std::string(s.action == StopAction::load ? "load" : "unload") +
                                            " of request " + std::to_string(s.request) +
                                            " appears more than once (trucks " +
                                            std::to_string(slot.truck) + " and " + std::to_string(j) +
                                            ")");
            }

            const double amount = inst.requests()[s.request].load;
            onboard += s.action == StopAction::load ? amount : -amount;
            if (onboard > inst.trucks()[j].capacity)
                note(ConstraintTag::C6, "truck " + std::to_string(j) + " carries " +
                                            std::to_string(onboard) + " after stop " + std::to_string(p) +
                                            ", capacity " + std::to_string(inst.trucks()[j].capacity));
        }
    }

    for (int i = 0; i < m; ++i) {
        if (loads[i].times == 0)
            note(ConstraintTag::C1, "request " + std::to_string(i) + " is never loaded");
        if (unloads[i].times == 0)
            note(ConstraintTag::C1, "request " + std::to_string(i) + " is never unloaded");
        if (loads[i].times == 0 || unloads[i].times == 0) continue;
        if (loads[i].truck != unloads[i].truck)
            note(ConstraintTag::C3, "request " + std::to_string(i) + " is loaded on truck " +
                                        std::to_string(loads[i].truck) + " but unloaded from truck " +
                                        std::to_string(unloads[i].truck));
        else if (unloads[i].pos < loads[i].pos)
            note(ConstraintTag::C4, "request " + std::to_string(i) + " is unloaded (stop " +
                                        std::to_string(unloads[i].pos) + ") before it is loaded (stop " +
                                        std::to_string(loads[i].pos) + ") on truck " +
                                        std::to_string(loads[i].truck));
    }
    return report;
}

double route_distance(const SrpInstance& inst, const std::vector<Stop>& route) {
    if (route.empty()) return 0.0;
    const HubGraph& g = inst.graph();
    double dist = 0.0;
    for (size_t p = 1; p < route.size(); ++p)
        dist += g.dist(inst.stop_hub(route[p - 1]), inst.stop_hub(route[p]));
    if (inst.dispatch_hub()) {
        dist += g.dist(*inst.dispatch_hub(), inst.stop_hub(route.front()));
        dist += g.dist(inst.stop_hub(route.back()), *inst.dispatch_hub());
    }
    return dist;
}

double evaluate_objective(const SrpInstance& inst, const RoutePlan& plan) {
    FeasibilityReport report = validate_plan(inst, plan);
    if (!report.feasible())
        throw std::invalid_argument("evaluate_objective: plan is infeasible (" + report.summary() + ")");

    double total = 0.0;
    for (size_t j = 0; j < plan.routes.size(); ++j) {
        if (plan.routes[j].empty()) continue;
        total += inst.trucks()[j].rental_fee;
        total += inst.unit_cost() * route_distance(inst, plan.routes[j]);
    }
    return total;
}

namespace {

nlohmann::json hub_graph_to_json(const HubGraph& g) {
    std::vector<double> dist;
    dist.reserve(static_cast<size_t>(g.hub_count()) * g.hub_count());
    for (int i = 0; i < g.hub_count(); ++i)
        for (int j = 0; j < g.hub_count(); ++j) dist.push_back(g.dist_at(i, j));
    return {{"hubs", g.hubs()}, {"dist", dist}};
}

HubGraph hub_graph_from_json(const nlohmann::json& j) {
    return HubGraph(j.at("hubs").get<std::vector<int>>(), j.at("dist").get<std::vector<double>>());
}

}  // namespace

void save_instance(std::ostream& out, const SrpInstance& inst) {
    nlohmann::json j;
    j["hub_graph"] = hub_graph_to_json(inst.graph());
    j["requests"] = nlohmann::json::array();
    for (const TransportRequest& r : inst.requests())
        j["requests"].push_back({{"source", r.source_hub}, {"dest", r.dest_hub}, {"load", r.load}});
    j["trucks"] = nlohmann::json::array();
    for (const TruckSpec& t : inst.trucks())
        j["trucks"].push_back({{"capacity", t.capacity}, {"fee", t.rental_fee}});
    j["unit_cost"] = inst.unit_cost();
    if (inst.dispatch_hub())
        j["dispatch_hub"] = *inst.dispatch_hub();
    else
        j["dispatch_hub"] = nullptr;
    out << j.dump(2) << '\n';
}

SrpInstance load_instance(std::istream& in) {
    nlohmann::json j = nlohmann::json::parse(in);
    auto graph = std::make_shared<HubGraph>(hub_graph_from_json(j.at("hub_graph")));
    std::vector<TransportRequest> requests;
    for (const auto& r : j.at("requests"))
        requests.push_back({r.at("source").get<int>(), r.at("dest").get<int>(), r.at("load").get<double>()});
    std::vector<TruckSpec> trucks;
    for (const auto& t : j.at("trucks"))
        trucks.push_back({t.at("capacity").get<double>(), t.at("fee").get<double>()});
    std::optional<int> dispatch;
    if (j.contains("dispatch_hub") && !j.at("dispatch_hub").is_null())
        dispatch = j.at("dispatch_hub").get<int>();
    return SrpInstance(std::move(graph), std::move(requests), std::move(trucks),
                       j.at("unit_cost").get<double>(), dispatch);
}

void save_plan(std::ostream& out, const RoutePlan& plan) {
    nlohmann::json routes = nlohmann::json::array();
    for (const auto& route : plan.routes) {
        nlohmann::json stops = nlohmann::json::array();
        for (const Stop& s : route)
            stops.push_back({{"request", s.request},
                             {"action", s.action == StopAction::load ? "load" : "unload"}});
        routes.push_back(std::move(stops));
    }
    out << nlohmann::json{{"routes", routes}}.dump(2) << '\n';
}

RoutePlan load_plan(std::istream& in) {
    nlohmann::json j = nlohmann::json::parse(in);
    RoutePlan plan;
    for (const auto& route : j.at("routes")) {
        std::vector<Stop> stops;
        for (const auto& s : route) {
            std::string action = s.at("action").get<std::string>();
            if (action != "load" && action != "unload")
                throw std::runtime_error("plan json: unknown action \"" + action + "\"");
            stops.push_back({s.at("request").get<int>(),
                             action == "load" ? StopAction::load : StopAction::unload});
        }
        plan.routes.push_back(std::move(stops));
    }
    return plan;
}

}  // namespace srp
