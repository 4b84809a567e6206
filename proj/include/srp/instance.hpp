#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "srp/hub_graph.hpp"

namespace srp {

// One shipment: move `load` units from source_hub to dest_hub (1-based node
// ids of the hub graph). A shipment rides exactly one truck, whole.
struct TransportRequest {
    int source_hub = 0;
    int dest_hub = 0;
    double load = 0.0;

    friend bool operator==(const TransportRequest&, const TransportRequest&) = default;
};

struct TruckSpec {
    double capacity = 0.0;
    double rental_fee = 0.0;

    friend bool operator==(const TruckSpec&, const TruckSpec&) = default;
};

enum class StopAction { load, unload };

// One stop of a truck route: act on the given request (index into the
// instance's request list). The hub is implied -- a load happens at the
// request's source, an unload at its destination -- so "wrong place"
// mistakes are unrepresentable.
struct Stop {
    int request = 0;
    StopAction action = StopAction::load;

    friend bool operator==(const Stop&, const Stop&) = default;
};

// One stop sequence per truck, same order as SrpInstance::trucks().
// Unused trucks have empty sequences.
struct RoutePlan {
    std::vector<std::vector<Stop>> routes;

    friend bool operator==(const RoutePlan&, const RoutePlan&) = default;
};

// Constraint families used to tag infeasibilities. A1 = a shipment must not
// be split across trucks; C1 = every shipment served (once); C2 = at most
// one action per stop; C3 = load and unload on the same truck; C4 = load
// before unload; C5/C7 = truck-usage indicator consistency; C6 = capacity;
// C8 = occupied stops form a prefix. Plan-shaped input can only violate
// A1/C1/C3/C4/C6; the other tags arise when checking raw model assignments.
enum class ConstraintTag { A1, A2, C1, C2, C3, C4, C5, C6, C7, C8 };

const char* to_string(ConstraintTag tag);

struct Violation {
    ConstraintTag tag;
    std::string detail;
};

struct FeasibilityReport {
    std::vector<Violation> violations;

    bool feasible() const { return violations.empty(); }
    // "C4: unload of request 1 ... ; C6: ..." -- for error messages.
    std::string summary() const;
};

// An immutable rerouting problem: a hub distance graph, m shipment requests,
// K trucks (normalized to ascending capacity at construction), a unit
// travel cost, and optionally a dispatch hub trucks must start from and
// return to.
class SrpInstance {
public:
    SrpInstance(std::shared_ptr<const HubGraph> graph,
                std::vector<TransportRequest> requests,
                std::vector<TruckSpec> trucks,
                double unit_cost,
                std::optional<int> dispatch_hub = std::nullopt);

    const HubGraph& graph() const { return *graph_; }
    std::shared_ptr<const HubGraph> graph_ptr() const { return graph_; }
    int request_count() const { return static_cast<int>(requests_.size()); }
    int truck_count() const { return static_cast<int>(trucks_.size()); }
    const std::vector<TransportRequest>& requests() const { return requests_; }
    const std::vector<TruckSpec>& trucks() const { return trucks_; }
    double unit_cost() const { return unit_cost_; }
    std::optional<int> dispatch_hub() const { return dispatch_hub_; }

    // Hub of a stop: the request's source for a load, destination otherwise.
    int stop_hub(const Stop& s) const;

private:
    std::shared_ptr<const HubGraph> graph_;
    std::vector<TransportRequest> requests_;
    std::vector<TruckSpec> trucks_;
    double unit_cost_ = 1.0;
    std::optional<int> dispatch_hub_;
};

// Draws m requests with distinct ordered (source, dest) hub pairs, source !=
// dest, all with the same load. Deterministic in (graph hubs, m, seed).
// Throws if m exceeds hub_count * (hub_count - 1).
std::vector<TransportRequest> generate_requests(const HubGraph& graph, int m, double load,
                                                uint64_t seed);

std::vector<TruckSpec> uniform_trucks(int k, double capacity, double rental_fee);

// Checks a plan against the plan-level constraints and reports every
// violation (never just the first). Malformed input -- an unknown request
// index or more routes than trucks -- throws instead; that is a structural
// error, not an infeasibility.
FeasibilityReport validate_plan(const SrpInstance& inst, const RoutePlan& plan);

// Total rental fees of used trucks plus unit_cost times the distance of all
// route legs (including dispatch-hub legs when the instance has one).
// Throws if the plan is not feasible, quoting the violations.
double evaluate_objective(const SrpInstance& inst, const RoutePlan& plan);

// Distance travelled by one route (no rental fee), dispatch legs included.
double route_distance(const SrpInstance& inst, const std::vector<Stop>& route);

// JSON (de)serialization; the instance form embeds the hub graph, so a file
// is self-contained. Round trips are exact.
void save_instance(std::ostream& out, const SrpInstance& inst);
SrpInstance load_instance(std::istream& in);
void save_plan(std::ostream& out, const RoutePlan& plan);
RoutePlan load_plan(std::istream& in);

}  // namespace srp
