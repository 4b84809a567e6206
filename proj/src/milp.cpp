#include "srp/milp.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace srp {

int linearize_and(MilpModel& model, int a, int b, double cost, std::string name, RowLabel label) {
    if (cost < 0.0)
        throw std::invalid_argument(
            "linearize_and: the one-sided form needs a non-negative objective cost, got " +
            std::to_string(cost));
    int w = model.ir.add_var(std::move(name), VarKind::continuous, 0.0, 1.0);
    // w >= a + b - 1  (w >= 0 comes from the bound; minimization does the rest)
    model.ir.add_row({{{w, 1.0}, {a, -1.0}, {b, -1.0}}, Sense::ge, -1.0, label});
    model.ir.objective.push_back({w, cost});
    model.aux.push_back({w, {{a, 1.0}, {b, 1.0}}, -1.0});
    return w;
}

int linearize_last_stop(MilpModel& model, int y, const std::vector<int>& next_stop_bits, double cost,
                        std::string name, RowLabel label) {
    if (cost < 0.0)
        throw std::invalid_argument(
            "linearize_last_stop: the one-sided form needs a non-negative objective cost, got " +
            std::to_string(cost));
    int w = model.ir.add_var(std::move(name), VarKind::continuous, 0.0, 1.0);
    LinRow row{{{w, 1.0}, {y, -1.0}}, Sense::ge, 0.0, label};
    AuxDef def{w, {{y, 1.0}}, 0.0};
    for (int bit : next_stop_bits) {
        row.terms.push_back({bit, 1.0});
        def.expr.push_back({bit, -1.0});
    }
    model.ir.add_row(std::move(row));
    model.ir.objective.push_back({w, cost});
    model.aux.push_back(std::move(def));
    return w;
}

MilpModel build_milp(const SrpInstance& inst) {
    const int m = inst.request_count();
    const int k = inst.truck_count();
    const int stops = 2 * m;
    const double C = inst.unit_cost();
    const HubGraph& g = inst.graph();

    MilpModel model{ModelIR{}, VarIndex(m, k), {}};
    ModelIR& ir = model.ir;
    const VarIndex& v = model.index;

    for (int id = 0; id < v.base_count(); ++id)
        ir.add_var(v.name(id), VarKind::binary, 0.0, 1.0);

    // Objective: rental fees.
    for (int j = 0; j < k; ++j)
        if (inst.trucks()[j].rental_fee != 0.0)
            ir.objective.push_back({v.z(j), inst.trucks()[j].rental_fee});

    // C1: each request's source visited exactly once over all trucks/stops;
    // likewise its destination.
    for (int i = 0; i < m; ++i) {
        LinRow rx{{}, Sense::eq, 1.0, RowLabel::c1};
        LinRow ry{{}, Sense::eq, 1.0, RowLabel::c1};
        for (int j = 0; j < k; ++j)
            for (int p = 0; p < stops; ++p) {
                rx.terms.push_back({v.x(i, j, p), 1.0});
                ry.terms.push_back({v.y(i, j, p), 1.0});
            }
        ir.add_row(std::move(rx));
        ir.add_row(std::move(ry));
    }

    // C2: at most one action per stop.
    for (int j = 0; j < k; ++j)
        for (int p = 0; p < stops; ++p) {
            LinRow row{{}, Sense::le, 1.0, RowLabel::c2};
            for (int i = 0; i < m; ++i) {
                row.terms.push_back({v.x(i, j, p), 1.0});
                row.terms.push_back({v.y(i, j, p), 1.0});
            }
            ir.add_row(std::move(row));
        }

    // C3: a request is picked up and dropped off by the same truck.
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < k; ++j) {
            LinRow row{{}, Sense::eq, 0.0, RowLabel::c3};
            for (int p = 0; p < stops; ++p) {
                row.terms.push_back({v.x(i, j, p), 1.0});
                row.terms.push_back({v.y(i, j, p), -1.0});
            }
            ir.add_row(std::move(row));
        }

    // C4: no prefix of a route drops a request off before picking it up.
    // The q = 2m case is already C3, so q stops one short.
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < k; ++j)
            for (int q = 0; q + 1 < stops; ++q) {
                LinRow row{{}, Sense::le, 0.0, RowLabel::c4};
                for (int p = 0; p <= q; ++p) {
                    row.terms.push_back({v.y(i, j, p), 1.0});
                    row.terms.push_back({v.x(i, j, p), -1.0});
                }
                ir.add_row(std::move(row));
            }

    // C5: serving any request on a truck marks the truck used.
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < k; ++j) {
            LinRow rx{{{v.z(j), 1.0}}, Sense::ge, 0.0, RowLabel::c5};
            LinRow ry{{{v.z(j), 1.0}}, Sense::ge, 0.0, RowLabel::c5};
            for (int p = 0; p < stops; ++p) {
                rx.terms.push_back({v.x(i, j, p), -1.0});
                ry.terms.push_back({v.y(i, j, p), -1.0});
            }
            ir.add_row(std::move(rx));
            ir.add_row(std::move(ry));
        }

    // C6: after any prefix of stops, the load on board stays within capacity.
    for (int j = 0; j < k; ++j)
        for (int q = 0; q < stops; ++q) {
            LinRow row{{}, Sense::le, inst.trucks()[j].capacity, RowLabel::c6};
            for (int i = 0; i < m; ++i) {
                const double load = inst.requests()[i].load;
                for (int p = 0; p <= q; ++p) {
                    row.terms.push_back({v.x(i, j, p), load});
                    row.terms.push_back({v.y(i, j, p), -load});
                }
            }
            ir.add_row(std::move(row));
        }

    // C7: a used truck loads something at its first stop. (Pruned when there
    // are no requests; minimization then parks every Z at zero anyway.)
    if (m > 0)
        for (int j = 0; j < k; ++j) {
            LinRow row{{{v.z(j), -1.0}}, Sense::eq, 0.0, RowLabel::c7};
            for (int i = 0; i < m; ++i) row.terms.push_back({v.x(i, j, 0), 1.0});
            ir.add_row(std::move(row));
        }

    // C8: occupied stops pack to the front -- a stop can only be occupied if
    // the two before it are (with C7 this forces prefix occupancy).
    for (int j = 0; j < k; ++j)
        for (int p = 1; p + 1 < stops; ++p) {
            LinRow row{{}, Sense::ge, 0.0, RowLabel::c8};
            for (int i = 0; i < m; ++i) {
                row.terms.push_back({v.x(i, j, p - 1), 1.0});
                row.terms.push_back({v.y(i, j, p - 1), 1.0});
                row.terms.push_back({v.x(i, j, p), 1.0});
                row.terms.push_back({v.y(i, j, p), 1.0});
                row.terms.push_back({v.x(i, j, p + 1), -2.0});
                row.terms.push_back({v.y(i, j, p + 1), -2.0});
            }
            ir.add_row(std::move(row));
        }

    // Travel cost between consecutive stops: for every ordered request pair
    // (i at stop q-1, i2 at stop q) and every role combination, one product
    // variable weighted by the hub distance. Zero-distance products (the
    // diagonal same-hub cases and any coinciding hubs) are pruned.
    auto hub_of = [&](int i, bool source) {
        const TransportRequest& r = inst.requests()[i];
        return source ? r.source_hub : r.dest_hub;
    };
    for (int j = 0; j < k; ++j)
        for (int q = 1; q < stops; ++q)
            for (int i = 0; i < m; ++i)
                for (int i2 = 0; i2 < m; ++i2) {
                    struct Role {
                        const char* tag;
                        bool first_is_source, second_is_source;
                    };
                    // XX: source->source, YX: dest->source,
                    // XY: source->dest,  YY: dest->dest.
                    static constexpr Role kRoles[] = {{"XX", true, true},
                                                      {"YX", false, true},
                                                      {"XY", true, false},
                                                      {"YY", false, false}};
                    for (const Role& role : kRoles) {
                        const double d = g.dist(hub_of(i, role.first_is_source),
                                                hub_of(i2, role.second_is_source));
                        if (C * d == 0.0) continue;
                        int a = role.first_is_source ? v.x(i, j, q - 1) : v.y(i, j, q - 1);
                        int b = role.second_is_source ? v.x(i2, j, q) : v.y(i2, j, q);
                        std::string name = std::string("W") + role.tag + "_" + std::to_string(i + 1) +
                                           "_" + std::to_string(i2 + 1) + "_" + std::to_string(j + 1) +
                                           "_" + std::to_string(q + 1);
                        linearize_and(model, a, b, C * d, std::move(name));
                    }
                }

    // Dispatch extension: every used truck leaves the dispatch hub before its
    // first stop and returns after its last one.
    if (inst.dispatch_hub()) {
        const int O = *inst.dispatch_hub();
        // Outbound leg: the first stop is always a load (C7), so the cost is
        // linear in the first-stop X variables.
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < m; ++i) {
                const double d = g.dist(O, inst.requests()[i].source_hub);
                if (C * d != 0.0 && stops > 0)
                    ir.objective.push_back({v.x(i, j, 0), C * d});
            }
        // Return leg: an unload at stop q is the route's last action exactly
        // when stop q+1 is empty. At q = 2m the detector degenerates to the
        // unload bit itself (there is no later stop), so it folds into the
        // objective without a variable.
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < m; ++i) {
                const double d = g.dist(inst.requests()[i].dest_hub, O);
                if (C * d == 0.0) continue;
                for (int q = 0; q + 1 < stops; ++q) {
                    std::vector<int> next;
                    next.reserve(2 * m);
                    for (int i2 = 0; i2 < m; ++i2) {
                        next.push_back(v.x(i2, j, q + 1));
                        next.push_back(v.y(i2, j, q + 1));
                    }
                    std::string name = "RET_" + std::to_string(i + 1) + "_" + std::to_string(j + 1) +
                                       "_" + std::to_string(q + 1);
                    linearize_last_stop(model, v.y(i, j, q), next, C * d, std::move(name));
                }
                if (stops > 0) ir.objective.push_back({v.y(i, j, stops - 1), C * d});
            }
    }

    return model;
}

std::pair<int, int> count_model(const MilpModel& model) {
    return {model.ir.var_count(), model.ir.row_count()};
}

long long milp_variable_count_unpruned(int m, int k, bool dispatch) {
    const long long core = 4LL * m * m * k + k;
    const long long products = 4LL * m * m * k * (2 * m - 1);
    const long long detectors = dispatch ? 1LL * m * k * (2 * m - 1) : 0;
    return core + (m > 0 ? products : 0) + detectors;
}

std::vector<double> complete_assignment(const MilpModel& model, const std::vector<uint8_t>& core) {
    if (static_cast<int>(core.size()) != model.index.base_count())
        throw std::invalid_argument("complete_assignment: expected " +
                                    std::to_string(model.index.base_count()) + " core values, got " +
                                    std::to_string(core.size()));
    std::vector<double> full(model.ir.var_count(), 0.0);
    for (size_t i = 0; i < core.size(); ++i) full[i] = core[i];
    for (const AuxDef& aux : model.aux) {
        double val = aux.expr_const;
        for (const LinTerm& t : aux.expr) val += t.coeff * full[t.var];
        full[aux.var] = std::max(0.0, val);
    }
    return full;
}

}  // namespace srp
