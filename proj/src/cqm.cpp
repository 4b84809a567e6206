#include "srp/cqm.hpp"

#include <cmath>
#include <stdexcept>

namespace srp {

CqmModel build_cqm(const SrpInstance& inst) {
    const int m = inst.request_count();
    const int k = inst.truck_count();
    const int stops = 2 * m;
    const double C = inst.unit_cost();
    const HubGraph& g = inst.graph();

    CqmModel model{VarIndex(m, k), {}, {}, {}};
    const VarIndex& v = model.index;

    for (int j = 0; j < k; ++j)
        if (inst.trucks()[j].rental_fee != 0.0)
            model.objective_lin.push_back({v.z(j), inst.trucks()[j].rental_fee});

    // The linear families are shared with the MILP verbatim.
    for (int i = 0; i < m; ++i) {
        CqmConstraint rx{{}, {}, Sense::eq, 1.0, RowLabel::c1, {}};
        CqmConstraint ry{{}, {}, Sense::eq, 1.0, RowLabel::c1, {}};
        for (int j = 0; j < k; ++j)
            for (int p = 0; p < stops; ++p) {
                rx.lin.push_back({v.x(i, j, p), 1.0});
                ry.lin.push_back({v.y(i, j, p), 1.0});
            }
        model.constraints.push_back(std::move(rx));
        model.constraints.push_back(std::move(ry));
    }

    for (int j = 0; j < k; ++j)
        for (int p = 0; p < stops; ++p) {
            CqmConstraint row{{}, {}, Sense::le, 1.0, RowLabel::c2, {}};
            for (int i = 0; i < m; ++i) {
                row.lin.push_back({v.x(i, j, p), 1.0});
                row.lin.push_back({v.y(i, j, p), 1.0});
            }
            model.constraints.push_back(std::move(row));
        }

    for (int i = 0; i < m; ++i)
        for (int j = 0; j < k; ++j) {
            CqmConstraint row{{}, {}, Sense::eq, 0.0, RowLabel::c3, {}};
            for (int p = 0; p < stops; ++p) {
                row.lin.push_back({v.x(i, j, p), 1.0});
                row.lin.push_back({v.y(i, j, p), -1.0});
            }
            model.constraints.push_back(std::move(row));
        }

    for (int i = 0; i < m; ++i)
        for (int j = 0; j < k; ++j)
            for (int q = 0; q + 1 < stops; ++q) {
                CqmConstraint row{{}, {}, Sense::le, 0.0, RowLabel::c4, {}};
                for (int p = 0; p <= q; ++p) {
                    row.lin.push_back({v.y(i, j, p), 1.0});
                    row.lin.push_back({v.x(i, j, p), -1.0});
                }
                model.constraints.push_back(std::move(row));
            }

    for (int i = 0; i < m; ++i)
        for (int j = 0; j < k; ++j) {
            CqmConstraint rx{{{v.z(j), 1.0}}, {}, Sense::ge, 0.0, RowLabel::c5, {}};
            CqmConstraint ry{{{v.z(j), 1.0}}, {}, Sense::ge, 0.0, RowLabel::c5, {}};
            for (int p = 0; p < stops; ++p) {
                rx.lin.push_back({v.x(i, j, p), -1.0});
                ry.lin.push_back({v.y(i, j, p), -1.0});
            }
            model.constraints.push_back(std::move(rx));
            model.constraints.push_back(std::move(ry));
        }

    for (int j = 0; j < k; ++j)
        for (int q = 0; q < stops; ++q) {
            CqmConstraint row{{}, {}, Sense::le, inst.trucks()[j].capacity, RowLabel::c6, {}};
            for (int i = 0; i < m; ++i) {
                const double load = inst.requests()[i].load;
                for (int p = 0; p <= q; ++p) {
                    row.lin.push_back({v.x(i, j, p), load});
                    row.lin.push_back({v.y(i, j, p), -load});
                }
            }
            model.constraints.push_back(std::move(row));
        }

    if (m > 0)
        for (int j = 0; j < k; ++j) {
            CqmConstraint row{{{v.z(j), -1.0}}, {}, Sense::eq, 0.0, RowLabel::c7, {}};
            for (int i = 0; i < m; ++i) row.lin.push_back({v.x(i, j, 0), 1.0});
            model.constraints.push_back(std::move(row));
        }

    // Stop packing, stated natively as a product: a stop can be occupied
    // only if both stops before it are. occ(p-1) * occ(p) >= occ(p+1).
    for (int j = 0; j < k; ++j)
        for (int p = 1; p + 1 < stops; ++p) {
            CqmConstraint row{{}, {}, Sense::ge, 0.0, RowLabel::c8, {}};
            for (int i = 0; i < m; ++i)
                for (int i2 = 0; i2 < m; ++i2)
                    for (int b1 : {v.x(i, j, p - 1), v.y(i, j, p - 1)})
                        for (int b2 : {v.x(i2, j, p), v.y(i2, j, p)})
                            row.quad.push_back({b1, b2, 1.0});
            for (int i = 0; i < m; ++i) {
                row.lin.push_back({v.x(i, j, p + 1), -1.0});
                row.lin.push_back({v.y(i, j, p + 1), -1.0});
                // Linear form: occ(p-1) + occ(p) - 2 occ(p+1) >= 0.
                row.linear_penalty_form.push_back({v.x(i, j, p - 1), 1.0});
                row.linear_penalty_form.push_back({v.y(i, j, p - 1), 1.0});
                row.linear_penalty_form.push_back({v.x(i, j, p), 1.0});
                row.linear_penalty_form.push_back({v.y(i, j, p), 1.0});
                row.linear_penalty_form.push_back({v.x(i, j, p + 1), -2.0});
                row.linear_penalty_form.push_back({v.y(i, j, p + 1), -2.0});
            }
            model.constraints.push_back(std::move(row));
        }

    // Objective: consecutive-stop travel, priced directly on the products.
    auto hub_of = [&](int i, bool source) {
        const TransportRequest& r = inst.requests()[i];
        return source ? r.source_hub : r.dest_hub;
    };
    for (int j = 0; j < k; ++j)
        for (int q = 1; q < stops; ++q)
            for (int i = 0; i < m; ++i)
                for (int i2 = 0; i2 < m; ++i2) {
                    const int from[2] = {v.x(i, j, q - 1), v.y(i, j, q - 1)};
                    const int to[2] = {v.x(i2, j, q), v.y(i2, j, q)};
                    for (int r1 = 0; r1 < 2; ++r1)
                        for (int r2 = 0; r2 < 2; ++r2) {
                            const double d = g.dist(hub_of(i, r1 == 0), hub_of(i2, r2 == 0));
                            if (C * d != 0.0)
                                model.objective_quad.push_back({from[r1], to[r2], C * d});
                        }
                }

    // Dispatch legs: linear outbound (first stop is a load), and a return
    // term d * Y(i,j,q) * (1 - occ(q+1)) that stays quadratic.
    if (inst.dispatch_hub()) {
        const int O = *inst.dispatch_hub();
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < m; ++i) {
                const double out_d = g.dist(O, inst.requests()[i].source_hub);
                if (C * out_d != 0.0) model.objective_lin.push_back({v.x(i, j, 0), C * out_d});

                const double back_d = g.dist(inst.requests()[i].dest_hub, O);
                if (C * back_d == 0.0) continue;
                for (int q = 0; q < stops; ++q) {
                    model.objective_lin.push_back({v.y(i, j, q), C * back_d});
                    if (q + 1 >= stops) continue;  // no later stop to cancel it
                    for (int i2 = 0; i2 < m; ++i2) {
                        model.objective_quad.push_back({v.y(i, j, q), v.x(i2, j, q + 1), -C * back_d});
                        model.objective_quad.push_back({v.y(i, j, q), v.y(i2, j, q + 1), -C * back_d});
                    }
                }
            }
    }

    return model;
}

double cqm_objective(const CqmModel& model, const std::vector<uint8_t>& bits) {
    double v = 0.0;
    for (const LinTerm& t : model.objective_lin) v += t.coeff * bits[t.var];
    for (const QuadTerm& t : model.objective_quad) v += t.coeff * bits[t.a] * bits[t.b];
    return v;
}

bool cqm_constraint_satisfied(const CqmConstraint& c, const std::vector<uint8_t>& bits) {
    double lhs = 0.0;
    for (const LinTerm& t : c.lin) lhs += t.coeff * bits[t.var];
    for (const QuadTerm& t : c.quad) lhs += t.coeff * bits[t.a] * bits[t.b];
    constexpr double kTol = 1e-9;
    switch (c.sense) {
        case Sense::le: return lhs <= c.rhs + kTol;
        case Sense::eq: return std::fabs(lhs - c.rhs) <= kTol;
        case Sense::ge: return lhs >= c.rhs - kTol;
    }
    return false;
}

bool cqm_feasible(const CqmModel& model, const std::vector<uint8_t>& bits) {
    if (static_cast<int>(bits.size()) < model.var_count())
        throw std::invalid_argument("cqm_feasible: assignment too short");
    for (const CqmConstraint& c : model.constraints)
        if (!cqm_constraint_satisfied(c, bits)) return false;
    return true;
}

}  // namespace srp
