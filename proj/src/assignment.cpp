#include "srp/assignment.hpp"

#include <stdexcept>
#include <string>

namespace srp {

std::vector<uint8_t> encode_plan(const VarIndex& index, const RoutePlan& plan) {
    if (static_cast<int>(plan.routes.size()) > index.truck_count())
        throw std::invalid_argument("encode_plan: more routes than trucks");
    std::vector<uint8_t> bits(index.base_count(), 0);
    for (int j = 0; j < static_cast<int>(plan.routes.size()); ++j) {
        const auto& route = plan.routes[j];
        if (static_cast<int>(route.size()) > index.stop_count())
            throw std::invalid_argument("encode_plan: route " + std::to_string(j) +
                                        " longer than " + std::to_string(index.stop_count()) +
                                        " stops");
        for (int p = 0; p < static_cast<int>(route.size()); ++p) {
            const Stop& s = route[p];
            if (s.request < 0 || s.request >= index.request_count())
                throw std::invalid_argument("encode_plan: stop references unknown request " +
                                            std::to_string(s.request));
            bits[s.action == StopAction::load ? index.x(s.request, j, p)
                                              : index.y(s.request, j, p)] = 1;
        }
        if (!route.empty()) bits[index.z(j)] = 1;
    }
    return bits;
}

DecodedAssignment decode_assignment(const SrpInstance& inst, const VarIndex& index,
                                    const std::vector<uint8_t>& bits) {
    const int m = index.request_count();
    const int k = index.truck_count();
    const int stops = index.stop_count();
    if (static_cast<int>(bits.size()) < index.base_count())
        throw std::invalid_argument("decode_assignment: assignment has " +
                                    std::to_string(bits.size()) + " bits, need at least " +
                                    std::to_string(index.base_count()));

    DecodedAssignment out;
    out.plan.routes.resize(k);
    auto note = [&](ConstraintTag tag, std::string detail) {
        out.report.violations.push_back({tag, std::move(detail)});
    };

    // Stop extraction + C2 + C8 occupancy structure.
    for (int j = 0; j < k; ++j) {
        int last_occupied = -1;
        bool gap_before_occupied = false;
        for (int p = 0; p < stops; ++p) {
            int chosen = -1;
            int set_count = 0;
            for (int i = 0; i < m; ++i) {
                for (int is_load : {1, 0}) {
                    if (!bits[is_load ? index.x(i, j, p) : index.y(i, j, p)]) continue;
                    ++set_count;
                    if (chosen < 0) {
                        chosen = i;
                        out.plan.routes[j].push_back(
                            {i, is_load ? StopAction::load : StopAction::unload});
                    } else {
                        note(ConstraintTag::C2,
                             "truck " + std::to_string(j) + " stop " + std::to_string(p) +
                                 " holds both request " + std::to_string(chosen) + " and request " +
                                 std::to_string(i));
                    }
                }
            }
            if (set_count > 0) {
                if (last_occupied != p - 1) gap_before_occupied = true;
                last_occupied = p;
            }
        }
        if (gap_before_occupied)
            note(ConstraintTag::C8, "truck " + std::to_string(j) +
                                        " has an empty stop before an occupied one");
    }

    // Service counts (C1), same-truck (C3), prefix order (C4).
    for (int i = 0; i < m; ++i) {
        int x_total = 0, y_total = 0;
        for (int j = 0; j < k; ++j)
            for (int p = 0; p < stops; ++p) {
                x_total += bits[index.x(i, j, p)];
                y_total += bits[index.y(i, j, p)];
            }
        if (x_total != 1)
            note(ConstraintTag::C1, "request " + std::to_string(i) + " is loaded " +
                                        std::to_string(x_total) + " times");
        if (y_total != 1)
            note(ConstraintTag::C1, "request " + std::to_string(i) + " is unloaded " +
                                        std::to_string(y_total) + " times");
        for (int j = 0; j < k; ++j) {
            int x_j = 0, y_j = 0, prefix_x = 0, prefix_y = 0;
            bool order_bad = false;
            for (int p = 0; p < stops; ++p) {
                prefix_x += bits[index.x(i, j, p)];
                prefix_y += bits[index.y(i, j, p)];
                if (prefix_y > prefix_x) order_bad = true;
            }
            x_j = prefix_x;
            y_j = prefix_y;
            if (x_j != y_j)
                note(ConstraintTag::C3, "request " + std::to_string(i) + " has " +
                                            std::to_string(x_j) + " loads but " + std::to_string(y_j) +
                                            " unloads on truck " + std::to_string(j));
            else if (order_bad)
                note(ConstraintTag::C4, "request " + std::to_string(i) +
                                            " is dropped off before being picked up on truck " +
                                            std::to_string(j));
        }
    }

    // Usage indicators (C5, C7) and capacity (C6).
    for (int j = 0; j < k; ++j) {
        const int used = bits[index.z(j)];
        for (int i = 0; i < m; ++i) {
            int x_j = 0, y_j = 0;
            for (int p = 0; p < stops; ++p) {
                x_j += bits[index.x(i, j, p)];
                y_j += bits[index.y(i, j, p)];
            }
            if (x_j > used || y_j > used) {
                note(ConstraintTag::C5, "truck " + std::to_string(j) + " serves request " +
                                            std::to_string(i) + " but Z_" + std::to_string(j + 1) +
                                            " = " + std::to_string(used));
                break;
            }
        }

        double onboard = 0.0;
        bool over = false;
        for (int p = 0; p < stops && !over; ++p) {
            for (int i = 0; i < m; ++i)
                onboard += inst.requests()[i].load *
                           (bits[index.x(i, j, p)] - static_cast<int>(bits[index.y(i, j, p)]));
            if (onboard > inst.trucks()[j].capacity) over = true;
        }
        if (over)
            note(ConstraintTag::C6,
                 "truck " + std::to_string(j) + " exceeds its capacity along the route");

        if (m > 0) {
            int first_stop_loads = 0;
            for (int i = 0; i < m; ++i) first_stop_loads += bits[index.x(i, j, 0)];
            if (first_stop_loads != used)
                note(ConstraintTag::C7, "truck " + std::to_string(j) + " has " +
                                            std::to_string(first_stop_loads) +
                                            " first-stop loads but Z_" + std::to_string(j + 1) +
                                            " = " + std::to_string(used));
        }
    }

    return out;
}

}  // namespace srp
