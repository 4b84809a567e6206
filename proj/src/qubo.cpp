#include "srp/qubo.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace srp {

double QuboModel::energy(const std::vector<uint8_t>& bits) const {
    if (static_cast<int>(bits.size()) != var_count)
        throw std::invalid_argument("QuboModel::energy: expected " + std::to_string(var_count) +
                                    " bits, got " + std::to_string(bits.size()));
    double e = 0.0;
    for (const QuboTerm& t : terms) e += t.coeff * bits[t.a] * bits[t.b];
    return e;
}

double QuboModel::max_abs_coeff() const {
    double m = 0.0;
    for (const QuboTerm& t : terms) m = std::max(m, std::fabs(t.coeff));
    return m;
}

PenaltyWeights default_penalties(const SrpInstance& inst) {
    const int m = inst.request_count();
    const int stops = 2 * m;
    const double C = inst.unit_cost();
    const double dmax = inst.graph().max_dist();

    double fees = 0.0;
    for (const TruckSpec& t : inst.trucks()) fees += t.rental_fee;

    // Largest objective a feasible plan can reach: every truck rented plus
    // one leg per stop transition, each at the largest hub distance.
    double bound = fees + C * stops * dmax;

    if (inst.dispatch_hub() && m > 0) {
        const HubGraph& g = inst.graph();
        double out_max = 0.0, back_sum = 0.0, back_max = 0.0;
        for (const TransportRequest& r : inst.requests()) {
            out_max = std::max(out_max, g.dist(*inst.dispatch_hub(), r.source_hub));
            const double back = g.dist(r.dest_hub, *inst.dispatch_hub());
            back_sum += back;
            back_max = std::max(back_max, back);
        }
        // Feasible dispatch legs...
        bound += C * inst.truck_count() * (out_max + back_max);
        // ...plus the worst negative mass the return-leg products can take
        // at constraint-violating assignments: each Y(i,j,q) can meet up to
        // stops occupied next-stop bits, i.e. (stops - 1) uncancelled units.
        bound += C * (stops - 1) * stops * inst.truck_count() * back_sum;
    }

    PenaltyWeights w;
    for (double& v : w.by_label) v = 1.0 + bound;
    return w;
}

namespace {

// Greatest common divisor of the magnitudes, treating values within 1e-9 of
// zero as zero. Returns 0 when everything is zero.
double float_gcd(double a, double b) {
    a = std::fabs(a);
    b = std::fabs(b);
    while (b > 1e-9) {
        double r = std::fmod(a, b);
        a = b;
        b = r;
    }
    return a;
}

struct QuboAccum {
    std::map<std::pair<int, int>, double> entries;
    double constant = 0.0;

    void add(int a, int b, double c) {
        if (c == 0.0) return;
        if (a > b) std::swap(a, b);
        entries[{a, b}] += c;
    }
};

// Adds weight * (sum of terms - rhs)^2 to the accumulator. Terms must
// reference binary variables (x^2 = x folds squares onto the diagonal).
void add_squared_penalty(QuboAccum& acc, const std::vector<LinTerm>& terms, double rhs,
                         double weight) {
    for (size_t t = 0; t < terms.size(); ++t) {
        acc.add(terms[t].var, terms[t].var,
                weight * (terms[t].coeff * terms[t].coeff - 2.0 * rhs * terms[t].coeff));
        for (size_t u = t + 1; u < terms.size(); ++u)
            acc.add(terms[t].var, terms[u].var, weight * 2.0 * terms[t].coeff * terms[u].coeff);
    }
    acc.constant += weight * rhs * rhs;
}

}  // namespace

QuboModel to_penalty_qubo(const CqmModel& model, const PenaltyWeights& weights) {
    QuboModel qubo;
    qubo.core_count = model.var_count();
    qubo.var_count = model.var_count();
    for (int id = 0; id < model.var_count(); ++id) qubo.names.push_back(model.index.name(id));

    QuboAccum acc;

    // Objective goes in as-is (it is already degree <= 2 over binaries).
    for (const LinTerm& t : model.objective_lin) acc.add(t.var, t.var, t.coeff);
    for (const QuadTerm& t : model.objective_quad) {
        if (t.a == t.b) {
            acc.add(t.a, t.a, t.coeff);
            continue;
        }
        acc.add(t.a, t.b, t.coeff);
    }

    std::array<int, 10> slack_ordinal{};
    for (const CqmConstraint& c : model.constraints) {
        const double weight = weights[c.label];
        if (!(weight > 0.0))
            throw std::invalid_argument(std::string("to_penalty_qubo: non-positive weight for ") +
                                        to_string(c.label));

        // Quadratic constraints are penalized through their linear stand-in;
        // squaring the quadratic itself would produce quartic terms.
        const std::vector<LinTerm>* lhs = &c.lin;
        if (!c.quad.empty()) {
            if (c.linear_penalty_form.empty())
                throw std::invalid_argument(
                    "to_penalty_qubo: quadratic constraint without a linear penalty form");
            lhs = &c.linear_penalty_form;
        }

        // Rescale to integer coefficients (the capacity family carries loads).
        double g = std::fabs(c.rhs) > 1e-9 ? std::fabs(c.rhs) : 0.0;
        for (const LinTerm& t : *lhs) g = float_gcd(g, t.coeff);
        if (g == 0.0) continue;  // 0 = 0 row; nothing to penalize
        std::vector<LinTerm> terms;
        terms.reserve(lhs->size() + 4);
        double rhs = c.rhs / g;
        double int_check = std::fabs(rhs - std::llround(rhs));
        for (const LinTerm& t : *lhs) {
            double scaled = t.coeff / g;
            int_check = std::max(int_check, std::fabs(scaled - std::llround(scaled)));
            if (scaled != 0.0) terms.push_back({t.var, static_cast<double>(std::llround(scaled))});
        }
        if (int_check > 1e-6)
            throw std::invalid_argument(std::string("to_penalty_qubo: constraint ") +
                                        to_string(c.label) +
                                        " does not rescale to integer coefficients");
        rhs = static_cast<double>(std::llround(rhs));

        if (c.sense != Sense::eq) {
            // lhs <= rhs  ->  lhs + s = rhs with s in [0, rhs - min(lhs)];
            // lhs >= rhs  ->  lhs - s = rhs with s in [0, max(lhs) - rhs].
            double extreme = 0.0;
            for (const LinTerm& t : terms)
                extreme += c.sense == Sense::le ? std::min(t.coeff, 0.0) : std::max(t.coeff, 0.0);
            long long range = std::llround(c.sense == Sense::le ? rhs - extreme : extreme - rhs);
            if (range < 0)
                throw std::invalid_argument(std::string("to_penalty_qubo: constraint ") +
                                            to_string(c.label) + " is unsatisfiable over the box");
            // Slacks only need to cover values reachable at fully feasible
            // assignments; shrinking them over-penalizes points that are
            // infeasible anyway, which is sound. The capacity family never
            // sees a negative onboard load (the prefix-order family forbids
            // it), and the stop-packing stand-in tops out at 2 because stop
            // occupancies are 0/1 wherever one-action-per-stop holds.
            if (c.label == RowLabel::c6 && c.sense == Sense::le)
                range = std::min(range, std::llround(std::max(0.0, rhs)));
            if (c.label == RowLabel::c8) range = std::min(range, 2LL);
            const double sign = c.sense == Sense::le ? 1.0 : -1.0;
            long long covered = 0;
            long long next_pow = 1;
            int bit = 0;
            while (covered < range) {
                long long w = std::min(next_pow, range - covered);
                int id = qubo.var_count++;
                qubo.names.push_back(std::string("S_") + to_string(c.label) + "_" +
                                     std::to_string(++slack_ordinal[static_cast<int>(c.label)]) +
                                     "_" + std::to_string(bit++));
                terms.push_back({id, sign * static_cast<double>(w)});
                covered += w;
                next_pow *= 2;
            }
        }

        add_squared_penalty(acc, terms, rhs, weight);
    }

    qubo.offset = -acc.constant;
    qubo.terms.reserve(acc.entries.size());
    for (const auto& [key, coeff] : acc.entries)
        if (coeff != 0.0) qubo.terms.push_back({key.first, key.second, coeff});
    return qubo;
}

void write_qubo(std::ostream& out, const QuboModel& qubo) {
    out.precision(17);
    out << "offset " << qubo.offset << '\n';
    out << "vars " << qubo.var_count << " core " << qubo.core_count << '\n';
    for (const QuboTerm& t : qubo.terms) out << t.a << ' ' << t.b << ' ' << t.coeff << '\n';
}

QuboModel read_qubo(std::istream& in) {
    QuboModel qubo;
    std::string word;
    if (!(in >> word) || word != "offset" || !(in >> qubo.offset))
        throw std::runtime_error("qubo text: expected \"offset <value>\" header");
    if (!(in >> word) || word != "vars" || !(in >> qubo.var_count) || !(in >> word) ||
        word != "core" || !(in >> qubo.core_count))
        throw std::runtime_error("qubo text: expected \"vars <n> core <n>\" header");
    QuboTerm t;
    while (in >> t.a >> t.b >> t.coeff) {
        if (t.a < 0 || t.b < t.a || t.b >= qubo.var_count)
            throw std::runtime_error("qubo text: bad term indices");
        qubo.terms.push_back(t);
    }
    for (int id = 0; id < qubo.var_count; ++id) qubo.names.push_back("v" + std::to_string(id));
    return qubo;
}

}  // namespace srp
