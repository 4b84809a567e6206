#include "srp/anneal.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "srp/rng.hpp"

namespace srp {

const Sample& SampleSet::best() const {
    if (samples.empty()) throw std::logic_error("SampleSet::best: no samples");
    return samples.front();
}

namespace {

// Auxiliary bits (ids past core_count — inequality slacks) carry no cross-row
// couplings, so with the other bits held fixed the energy minimum over them
// factorizes into small independent groups. The walk uses that: it anneals
// the core bits and keeps every auxiliary group at its conditional optimum,
// which removes the barriers a lagging slack would otherwise put in front of
// each core move. A group too large to scan (possible in hand-built models)
// is annealed bit by bit like the core.
constexpr int kGroupBitCap = 8;

struct AuxGroup {
    std::vector<int> bits;                                 // ascending global ids
    std::vector<double> diag;                              // per local bit
    std::vector<std::tuple<int, int, double>> inner;       // local pairs
    std::vector<std::vector<std::pair<int, double>>> cross;  // local -> (walked id, w)

    // Minimum over the group's bits given the walked bits in x. *mask_out
    // receives the smallest minimizing mask, so re-assembly is deterministic.
    double conditional_min(const std::vector<uint8_t>& x, uint32_t* mask_out) const {
        const int n = static_cast<int>(bits.size());
        double h[kGroupBitCap];
        for (int a = 0; a < n; ++a) {
            double v = diag[a];
            for (const auto& [walked, w] : cross[a]) v += w * x[walked];
            h[a] = v;
        }
        double best = 0.0;  // mask 0 scores zero by construction
        uint32_t best_mask = 0;
        for (uint32_t mask = 1; mask < (1u << n); ++mask) {
            double e = 0.0;
            for (int a = 0; a < n; ++a)
                if (mask >> a & 1) e += h[a];
            for (const auto& [a, b, w] : inner)
                if ((mask >> a & 1) && (mask >> b & 1)) e += w;
            if (e < best) {
                best = e;
                best_mask = mask;
            }
        }
        if (mask_out) *mask_out = best_mask;
        return best;
    }
};

struct WalkTables {
    std::vector<int> order;  // walked bit ids, ascending
    std::vector<double> diag;
    std::vector<int> head;  // CSR offsets over all ids; only walked rows filled
    std::vector<std::pair<int, double>> edges;
    std::vector<int> strong_head;  // per id: edge slots with |w| >= half the bit's max
    std::vector<int> strong;
    std::vector<AuxGroup> groups;
    std::vector<std::vector<int>> touching;  // walked id -> groups it conditions

    explicit WalkTables(const QuboModel& q) {
        const int n = q.var_count;
        const int core = std::clamp(q.core_count, 0, n);

        // Group auxiliary bits by their mutual couplings.
        std::vector<int> parent(n);
        for (int v = 0; v < n; ++v) parent[v] = v;
        auto find = [&](int v) {
            while (parent[v] != v) v = parent[v] = parent[parent[v]];
            return v;
        };
        for (const QuboTerm& t : q.terms)
            if (t.a >= core && t.b >= core && t.a != t.b) parent[find(t.a)] = find(t.b);

        std::vector<std::vector<int>> members(n);
        for (int v = core; v < n; ++v) members[find(v)].push_back(v);

        std::vector<int> group_of(n, -1);
        for (int v = core; v < n; ++v) {
            const auto& comp = members[find(v)];
            if (static_cast<int>(comp.size()) > kGroupBitCap) continue;  // walked instead
            if (group_of[v] != -1) continue;
            const int g = static_cast<int>(groups.size());
            groups.emplace_back();
            groups[g].bits = comp;  // already ascending: filled in id order
            groups[g].diag.assign(comp.size(), 0.0);
            groups[g].cross.assign(comp.size(), {});
            for (int b : comp) group_of[b] = g;
        }
        for (int v = 0; v < n; ++v)
            if (v < core || group_of[v] == -1) order.push_back(v);

        auto local = [&](const AuxGroup& g, int v) {
            return static_cast<int>(std::lower_bound(g.bits.begin(), g.bits.end(), v) -
                                    g.bits.begin());
        };

        diag.assign(n, 0.0);
        head.assign(n + 1, 0);
        for (const QuboTerm& t : q.terms) {
            const int ga = t.a < n ? group_of[t.a] : -1, gb = t.b < n ? group_of[t.b] : -1;
            if (ga == -1 && gb == -1) {
                if (t.a == t.b) {
                    diag[t.a] += t.coeff;
                } else {
                    ++head[t.a + 1];
                    ++head[t.b + 1];
                }
            } else if (ga != -1 && gb != -1) {
                AuxGroup& g = groups[ga];  // ga == gb: groups are components
                if (t.a == t.b)
                    g.diag[local(g, t.a)] += t.coeff;
                else
                    g.inner.emplace_back(local(g, t.a), local(g, t.b), t.coeff);
            } else {
                const int aux = ga != -1 ? t.a : t.b, walked = ga != -1 ? t.b : t.a;
                AuxGroup& g = groups[ga != -1 ? ga : gb];
                g.cross[local(g, aux)].emplace_back(walked, t.coeff);
            }
        }
        for (int v = 0; v < n; ++v) head[v + 1] += head[v];
        edges.resize(head[n]);
        std::vector<int> cursor(head.begin(), head.end());
        for (const QuboTerm& t : q.terms) {
            if (t.a == t.b || group_of[t.a] != -1 || group_of[t.b] != -1) continue;
            edges[cursor[t.a]++] = {t.b, t.coeff};
            edges[cursor[t.b]++] = {t.a, t.coeff};
        }

        touching.assign(n, {});
        for (int g = 0; g < static_cast<int>(groups.size()); ++g) {
            std::vector<int> ids;
            for (const auto& lst : groups[g].cross)
                for (const auto& [walked, w] : lst) ids.push_back(walked);
            std::sort(ids.begin(), ids.end());
            ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
            for (int v : ids) touching[v].push_back(g);
        }

        // Pair proposals tunnel through penalty ridges; aim them at each
        // bit's strongest couplings, where the ridges are.
        strong_head.assign(n + 1, 0);
        std::vector<double> top(n, 0.0);
        for (int v : order)
            for (int k = head[v]; k < head[v + 1]; ++k)
                top[v] = std::max(top[v], std::abs(edges[k].second));
        for (int v : order)
            for (int k = head[v]; k < head[v + 1]; ++k)
                if (std::abs(edges[k].second) >= 0.5 * top[v]) ++strong_head[v + 1];
        for (int v = 0; v < n; ++v) strong_head[v + 1] += strong_head[v];
        strong.resize(strong_head[n]);
        std::vector<int> scursor(strong_head.begin(), strong_head.end());
        for (int v : order)
            for (int k = head[v]; k < head[v + 1]; ++k)
                if (std::abs(edges[k].second) >= 0.5 * top[v]) strong[scursor[v]++] = k;
    }

    double flip_delta(const std::vector<uint8_t>& x, int i) const {
        double local = diag[i];
        for (int k = head[i]; k < head[i + 1]; ++k) local += edges[k].second * x[edges[k].first];
        return (1 - 2 * x[i]) * local;
    }

    // Energy over walked terms plus every group at its conditional optimum.
    // The model offset is not included; samples recompute through
    // QuboModel::energy at the end.
    double marginal_energy(const std::vector<uint8_t>& x, std::vector<double>& gmin) const {
        double e = 0.0;
        for (int i : order) {
            if (!x[i]) continue;
            e += diag[i];
            for (int k = head[i]; k < head[i + 1]; ++k)
                if (edges[k].first > i && x[edges[k].first]) e += edges[k].second;
        }
        gmin.resize(groups.size());
        for (size_t g = 0; g < groups.size(); ++g) {
            gmin[g] = groups[g].conditional_min(x, nullptr);
            e += gmin[g];
        }
        return e;
    }
};

// One- or two-bit move: delta over walked terms plus the re-optimized groups
// the move conditions. Leaves x untouched; `touched` collects (group, new
// min) pairs for apply_move.
double propose_move(const WalkTables& tb, std::vector<uint8_t>& x, const std::vector<double>& gmin,
                    int i, int j, std::vector<std::pair<int, double>>& touched) {
    double d = tb.flip_delta(x, i);
    if (j >= 0) {
        double w_ij = 0.0;
        for (int k = tb.head[i]; k < tb.head[i + 1]; ++k)
            if (tb.edges[k].first == j) w_ij += tb.edges[k].second;
        d += tb.flip_delta(x, j) + w_ij * (1 - 2 * x[i]) * (1 - 2 * x[j]);
    }
    touched.clear();
    x[i] ^= 1;
    if (j >= 0) x[j] ^= 1;
    for (int bit : {i, j}) {
        if (bit < 0) break;  // j absent
        for (int g : tb.touching[bit]) {
            bool seen = false;
            for (const auto& [gg, unused] : touched) seen = seen || gg == g;
            if (seen) continue;
            const double m = tb.groups[g].conditional_min(x, nullptr);
            touched.emplace_back(g, m);
            d += m - gmin[g];
        }
    }
    x[i] ^= 1;
    if (j >= 0) x[j] ^= 1;
    return d;
}

void apply_move(std::vector<uint8_t>& x, std::vector<double>& gmin, double& energy, int i, int j,
                const std::vector<std::pair<int, double>>& touched, double d) {
    x[i] ^= 1;
    if (j >= 0) x[j] ^= 1;
    for (const auto& [g, m] : touched) gmin[g] = m;
    energy += d;
}

Sample run_restart(const QuboModel& qubo, const WalkTables& tables, const AnnealSchedule& sched,
                   double t0, double t1, int restart) {
    std::mt19937_64 rng(mix_seed(sched.seed, 0xA11EA1ULL, static_cast<uint64_t>(restart)));

    std::vector<uint8_t> x(qubo.var_count, 0);
    for (int i : tables.order) x[i] = static_cast<uint8_t>(rng() & 1);
    std::vector<double> gmin;
    double energy = tables.marginal_energy(x, gmin);

    std::vector<uint8_t> best_bits = x;
    double best_energy = energy;
    std::vector<std::pair<int, double>> touched;

    const double drift_tol = 1e-9;
    for (int sweep = 0; sweep < sched.sweeps; ++sweep) {
        const double frac = sched.sweeps > 1 ? static_cast<double>(sweep) / (sched.sweeps - 1) : 0.0;
        const double temp = t0 * std::pow(t1 / t0, frac);
        for (int i : tables.order) {
            const double delta = propose_move(tables, x, gmin, i, -1, touched);
            if (delta <= 0.0 || unit_real(rng) < std::exp(-delta / temp)) {
                apply_move(x, gmin, energy, i, -1, touched, delta);
                if (energy < best_energy) {
                    best_energy = energy;
                    best_bits = x;
                }
            }
            const int sb = tables.strong_head[i], se = tables.strong_head[i + 1];
            if (se > sb) {
                const int slot =
                    tables.strong[sb + static_cast<int>(bounded(rng, static_cast<uint64_t>(se - sb)))];
                const int j = tables.edges[slot].first;
                const double delta2 = propose_move(tables, x, gmin, i, j, touched);
                if (delta2 <= 0.0 || unit_real(rng) < std::exp(-delta2 / temp)) {
                    apply_move(x, gmin, energy, i, j, touched, delta2);
                    if (energy < best_energy) {
                        best_energy = energy;
                        best_bits = x;
                    }
                }
            }
        }
        // Guard the incremental bookkeeping against drift every sweep.
        std::vector<double> fresh_gmin;
        const double exact = tables.marginal_energy(x, fresh_gmin);
        if (std::fabs(exact - energy) > drift_tol * std::max(1.0, std::fabs(exact)))
            throw std::logic_error("anneal: incremental energy drifted from recomputation");
        energy = exact;
        gmin = std::move(fresh_gmin);
    }

    // Descend from the best state to a local minimum of the same move set.
    x = best_bits;
    energy = tables.marginal_energy(x, gmin);
    bool moved = true;
    while (moved) {
        moved = false;
        for (int i : tables.order) {
            const double delta = propose_move(tables, x, gmin, i, -1, touched);
            if (delta < 0.0) {
                apply_move(x, gmin, energy, i, -1, touched, delta);
                moved = true;
            }
        }
        for (int i : tables.order) {
            if (moved) break;
            for (int k = tables.head[i]; k < tables.head[i + 1] && !moved; ++k) {
                const int j = tables.edges[k].first;
                if (j <= i) continue;
                const double delta = propose_move(tables, x, gmin, i, j, touched);
                if (delta < 0.0) {
                    apply_move(x, gmin, energy, i, j, touched, delta);
                    moved = true;
                }
            }
        }
    }

    // Assemble the auxiliary bits at their conditional optimum.
    for (const AuxGroup& g : tables.groups) {
        uint32_t mask = 0;
        g.conditional_min(x, &mask);
        for (size_t a = 0; a < g.bits.size(); ++a)
            x[g.bits[a]] = static_cast<uint8_t>(mask >> a & 1);
    }

    // Store the recomputed energy so stored == recomputable, bit for bit.
    const double final_energy = qubo.energy(x);
    return Sample{std::move(x), final_energy, restart};
}

}  // namespace

SampleSet anneal(const QuboModel& qubo, const AnnealSchedule& schedule) {
    if (schedule.sweeps < 1) throw std::invalid_argument("anneal: sweeps must be >= 1");
    if (schedule.restarts < 1) throw std::invalid_argument("anneal: restarts must be >= 1");

    SampleSet set;
    set.offset = qubo.offset;
    if (qubo.var_count == 0) {
        set.samples.push_back({{}, 0.0, 0});
        return set;
    }

    double t0 = schedule.t_initial;
    if (t0 <= 0.0) t0 = qubo.max_abs_coeff();
    if (t0 <= 0.0) t0 = 1.0;  // constant energy landscape; temperature moot
    const double t1 = std::max(t0 * schedule.t_final_factor, 1e-300);

    const WalkTables tables(qubo);
    set.samples.resize(schedule.restarts);

    const int workers =
        std::max(1, std::min<int>(schedule.restarts, std::thread::hardware_concurrency()));
    auto run_range = [&](int begin, int end) {
        for (int r = begin; r < end; ++r)
            set.samples[r] = run_restart(qubo, tables, schedule, t0, t1, r);
    };
    if (workers <= 1) {
        run_range(0, schedule.restarts);
    } else {
        std::vector<std::future<void>> parts;
        const int chunk = (schedule.restarts + workers - 1) / workers;
        for (int at = 0; at < schedule.restarts; at += chunk)
            parts.push_back(std::async(std::launch::async, run_range, at,
                                       std::min(schedule.restarts, at + chunk)));
        for (auto& p : parts) p.get();
    }

    std::sort(set.samples.begin(), set.samples.end(), [](const Sample& a, const Sample& b) {
        return a.energy < b.energy || (a.energy == b.energy && a.restart < b.restart);
    });
    return set;
}

DecodedAssignment decode_sample(const SrpInstance& inst, const VarIndex& index, const Sample& s) {
    return decode_assignment(inst, index, s.bits);
}

void write_samples_csv(std::ostream& out, const SampleSet& set, const QuboModel& qubo) {
    out << "energy,restart";
    for (const std::string& name : qubo.names) out << ',' << name;
    out << '\n';
    out.precision(17);
    for (const Sample& s : set.samples) {
        out << s.energy << ',' << s.restart;
        for (uint8_t b : s.bits) out << ',' << static_cast<int>(b);
        out << '\n';
    }
}

}  // namespace srp
