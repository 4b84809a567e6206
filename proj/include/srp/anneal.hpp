#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "srp/assignment.hpp"
#include "srp/instance.hpp"
#include "srp/qubo.hpp"

namespace srp {

// Geometric Metropolis schedule. t_initial <= 0 means "pick automatically":
// the largest absolute QUBO coefficient, which scales the early acceptance
// rate to the model. The final temperature is t_final_factor * t_initial.
struct AnnealSchedule {
    int sweeps = 1000;
    int restarts = 32;
    double t_initial = 0.0;
    double t_final_factor = 1e-3;
    uint64_t seed = 1;
};

struct Sample {
    std::vector<uint8_t> bits;
    double energy = 0.0;
    int restart = 0;
};

// Samples ordered by ascending energy (ties by restart id, so the order is
// reproducible and independent of how restarts were scheduled).
struct SampleSet {
    std::vector<Sample> samples;
    double offset = 0.0;

    const Sample& best() const;
};

// Runs `restarts` independent anneals, each its own RNG stream derived from
// the seed, so results are reproducible and a longer run extends a shorter
// one sample-for-sample. The walk anneals the core bits with single-bit and
// strong-pair moves while auxiliary (slack) bits ride at their conditional
// optimum — they decompose into independent groups small enough to solve
// exactly per move. Each restart descends from its best-seen state to a
// local minimum before emitting; energies are recomputed from the final
// bits. Restarts run concurrently.
SampleSet anneal(const QuboModel& qubo, const AnnealSchedule& schedule);

// Reads the plan out of a sample's core bits and reports the assignment's
// full constraint check; infeasible samples are reported, never repaired.
DecodedAssignment decode_sample(const SrpInstance& inst, const VarIndex& index, const Sample& s);

// CSV: header "energy,restart,<variable names...>", one row per sample.
void write_samples_csv(std::ostream& out, const SampleSet& set, const QuboModel& qubo);

}  // namespace srp
