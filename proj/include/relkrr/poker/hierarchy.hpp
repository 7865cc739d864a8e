#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "relkrr/poker/equity.hpp"
#include "relkrr/task.hpp"

namespace relkrr::poker {

struct SamplingFailure : std::runtime_error {
    int attempts;
    SamplingFailure(const std::string& msg, int attempts_)
        : std::runtime_error(msg), attempts(attempts_) {}
};

// One training-pair constraint as realized by a sample: item `winner` must
// beat item `loser` with equity inside the configured band.
struct ConstraintEquity {
    int winner = 0;  // item index, 1-based
    int loser = 0;
    double equity = 0.0;
};

struct HierarchySample {
    std::vector<int> hands;  // HoleClass indices, position i-1 holds item i
    std::vector<ConstraintEquity> constraints;
    int restarts_used = 0;

    const HoleClass& hand(int item) const {
        return all_hole_classes()[hands.at(item - 1)];
    }
};

// Winner/loser item pairs whose equity a sample must keep inside the band:
// each adjacent pair, plus the exception pair for TIExc.
std::vector<std::pair<int, int>> hierarchy_constraints(const TaskSpec& spec);

// Sequentially assigns a distinct hand class per item, drawing each next
// hand uniformly among classes satisfying every constraint against the
// items already placed. Dead ends restart from a fresh first hand; TI
// additionally requires the finished hierarchy to be fully transitive.
HierarchySample sample_hierarchy(const TaskSpec& spec, const EquityMatrix& eq,
                                 double band_lo, double band_hi, std::uint64_t seed,
                                 int max_restarts);

// Independent re-check of all constraints (and, for TI, full pairwise
// transitivity) of a finished sample.
bool verify_hierarchy(const TaskSpec& spec, const EquityMatrix& eq,
                      const HierarchySample& sample, double band_lo, double band_hi);

// Entry (i-1, j-1) is the fraction of samples whose item-i hand beats the
// item-j hand; the diagonal is NaN. Row-major n x n.
std::vector<double> generalization_proportions(
    const std::vector<HierarchySample>& samples, const EquityMatrix& eq,
    const TaskSpec& spec);

}  // namespace relkrr::poker
