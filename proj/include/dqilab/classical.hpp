#ifndef DQILAB_CLASSICAL_HPP
#define DQILAB_CLASSICAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dqilab/problems.hpp"

namespace dqilab {

struct SolveReport {
    Assignment best_x;
    int best_satisfied = 0;
    double mean_satisfied = 0.0;  // expectation over trials (or over all assignments for exhaustive)
    std::uint64_t evaluations = 0;
    std::string method;
    std::vector<int> per_trial;  // satisfied counts per trial, when trial-based
};

// Global optimum over all p^n assignments (guard p^n <= 2^24), ties broken
// to the lexicographically smallest assignment. mean_satisfied is the exact
// uniform-assignment expectation.
SolveReport exhaustive_optimum(const MaxLinsatInstance& inst);

// Information-set baseline: per trial, solve a random invertible n-row subset
// exactly for uniformly chosen targets and score the full assignment.
SolveReport prange_solve(const MaxLinsatInstance& inst, std::size_t trials, std::uint64_t seed);

SolveReport random_baseline(const MaxLinsatInstance& inst, std::size_t samples, std::uint64_t seed);

// worker cap honored by the trial loops (DQI_LAB_THREADS overrides)
std::size_t worker_count();

}  // namespace dqilab

#endif
