#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "dqilab/classical.hpp"
#include "dqilab/rng.hpp"
#include "dqilab/verify.hpp"

using namespace dqilab;

TEST_CASE("exhaustive optimum on the worked instance") {
    const MaxLinsatInstance inst = example_opi_instance();
    const SolveReport report = exhaustive_optimum(inst);
    CHECK(report.best_satisfied == 5);
    CHECK(report.evaluations == 343);
    CHECK(count_satisfied(inst, report.best_x) == 5);
    CHECK(count_satisfied(inst, {1, 5, 5}) == 5);  // the worked optimum ties the maximum

    // exact uniform expectation m * r / p
    CHECK(report.mean_satisfied == doctest::Approx(6.0 * 2.0 / 7.0).epsilon(1e-12));
}

TEST_CASE("exhaustive ties break to the lexicographically smallest assignment") {
    const PrimeField f3(3);
    // two variables, only the second matters: ties across the first coordinate
    const MaxLinsatInstance inst =
        make_instance(f3, FpMatrix::from_rows({{0, 1}}, f3), {{1}}, InstanceKind::generic);
    const SolveReport report = exhaustive_optimum(inst);
    CHECK(report.best_satisfied == 1);
    CHECK(report.best_x == Assignment({0, 1}));
}

TEST_CASE("square solvable system satisfies every constraint") {
    const PrimeField f5(5);
    // full-rank square system: the optimum hits all rows
    const MaxLinsatInstance inst = random_instance(f5, 3, 3, 2, 505);
    const SolveReport report = exhaustive_optimum(inst);
    CHECK(report.best_satisfied == 3);

    // parity version with m = n and full rank
    SplitMix64 rng(53);
    for (int trial = 0; trial < 5; ++trial) {
        const MaxLinsatInstance parity = random_instance(PrimeField(2), 4, 4, 1, rng.next());
        CHECK(exhaustive_optimum(parity).best_satisfied == 4);
    }
}

TEST_CASE("exhaustive agrees with an independent enumeration pass") {
    SplitMix64 rng(59);
    for (int trial = 0; trial < 10; ++trial) {
        const MaxLinsatInstance inst = random_instance(PrimeField(3), 5, 3, 1, rng.next());
        const SolveReport report = exhaustive_optimum(inst);

        int best = -1;
        Assignment best_x;
        for (fp_t a = 0; a < 3; ++a) {
            for (fp_t b = 0; b < 3; ++b) {
                for (fp_t c = 0; c < 3; ++c) {
                    const Assignment x{a, b, c};
                    const int s = count_satisfied(inst, x);
                    if (s > best) {
                        best = s;
                        best_x = x;
                    }
                }
            }
        }
        CHECK(report.best_satisfied == best);
        CHECK(report.best_x == best_x);
    }
}

TEST_CASE("size guard on exhaustive enumeration") {
    const PrimeField f101(101);
    const MaxLinsatInstance inst = random_opi(f101, 13, 50, 1);
    CHECK_THROWS_AS((void)exhaustive_optimum(inst), TooLarge);
}

TEST_CASE("information-set trials satisfy their selected rows") {
    const MaxLinsatInstance inst = example_opi_instance();
    const SolveReport report = prange_solve(inst, 200, 11);
    CHECK(report.per_trial.size() == 200);
    for (int count : report.per_trial) CHECK(count >= static_cast<int>(inst.n()));
    CHECK(report.best_satisfied <= exhaustive_optimum(inst).best_satisfied);
    CHECK(report.mean_satisfied >= static_cast<double>(inst.n()));

    // deterministic under a fixed seed
    const SolveReport again = prange_solve(inst, 200, 11);
    CHECK(again.per_trial == report.per_trial);
    CHECK(again.best_x == report.best_x);
}

TEST_CASE("information-set rate calibration at moderate size") {
    const PrimeField f53(53);
    const MaxLinsatInstance inst = random_opi(f53, 5, 26, 777);  // n/p ~ 0.094, r/p ~ 0.49
    const SolveReport report = prange_solve(inst, 1500, 9);
    const double rate = report.mean_satisfied / static_cast<double>(inst.m());
    const double predicted = 0.5 + 5.0 / (2.0 * 53.0);
    CHECK(std::abs(rate - predicted) < 0.05);
}

TEST_CASE("information-set solving rejects unusable shapes") {
    const PrimeField f5(5);
    const MaxLinsatInstance wide =
        make_instance(f5, FpMatrix::from_rows({{1, 2, 3}}, f5), {{1}}, InstanceKind::generic);
    CHECK_THROWS_AS((void)prange_solve(wide, 10, 1), BadDimension);

    const MaxLinsatInstance deficient = make_instance(
        f5, FpMatrix::from_rows({{1, 2}, {2, 4}, {3, 1}}, f5), {{1}, {2}, {3}}, InstanceKind::generic);
    CHECK_THROWS_AS((void)prange_solve(deficient, 10, 1), RankDeficient);
}

TEST_CASE("trial distribution is invariant under row permutations") {
    const PrimeField f31(31);
    const MaxLinsatInstance inst = random_opi(f31, 4, 15, 321);

    // permute rows (and matching targets)
    std::vector<std::vector<fp_t>> rows;
    std::vector<std::vector<fp_t>> targets;
    std::vector<fp_t> points;
    SplitMix64 rng(654);
    std::vector<std::size_t> perm(inst.m());
    for (std::size_t i = 0; i < inst.m(); ++i) perm[i] = i;
    for (std::size_t i = 0; i + 1 < inst.m(); ++i) std::swap(perm[i], perm[i + rng.below(inst.m() - i)]);
    for (std::size_t i = 0; i < inst.m(); ++i) {
        rows.emplace_back(inst.constraint_matrix.row(perm[i]).begin(),
                          inst.constraint_matrix.row(perm[i]).end());
        targets.push_back(inst.targets[perm[i]]);
    }
    const MaxLinsatInstance permuted =
        make_instance(inst.field, FpMatrix::from_rows(rows, inst.field), targets, InstanceKind::generic);

    const SolveReport a = prange_solve(inst, 3000, 42);
    const SolveReport b = prange_solve(permuted, 3000, 43);
    // same distribution up to Monte-Carlo noise
    const double sigma = std::sqrt(static_cast<double>(inst.m())) / std::sqrt(3000.0);
    CHECK(std::abs(a.mean_satisfied - b.mean_satisfied) < 4.0 * sigma);
}

TEST_CASE("uniform baseline") {
    const MaxLinsatInstance inst = example_opi_instance();
    const SolveReport report = random_baseline(inst, 100000, 3);
    CHECK(std::abs(report.mean_satisfied - 6.0 * 2.0 / 7.0) < 0.1);

    const SolveReport again = random_baseline(inst, 1000, 3);
    const SolveReport thrice = random_baseline(inst, 1000, 3);
    CHECK(again.per_trial == thrice.per_trial);
    CHECK(again.best_x == thrice.best_x);

    // parity constraints hold half the time
    const MaxLinsatInstance xs = random_instance(PrimeField(2), 9, 4, 1, 12);
    const SolveReport parity = random_baseline(xs, 60000, 5);
    CHECK(std::abs(parity.mean_satisfied - 4.5) < 0.06);
}

TEST_CASE("trial results do not depend on the worker cap") {
    const MaxLinsatInstance inst = random_opi(PrimeField(31), 4, 15, 77);

    setenv("DQI_LAB_THREADS", "1", 1);
    const SolveReport serial = prange_solve(inst, 400, 5);
    const SolveReport serial_rb = random_baseline(inst, 400, 5);
    setenv("DQI_LAB_THREADS", "4", 1);
    const SolveReport parallel = prange_solve(inst, 400, 5);
    const SolveReport parallel_rb = random_baseline(inst, 400, 5);
    unsetenv("DQI_LAB_THREADS");

    CHECK(serial.per_trial == parallel.per_trial);
    CHECK(serial.best_x == parallel.best_x);
    CHECK(serial.mean_satisfied == parallel.mean_satisfied);
    CHECK(serial_rb.per_trial == parallel_rb.per_trial);
}

TEST_CASE("solver ordering on one instance") {
    const MaxLinsatInstance inst = example_opi_instance();
    const SolveReport exact = exhaustive_optimum(inst);
    const SolveReport prange = prange_solve(inst, 500, 21);
    const SolveReport uniform = random_baseline(inst, 500, 21);
    CHECK(exact.best_satisfied >= prange.best_satisfied);
    CHECK(prange.best_satisfied >= uniform.best_satisfied - 1);  // both stochastic, coarse ordering
    CHECK(prange.mean_satisfied > uniform.mean_satisfied);
}
