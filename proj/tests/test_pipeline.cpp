#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "dqilab/dqi.hpp"
#include "dqilab/rng.hpp"
#include "dqilab/verify.hpp"

using namespace dqilab;

namespace {

const PrimeField f2(2);
const PrimeField f7(7);

WeightVector le_weights(int ell) {
    return normalized_weights(std::vector<cd>(ell + 1, cd(1.0, 0.0)));
}

}  // namespace

TEST_CASE("eight snapshots in stage order") {
    const MaxLinsatInstance inst = example_opi_instance();
    const PipelineResult run = pipeline_run(inst, le_weights(1));
    REQUIRE(run.snapshots.size() == 8);
    for (int s = 0; s < 8; ++s) CHECK(run.snapshots[s].stage == s);
    CHECK(std::abs(run.final_state.norm() - 1.0) < 1e-10);
}

TEST_CASE("after uncomputing, the error register carries fixed-weight superpositions") {
    const MaxLinsatInstance inst = example_opi_instance();
    const WeightVector w = optimize_weights(inst, 1).weights;
    const PipelineResult run = pipeline_run(inst, w);

    const PipelineSnapshot& s3 = run.snapshots[3];
    CHECK(s3.w_excited_mass() < 1e-20);

    // W row 0 must equal sum_k w_k |D_k>
    const std::uint64_t e_total = s3.we.size() / s3.w_levels;
    std::vector<cd> expect(e_total, 0.0);
    for (int k = 0; k <= 1; ++k) {
        const StateVector dk = dicke_state(inst.field, inst.m(), k);
        for (std::uint64_t idx = 0; idx < e_total; ++idx) expect[idx] += w.w[k] * dk.amplitudes[idx];
    }
    double err = 0;
    for (std::uint64_t idx = 0; idx < e_total; ++idx) err += std::norm(s3.we[idx] - expect[idx]);
    CHECK(std::sqrt(err) < 1e-12);
}

TEST_CASE("binary constraint phases flip signs without moving support") {
    SplitMix64 rng(91);
    const MaxLinsatInstance inst = random_instance(f2, 6, 3, 1, 919);
    const int ell = std::min(default_ell(inst), 2);
    const PipelineResult run = pipeline_run(inst, le_weights(ell));

    const PipelineSnapshot& s3 = run.snapshots[3];
    const PipelineSnapshot& s4 = run.snapshots[4];
    const std::uint64_t e_total = s3.we.size() / s3.w_levels;
    for (std::uint64_t idx = 0; idx < e_total; ++idx) {
        const auto y = digits_of(idx, inst.m(), 2);
        fp_t vy = 0;
        for (std::size_t i = 0; i < inst.m(); ++i) {
            if (y[i]) vy = f2.add(vy, inst.targets[i][0]);
        }
        const double sign = vy == 0 ? 1.0 : -1.0;
        CHECK(std::abs(s4.we[idx] - sign * s3.we[idx]) < 1e-12);
    }
}

TEST_CASE("weight histograms survive the constraint transform") {
    const MaxLinsatInstance inst = example_opi_instance();
    const PipelineResult run = pipeline_run(inst, le_weights(1));
    const auto before = run.snapshots[3].e_weight_histogram();
    const auto after = run.snapshots[4].e_weight_histogram();
    REQUIRE(before.size() == after.size());
    for (std::size_t i = 0; i < before.size(); ++i) {
        CHECK(std::abs(before[i] - after[i]) < 1e-10);
    }
}

TEST_CASE("stage five pairs each error string with its syndrome") {
    const MaxLinsatInstance inst = example_opi_instance();
    const PipelineResult run = pipeline_run(inst, le_weights(1));
    for (const auto& term : run.snapshots[5].es) {
        const auto y = digits_of(term.e_index, inst.m(), 7);
        CHECK(term.s_index == index_of(vec_mat(y, inst.constraint_matrix), 7));
    }
    CHECK(run.snapshots[6].e_nonzero_mass() < 1e-20);
}

TEST_CASE("pipeline output equals the direct construction") {
    SplitMix64 rng(417);
    for (const TwoPathCase& tc : twopath_matrix()) {
        std::vector<cd> raw(tc.ell + 1);
        for (cd& v : raw) v = cd(rng.uniform01() * 2 - 1, rng.uniform01() * 2 - 1);
        for (const WeightVector& w : {le_weights(tc.ell), normalized_weights(raw)}) {
            const StateVector direct = build_dqi_direct(tc.inst, w);
            const PipelineResult run = pipeline_run(tc.inst, w);
            const double dist = aligned_l2_distance(run.final_state, direct);
            INFO(tc.label);
            CHECK(dist < 1e-10);
        }
    }
}

TEST_CASE("the matrix exercises decoding radii up to three") {
    int max_ell = 0;
    for (const TwoPathCase& tc : twopath_matrix()) max_ell = std::max(max_ell, tc.ell);
    CHECK(max_ell == 3);
}

TEST_CASE("ambiguous decoding aborts the run") {
    // degree-1 fit kernel has distance 3; radius 2 collides
    const MaxLinsatInstance inst =
        build_opi(f7, 2, {1, 2, 3, 4, 5, 6}, {{0, 1}, {3, 6}, {2, 5}, {3, 6}, {4, 5}, {1, 5}});
    CHECK_THROWS_AS((void)pipeline_run(inst, le_weights(2)), AmbiguousSolution);
}

TEST_CASE("oversized registers are refused") {
    const MaxLinsatInstance inst = random_opi(PrimeField(101), 4, 50, 5);
    // error register needs 101^100 amplitudes
    CHECK_THROWS_AS((void)pipeline_run(inst, le_weights(1)), TooLarge);
}
