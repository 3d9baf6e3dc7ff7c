#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "json.hpp"

#include "dqilab/classical.hpp"
#include "dqilab/problems.hpp"
#include "dqilab/rng.hpp"
#include "dqilab/verify.hpp"

using namespace dqilab;

TEST_CASE("constraint signs on the worked polynomial-fit instance") {
    const MaxLinsatInstance inst = example_opi_instance();
    REQUIRE(inst.m() == 6);
    REQUIRE(inst.n() == 3);
    REQUIRE(inst.r() == 2);

    const Assignment x{4, 1, 2};
    CHECK(constraint_value(inst, 2, x) == -1);
    CHECK(constraint_value(inst, 0, x) == 1);
    const std::vector<int> expect{1, -1, -1, -1, -1, 1};
    for (std::size_t i = 0; i < 6; ++i) CHECK(constraint_value(inst, i, x) == expect[i]);

    CHECK(objective(inst, x) == -2);
    CHECK(count_satisfied(inst, x) == 2);
    CHECK(objective(inst, {1, 5, 5}) == 4);
    CHECK(count_satisfied(inst, {1, 5, 5}) == 5);

    CHECK_THROWS_AS(constraint_value(inst, 6, x), IndexOutOfRange);
    CHECK_THROWS_AS(constraint_value(inst, 0, Assignment{1, 2}), DimensionMismatch);
}

TEST_CASE("a zero dot product misses a zero-free target") {
    const PrimeField f5(5);
    const MaxLinsatInstance inst = make_instance(
        f5, FpMatrix::from_rows({{1, 0}}, f5), {{1, 2, 3, 4}}, InstanceKind::generic);
    CHECK(constraint_value(inst, 0, {0, 3}) == -1);
    CHECK(constraint_value(inst, 0, {2, 0}) == 1);
}

TEST_CASE("objective parity and range") {
    SplitMix64 rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        const MaxLinsatInstance inst = random_instance(PrimeField(5), 4, 2, 2, rng.next());
        Assignment x{rng.below(5), rng.below(5)};
        const int f = objective(inst, x);
        CHECK(f >= -4);
        CHECK(f <= 4);
        CHECK((f + 4) % 2 == 0);
        CHECK(count_satisfied(inst, x) == (f + 4) / 2);
    }
}

TEST_CASE("Vandermonde construction matches the worked example") {
    const MaxLinsatInstance inst = example_opi_instance();
    const std::vector<std::vector<fp_t>> expect = {{1, 1, 1}, {1, 2, 4}, {1, 3, 2},
                                                   {1, 4, 2}, {1, 5, 4}, {1, 6, 1}};
    CHECK(inst.constraint_matrix == FpMatrix::from_rows(expect, inst.field));
    CHECK(inst.kind == InstanceKind::opi);

    CHECK_THROWS_AS(build_opi(PrimeField(7), 3, {1, 1, 3}, {{0, 1}, {0, 1}, {0, 1}}), DuplicatePoints);
    CHECK_THROWS_AS(build_opi(PrimeField(7), 4, {1, 2, 3}, {{0, 1}, {0, 1}, {0, 1}}), BadDimension);
    CHECK_THROWS_AS(build_opi(PrimeField(7), 2, {1, 2, 3}, {{0, 1}, {0}, {0, 1}}), RaggedTargets);
}

TEST_CASE("row dot products evaluate the fitted polynomial") {
    const MaxLinsatInstance inst = example_opi_instance();
    SplitMix64 rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        Assignment coeffs{rng.below(7), rng.below(7), rng.below(7)};
        const FpPoly poly{inst.field, coeffs};
        for (std::size_t i = 0; i < inst.m(); ++i) {
            CHECK(dot(inst.constraint_matrix.row(i), coeffs, inst.field) ==
                  poly_eval(poly, inst.points[i]));
        }
    }
}

TEST_CASE("single-column instance counts membership of the constant") {
    const PrimeField f7(7);
    const MaxLinsatInstance inst = build_opi(f7, 1, {1, 2, 3}, {{0, 1}, {2, 3}, {0, 5}});
    for (fp_t c = 0; c < 7; ++c) {
        int expect = 0;
        for (std::size_t i = 0; i < 3; ++i) expect += target_contains(inst.targets[i], c);
        CHECK(count_satisfied(inst, {c}) == expect);
    }
}

TEST_CASE("bivariate instance reproduces the worked table") {
    const MaxLinsatInstance inst = example_mopi_instance();
    REQUIRE(inst.m() == 25);
    REQUIRE(inst.n() == 3);  // 1, x, y

    const Assignment q{0, 1, 1};
    CHECK(objective(inst, q) == -5);
    CHECK(count_satisfied(inst, q) == 10);

    // spot-check the tabulated target sets: T_(1,0) = {4,0}, T_(0,1) = {1,2}
    CHECK(inst.targets[1] == std::vector<fp_t>({0, 4}));
    CHECK(inst.targets[5] == std::vector<fp_t>({1, 2}));

    // constant polynomials: satisfaction equals a direct table scan
    for (fp_t c = 0; c < 5; ++c) {
        int expect = 0;
        for (std::size_t i = 0; i < 25; ++i) expect += target_contains(inst.targets[i], c);
        CHECK(count_satisfied(inst, {c, 0, 0}) == expect);
    }
}

TEST_CASE("monomial enumeration order") {
    const auto monomials = mopi_monomials(2, 1, 5);
    REQUIRE(monomials.size() == 3);
    CHECK(monomials[0] == std::vector<unsigned>({0, 0}));
    CHECK(monomials[1] == std::vector<unsigned>({1, 0}));
    CHECK(monomials[2] == std::vector<unsigned>({0, 1}));

    // binary three-variable layout matches the mask ordering used by RM codes
    const auto rm_monoms = mopi_monomials(3, 2, 2);
    REQUIRE(rm_monoms.size() == 7);
    CHECK(rm_monoms[1] == std::vector<unsigned>({1, 0, 0}));
    CHECK(rm_monoms[2] == std::vector<unsigned>({0, 1, 0}));
    CHECK(rm_monoms[3] == std::vector<unsigned>({0, 0, 1}));
    CHECK(rm_monoms[4] == std::vector<unsigned>({1, 1, 0}));
    CHECK(rm_monoms[5] == std::vector<unsigned>({1, 0, 1}));
    CHECK(rm_monoms[6] == std::vector<unsigned>({0, 1, 1}));
}

TEST_CASE("random instances are reproducible and valid") {
    const PrimeField f5(5);
    const MaxLinsatInstance a = random_instance(f5, 6, 3, 2, 99);
    const MaxLinsatInstance b = random_instance(f5, 6, 3, 2, 99);
    CHECK(a.constraint_matrix == b.constraint_matrix);
    CHECK(a.targets == b.targets);
    CHECK(instance_to_json(a) == instance_to_json(b));

    const MaxLinsatInstance xs = random_instance(PrimeField(2), 5, 3, 1, 7);
    CHECK(xs.kind == InstanceKind::xorsat);
    for (const auto& t : xs.targets) CHECK(t.size() == 1);

    CHECK(rank(a.constraint_matrix) == 3);
    CHECK_THROWS_AS(random_instance(f5, 4, 2, 0, 1), BadDimension);
    CHECK_THROWS_AS(random_instance(f5, 4, 2, 5, 1), BadDimension);
}

TEST_CASE("mean objective of random assignments approaches m(2r/p - 1)") {
    const PrimeField f5(5);
    const MaxLinsatInstance inst = random_instance(f5, 8, 3, 2, 1234);
    SplitMix64 rng(4321);
    const int samples = 40000;
    double sum = 0;
    for (int s = 0; s < samples; ++s) {
        Assignment x{rng.below(5), rng.below(5), rng.below(5)};
        sum += objective(inst, x);
    }
    const double mean = sum / samples;
    const double expect = 8.0 * (2.0 * 2.0 / 5.0 - 1.0);
    CHECK(std::abs(mean - expect) < 0.15);  // ~6 sigma at this sample count
}

TEST_CASE("parity-form objective matches the generic path bit for bit") {
    const PrimeField f2(2);
    SplitMix64 rng(47);
    for (int trial = 0; trial < 30; ++trial) {
        const MaxLinsatInstance inst = random_instance(f2, 6, 3, 1, rng.next());
        for (std::uint64_t bits = 0; bits < 8; ++bits) {
            Assignment x{(bits >> 2) & 1, (bits >> 1) & 1, bits & 1};
            int parity_form = 0;
            for (std::size_t i = 0; i < inst.m(); ++i) {
                const fp_t lhs = dot(inst.constraint_matrix.row(i), x, f2);
                const fp_t v = inst.targets[i][0];
                parity_form += ((lhs + v) % 2 == 0) ? 1 : -1;
            }
            CHECK(parity_form == objective(inst, x));
        }
    }
}

TEST_CASE("the worked instance has no perfect polynomial") {
    const MaxLinsatInstance inst = example_opi_instance();
    const SolveReport best = exhaustive_optimum(inst);
    CHECK(best.best_satisfied == 5);
    CHECK(count_satisfied(inst, {1, 5, 5}) == best.best_satisfied);
}

TEST_CASE("target validation") {
    const PrimeField f5(5);
    const FpMatrix b = FpMatrix::from_rows({{1, 2}}, f5);
    CHECK_THROWS_AS(make_instance(f5, b, {{}}, InstanceKind::generic), BadDimension);
    CHECK_THROWS_AS(make_instance(f5, b, {{0, 1, 2, 3, 4}}, InstanceKind::generic), BadDimension);
    CHECK_THROWS_AS(make_instance(f5, b, {{2, 1}}, InstanceKind::generic), BadDimension);
    CHECK_THROWS_AS(make_instance(f5, b, {{1, 1}}, InstanceKind::generic), BadDimension);
    CHECK_THROWS_AS(make_instance(f5, b, {{1, 7}}, InstanceKind::generic), DomainError);
    CHECK_THROWS_AS(make_instance(PrimeField(5), b, {{1}, {2}}, InstanceKind::generic), DimensionMismatch);

    // xorsat invariants
    CHECK_THROWS_AS(
        make_instance(f5, b, {{1}}, InstanceKind::xorsat), BadDimension);
    const PrimeField f2(2);
    const FpMatrix b2 = FpMatrix::from_rows({{1, 1}}, f2);
    CHECK_THROWS_AS(make_instance(f2, b2, {{0, 1}}, InstanceKind::xorsat), BadDimension);
}

TEST_CASE("serialization round-trips byte for byte") {
    const std::filesystem::path dir = std::filesystem::temp_directory_path() / "dqilab-problems-test";
    std::filesystem::create_directories(dir);

    for (const MaxLinsatInstance& inst :
         {example_opi_instance(), example_mopi_instance(), random_instance(PrimeField(3), 5, 2, 2, 5)}) {
        const std::string once = instance_to_json(inst);
        const MaxLinsatInstance reloaded = instance_from_json(once);
        CHECK(instance_to_json(reloaded) == once);
        CHECK(reloaded.constraint_matrix == inst.constraint_matrix);
        CHECK(reloaded.targets == inst.targets);
        CHECK(reloaded.kind == inst.kind);

        const auto path = (dir / "inst.json").string();
        save_instance(inst, path);
        CHECK(instance_to_json(load_instance(path)) == once);
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("loading rejects a tampered kind-specific matrix") {
    auto j = nlohmann::json::parse(instance_to_json(example_opi_instance()));
    j["B"][0][0] = 2;  // no longer the Vandermonde row for point 1
    CHECK_THROWS_AS(instance_from_json(j.dump()), DomainError);
}
