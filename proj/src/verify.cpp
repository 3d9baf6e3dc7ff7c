#include "dqilab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "dqilab/classical.hpp"
#include "dqilab/codes.hpp"
#include "dqilab/dqi.hpp"
#include "dqilab/rng.hpp"

namespace dqilab {

namespace {

void record(SuiteResult& result, bool ok, const std::string& message) {
    ++result.cases;
    if (!ok) {
        ++result.failures;
        if (result.messages.size() < 8) result.messages.push_back(message);
    }
}

bool same_rowspace(const FpMatrix& a, const FpMatrix& b) {
    FpMatrix ra = a, rb = b;
    const std::size_t ka = rref(ra).size(), kb = rref(rb).size();
    if (ka != kb || a.cols() != b.cols()) return false;
    for (std::size_t i = 0; i < ka; ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (ra.at(i, j) != rb.at(i, j)) return false;
        }
    }
    return true;
}

std::vector<std::vector<fp_t>> random_targets(SplitMix64& rng, fp_t p, std::size_t m, std::size_t r) {
    std::vector<std::vector<fp_t>> targets(m);
    for (auto& t : targets) {
        std::vector<fp_t> pool(p);
        for (fp_t v = 0; v < p; ++v) pool[v] = v;
        for (std::size_t i = 0; i < r; ++i) {
            std::swap(pool[i], pool[i + rng.below(p - i)]);
        }
        t.assign(pool.begin(), pool.begin() + r);
        std::sort(t.begin(), t.end());
    }
    return targets;
}

// instance whose syndrome kernel {y : B^T y = 0} is the row space of the
// given generator; targets drawn with constant size r
MaxLinsatInstance instance_with_kernel(const FpMatrix& kernel_generator, std::size_t r, SplitMix64& rng) {
    const PrimeField field = kernel_generator.field();
    FpMatrix bt = nullspace_basis(kernel_generator);  // (m - k0) x m
    FpMatrix b = bt.transposed();
    auto targets = random_targets(rng, field.p(), b.rows(), r);
    return make_instance(field, std::move(b), std::move(targets),
                         (field.p() == 2 && r == 1) ? InstanceKind::xorsat : InstanceKind::generic);
}

MaxLinsatInstance small_random_instance(SplitMix64& rng, std::vector<fp_t> primes = {2, 3, 5}) {
    const fp_t p = primes[rng.below(primes.size())];
    const PrimeField field(p);
    const std::size_t m = 2 + rng.below(4);   // 2..5
    const std::size_t n = 1 + rng.below(3);   // 1..3
    const std::size_t r = 1 + rng.below(p - 1);
    return random_instance(field, m, n, r, rng.next());
}

WeightVector random_unit_weights(SplitMix64& rng, int ell) {
    std::vector<cd> w(ell + 1);
    for (cd& v : w) v = cd(rng.uniform01() * 2 - 1, rng.uniform01() * 2 - 1);
    return normalized_weights(std::move(w));
}

SuiteResult suite_fixtures() {
    SuiteResult result;
    result.name = "fixtures";

    {  // arithmetic in F_5
        const PrimeField f5(5);
        record(result, f5.add(3, 4) == 2, "F5 addition 3+4");
        record(result, f5.mul(3, 4) == 2, "F5 multiplication 3*4");
        record(result, f5.inv(2) == 3, "F5 inverse of 2");
        record(result, is_primitive(2, f5), "2 generates F5^x");
        record(result, !is_primitive(4, f5), "4 generates only {4,1}");
        const std::vector<std::int64_t> coeffs{10, -4, 12, -7};
        const FpPoly q = poly_reduce(coeffs, f5);
        record(result, q.coeffs == std::vector<fp_t>({0, 1, 2, 3}), "coefficient-wise reduction mod 5");
    }

    {  // degree-2 polynomial fit over F_7
        const MaxLinsatInstance inst = example_opi_instance();
        const std::vector<std::vector<fp_t>> expect_b = {{1, 1, 1}, {1, 2, 4}, {1, 3, 2},
                                                         {1, 4, 2}, {1, 5, 4}, {1, 6, 1}};
        record(result, inst.constraint_matrix == FpMatrix::from_rows(expect_b, inst.field),
               "Vandermonde rows over F7");
        const Assignment x{4, 1, 2};
        const std::vector<int> expect_f{1, -1, -1, -1, -1, 1};
        bool fvals = true;
        for (std::size_t i = 0; i < 6; ++i) fvals = fvals && constraint_value(inst, i, x) == expect_f[i];
        record(result, fvals, "per-constraint signs for coefficients (4,1,2)");
        record(result, objective(inst, x) == -2, "objective (4,1,2) = -2");
        record(result, count_satisfied(inst, x) == 2, "two satisfied for (4,1,2)");
        record(result, objective(inst, {1, 5, 5}) == 4, "objective (1,5,5) = 4");
        record(result, count_satisfied(inst, {1, 5, 5}) == 5, "five satisfied for (1,5,5)");
        const SolveReport best = exhaustive_optimum(inst);
        record(result, best.best_satisfied == 5, "global optimum satisfies 5 of 6");
    }

    {  // RS[7,3] over F_7
        const PrimeField f7(7);
        const std::vector<fp_t> points{1, 2, 3, 4, 5, 6, 0};
        const LinearCode rs = rs_code(points, 3, f7);
        const std::vector<fp_t> ones(7, 1);
        record(result, std::vector<fp_t>(rs.generator().row(0).begin(), rs.generator().row(0).end()) == ones,
               "first generator row all ones");
        record(result, rs.encode(std::vector<fp_t>{3, 5, 1}) == std::vector<fp_t>({2, 3, 6, 4, 4, 6, 3}),
               "RS[7,3] codeword for message (3,5,1)");
        record(result, rs.min_distance() == 5, "RS[7,3] minimum distance 5");
    }

    {  // RM(1,3)
        const LinearCode rm = rm_code(1, 3);
        const std::vector<std::vector<fp_t>> expect_g = {{1, 1, 1, 1, 1, 1, 1, 1},
                                                         {0, 0, 0, 0, 1, 1, 1, 1},
                                                         {0, 0, 1, 1, 0, 0, 1, 1},
                                                         {0, 1, 0, 1, 0, 1, 0, 1}};
        record(result, rm.generator() == FpMatrix::from_rows(expect_g, rm.field()), "RM(1,3) generator layout");
        record(result, rm.encode(std::vector<fp_t>{1, 0, 1, 1}) == std::vector<fp_t>({1, 0, 0, 1, 1, 0, 0, 1}),
               "RM(1,3) codeword for message (1,0,1,1)");
        record(result, rm.min_distance() == 4, "RM(1,3) minimum distance 4");

        const std::vector<fp_t> noisy{0, 1, 1, 1, 0, 1, 0, 1};
        const DecodeResult dec = nearest_codeword(noisy, rm);
        record(result, dec.codeword == std::vector<fp_t>({0, 1, 0, 1, 0, 1, 0, 1}) && dec.unique,
               "noisy word decodes to 01010101");
    }

    {  // bivariate fit over F_5
        const MaxLinsatInstance inst = example_mopi_instance();
        const Assignment q{0, 1, 1};  // Q(x, y) = x + y
        record(result, objective(inst, q) == -5, "bivariate objective -5");
        record(result, count_satisfied(inst, q) == 10, "10 of 25 satisfied");
        bool pattern = true;
        for (std::size_t i = 0; i < inst.m(); ++i) {
            const fp_t x = i % 5;
            const bool sat = constraint_value(inst, i, q) == 1;
            pattern = pattern && (sat == (x == 0 || x == 4));
        }
        record(result, pattern, "satisfied exactly on the x=0 and x=4 columns");
    }

    {  // dual pair over F_5^4
        const LinearCode code = example_dual_pair_code();
        const LinearCode dual = dual_code(code);
        const PrimeField f5(5);
        const FpMatrix claimed = FpMatrix::from_rows({{4, 4, 1, 0}, {4, 3, 0, 1}}, f5);
        record(result, same_rowspace(dual.generator(), claimed), "claimed dual basis spans the kernel");
        const FpMatrix product = mat_mul(code.generator(), claimed.transposed());
        bool zero = true;
        for (std::size_t i = 0; i < product.rows(); ++i) {
            for (std::size_t j = 0; j < product.cols(); ++j) zero = zero && product.at(i, j) == 0;
        }
        record(result, zero, "G1 G2^T vanishes over F5");
        record(result, code.k() + dual.k() == code.n(), "rank accounting |C| |Cperp| = p^n");
        const PoissonCheckResult pc = poisson_check(code);
        record(result, pc.l2_error < 1e-10, "transform of the code state lands on the dual");
    }

    return result;
}

SuiteResult suite_field_axioms(std::uint64_t seed, int cases) {
    SuiteResult result;
    result.name = "field-axioms";
    SplitMix64 rng(seed ^ 0xA11CE5ULL);
    const std::vector<fp_t> primes{2, 3, 5, 7, 11, 13};
    for (int c = 0; c < cases; ++c) {
        const PrimeField f(primes[rng.below(primes.size())]);
        const fp_t a = rng.below(f.p()), b = rng.below(f.p()), d = rng.below(f.p());
        bool ok = f.add(f.add(a, b), d) == f.add(a, f.add(b, d));
        ok = ok && f.mul(f.mul(a, b), d) == f.mul(a, f.mul(b, d));
        ok = ok && f.add(a, b) == f.add(b, a) && f.mul(a, b) == f.mul(b, a);
        ok = ok && f.mul(a, f.add(b, d)) == f.add(f.mul(a, b), f.mul(a, d));
        ok = ok && f.add(a, f.neg(a)) == 0;
        if (a != 0) {
            ok = ok && f.mul(a, f.inv(a)) == 1 && f.inv(f.inv(a)) == a;
        }
        record(result, ok, "field axiom violation at p=" + std::to_string(f.p()));
    }
    return result;
}

SuiteResult suite_linearity(std::uint64_t seed, int cases) {
    SuiteResult result;
    result.name = "linearity";
    SplitMix64 rng(seed ^ 0x11EA21ULL);
    const std::vector<fp_t> primes{2, 3, 5};
    for (int c = 0; c < cases; ++c) {
        const PrimeField f(primes[rng.below(primes.size())]);
        const std::size_t n = 2 + rng.below(6);
        const std::size_t k = 1 + rng.below(std::min<std::size_t>(n, 4));
        FpMatrix g(k, n, f);
        for (int attempt = 0;; ++attempt) {
            for (std::size_t i = 0; i < k; ++i) {
                for (std::size_t j = 0; j < n; ++j) g.set(i, j, rng.below(f.p()));
            }
            if (rank(g) == k) break;
            if (attempt > 100) break;
        }
        if (rank(g) != k) {
            record(result, false, "failed to sample a full-rank generator");
            continue;
        }
        const LinearCode code = LinearCode::from_generator(g);

        std::vector<fp_t> m1(k), m2(k);
        for (auto& v : m1) v = rng.below(f.p());
        for (auto& v : m2) v = rng.below(f.p());
        const fp_t a = rng.below(f.p()), b = rng.below(f.p());

        std::vector<fp_t> combo(k);
        for (std::size_t i = 0; i < k; ++i) combo[i] = f.add(f.mul(a, m1[i]), f.mul(b, m2[i]));
        const std::vector<fp_t> lhs = code.encode(combo);
        const std::vector<fp_t> e1 = code.encode(m1), e2 = code.encode(m2);
        bool ok = true;
        for (std::size_t j = 0; j < n; ++j) {
            ok = ok && lhs[j] == f.add(f.mul(a, e1[j]), f.mul(b, e2[j]));
        }
        ok = ok && code.contains(lhs);
        record(result, ok, "encode is not linear at p=" + std::to_string(f.p()));
    }
    return result;
}

SuiteResult suite_normalization(std::uint64_t seed, int cases) {
    SuiteResult result;
    result.name = "normalization";
    SplitMix64 rng(seed ^ 0x09A7ULL);
    for (int c = 0; c < cases; ++c) {
        const MaxLinsatInstance inst = small_random_instance(rng);
        const int ell = std::min(default_ell(inst), 3);
        const WeightVector w = random_unit_weights(rng, ell);
        try {
            const StateVector st = build_dqi_direct(inst, w);
            record(result, std::abs(st.norm() - 1.0) < 1e-10, "state norm drifted beyond 1e-10");
        } catch (const Error& e) {
            record(result, false, std::string("state construction failed: ") + e.what());
        }
    }
    return result;
}

SuiteResult suite_weight_preservation(std::uint64_t seed, int cases) {
    SuiteResult result;
    result.name = "weight-preservation";
    SplitMix64 rng(seed ^ 0x8413ULL);
    for (int c = 0; c < cases; ++c) {
        const MaxLinsatInstance inst = small_random_instance(rng);
        const int ell = std::min(default_ell(inst), 3);
        const WeightVector w = random_unit_weights(rng, ell);
        try {
            const PipelineResult run = pipeline_run(inst, w);
            const std::vector<double> before = run.snapshots[3].e_weight_histogram();
            const std::vector<double> after = run.snapshots[4].e_weight_histogram();
            double diff = 0;
            for (std::size_t i = 0; i < before.size(); ++i) diff = std::max(diff, std::abs(before[i] - after[i]));
            record(result, diff < 1e-10, "nonzero-count histogram changed across the constraint transform");
        } catch (const Error& e) {
            record(result, false, std::string("pipeline failed: ") + e.what());
        }
    }
    return result;
}

SuiteResult suite_disentanglement(std::uint64_t seed, int cases) {
    SuiteResult result;
    result.name = "disentanglement";
    SplitMix64 rng(seed ^ 0xD15EULL);
    for (int c = 0; c < cases; ++c) {
        const MaxLinsatInstance inst = small_random_instance(rng);
        const int ell = std::min(default_ell(inst), 3);
        const WeightVector w = random_unit_weights(rng, ell);
        try {
            const PipelineResult run = pipeline_run(inst, w);
            bool ok = run.snapshots[3].w_excited_mass() < 1e-20;
            ok = ok && run.snapshots[6].e_nonzero_mass() < 1e-20;
            record(result, ok, "register kept residual amplitude after its uncomputation");
        } catch (const Error& e) {
            record(result, false, std::string("pipeline failed: ") + e.what());
        }
    }
    return result;
}

SuiteResult suite_qft_roundtrip(std::uint64_t seed, int cases) {
    SuiteResult result;
    result.name = "qft-roundtrip";
    SplitMix64 rng(seed ^ 0x0F7ULL);
    const std::vector<fp_t> primes{2, 3, 5, 7};
    for (int c = 0; c < cases; ++c) {
        const PrimeField f(primes[rng.below(primes.size())]);
        const std::size_t sites = 1 + rng.below(3);
        StateVector st{f, sites, {}};
        const std::uint64_t total = state_size(f.p(), sites);
        st.amplitudes.resize(total);
        for (cd& a : st.amplitudes) a = cd(rng.uniform01() * 2 - 1, rng.uniform01() * 2 - 1);
        double nrm = 0;
        for (const cd& a : st.amplitudes) nrm += std::norm(a);
        for (cd& a : st.amplitudes) a /= std::sqrt(nrm);

        const StateVector round = qft_state(qft_state(st, FourierDirection::forward), FourierDirection::inverse);
        long double err = 0;
        for (std::size_t i = 0; i < total; ++i) err += std::norm(round.amplitudes[i] - st.amplitudes[i]);
        record(result, std::sqrt(static_cast<double>(err)) < 1e-12, "transform round trip drifted");
    }
    return result;
}

SuiteResult suite_poisson(std::uint64_t seed, int cases) {
    SuiteResult result;
    result.name = "poisson";
    {
        const PoissonCheckResult pc = poisson_check(example_dual_pair_code());
        record(result, pc.l2_error < 1e-10, "dual-pair fixture");
    }
    SplitMix64 rng(seed ^ 0x90155ULL);
    const std::vector<fp_t> primes{2, 3, 5};
    const int random_cases = std::min(cases, 60);
    for (int c = 0; c < random_cases; ++c) {
        const PrimeField f(primes[c % primes.size()]);
        const std::size_t n = 2 + rng.below(5);  // 2..6
        const std::size_t k = 1 + rng.below(n);
        FpMatrix g(k, n, f);
        for (int attempt = 0;; ++attempt) {
            for (std::size_t i = 0; i < k; ++i) {
                for (std::size_t j = 0; j < n; ++j) g.set(i, j, rng.below(f.p()));
            }
            if (rank(g) == k || attempt > 100) break;
        }
        if (rank(g) != k) {
            record(result, false, "failed to sample a full-rank generator");
            continue;
        }
        const PoissonCheckResult pc = poisson_check(LinearCode::from_generator(g));
        record(result, pc.l2_error < 1e-10,
               "duality failed at p=" + std::to_string(f.p()) + " n=" + std::to_string(n));
    }
    return result;
}

SuiteResult suite_twopath() {
    SuiteResult result;
    result.name = "twopath";
    for (const TwoPathCase& tc : twopath_matrix()) {
        try {
            const WeightOptimum opt = optimize_weights(tc.inst, tc.ell);
            std::vector<WeightVector> choices{opt.weights};
            if (tc.ell >= 1) {
                choices.push_back(normalized_weights(std::vector<cd>(tc.ell + 1, cd(1.0, 0.0))));
            }
            for (const WeightVector& w : choices) {
                const StateVector direct = build_dqi_direct(tc.inst, w);
                const StateVector piped = pipeline_run(tc.inst, w).final_state;

                StateVector combo{tc.inst.field, tc.inst.n(), std::vector<cd>(direct.amplitudes.size(), 0.0)};
                for (int k = 0; k <= tc.ell; ++k) {
                    const std::vector<double> pk = pk_amplitudes_raw(tc.inst, k);
                    for (std::size_t x = 0; x < pk.size(); ++x) combo.amplitudes[x] += w.w[k] * pk[x];
                }

                const double d1 = aligned_l2_distance(piped, direct);
                const double d2 = aligned_l2_distance(direct, combo);
                record(result, d1 < 1e-8 && d2 < 1e-8,
                       tc.label + ": paths disagree (pipeline " + std::to_string(d1) + ", symmetric " +
                           std::to_string(d2) + ")");
            }
        } catch (const Error& e) {
            record(result, false, tc.label + ": " + e.what());
        }
    }
    return result;
}

SuiteResult suite_orthonormality() {
    SuiteResult result;
    result.name = "orthonormality";
    SplitMix64 rng(0xC0DEULL);
    const PrimeField f7(7), f11(11);

    struct ValidCase {
        MaxLinsatInstance inst;
        int ell;
        std::string label;
    };
    std::vector<ValidCase> valid;
    valid.push_back({random_opi(f7, 3, 2, 21), 1, "degree-2 fit over F7, radius 1"});
    valid.push_back({random_opi(f7, 4, 3, 22), 2, "degree-3 fit over F7, radius 2"});
    valid.push_back({random_opi(f11, 5, 5, 23), 2, "degree-4 fit over F11, radius 2"});

    for (const ValidCase& vc : valid) {
        const auto gram = pk_gram(vc.inst, vc.ell);
        double dev = 0;
        for (int a = 0; a <= vc.ell; ++a) {
            for (int b = 0; b <= vc.ell; ++b) {
                dev = std::max(dev, std::abs(gram[a][b] - (a == b ? 1.0 : 0.0)));
            }
        }
        record(result, dev < 1e-8, vc.label + ": Gram deviation " + std::to_string(dev));
    }

    {
        // radius 2 against a kernel of distance 3: the basis must degrade detectably
        const MaxLinsatInstance violating = random_opi(f7, 2, 2, 24);
        const auto gram = pk_gram(violating, 2);
        double dev = 0;
        for (int a = 0; a <= 2; ++a) {
            for (int b = 0; b <= 2; ++b) {
                dev = std::max(dev, std::abs(gram[a][b] - (a == b ? 1.0 : 0.0)));
            }
        }
        bool threw = false;
        try {
            (void)build_pk_state(violating, 2);
        } catch (const NormalizationFailure&) {
            threw = true;
        }
        record(result, dev > 1e-4 || threw, "collision instance failed to degrade");
        (void)rng;
    }
    return result;
}

}  // namespace

MaxLinsatInstance example_opi_instance() {
    const PrimeField f7(7);
    return build_opi(f7, 3, {1, 2, 3, 4, 5, 6},
                     {{0, 1}, {3, 6}, {2, 5}, {3, 6}, {4, 5}, {1, 5}});
}

MaxLinsatInstance example_mopi_instance() {
    const PrimeField f5(5);
    std::vector<std::vector<fp_t>> targets;
    targets.reserve(25);
    for (fp_t y = 0; y < 5; ++y) {
        for (fp_t x = 0; x < 5; ++x) {
            // first variable varies fastest, matching mopi_points
            const fp_t s = f5.add(f5.add(f5.pow(x, 2), f5.pow(x, 3)), f5.pow(x, 4));
            const fp_t v1 = f5.add(f5.mul(3, s), y);
            const fp_t v2 = f5.add(v1, 1);
            std::vector<fp_t> t{v1, v2};
            std::sort(t.begin(), t.end());
            targets.push_back(std::move(t));
        }
    }
    // targets above iterate y outer / x inner: reorder to point order (x fastest)
    std::vector<std::vector<fp_t>> ordered(25);
    for (fp_t y = 0; y < 5; ++y) {
        for (fp_t x = 0; x < 5; ++x) ordered[y * 5 + x] = targets[y * 5 + x];
    }
    return build_mopi(f5, 2, 1, std::move(ordered));
}

LinearCode example_dual_pair_code() {
    const PrimeField f5(5);
    return LinearCode::from_generator(FpMatrix::from_rows({{1, 0, 1, 1}, {0, 1, 1, 2}}, f5));
}

std::vector<TwoPathCase> twopath_matrix() {
    std::vector<TwoPathCase> cases;
    SplitMix64 rng(0x7707A7ULL);

    const PrimeField f2(2), f3(3), f5(5), f7(7);

    // p=2: radius grows with structured kernels
    cases.push_back({random_instance(f2, 4, 2, 1, 101), 1, "p2 m4 n2 random"});
    cases.push_back({random_instance(f2, 6, 3, 1, 114), 1, "p2 m6 n3 random"});
    cases.push_back({random_instance(f2, 10, 6, 1, 101), 1, "p2 m10 n6 random"});
    {
        const FpMatrix repetition = FpMatrix::from_rows({{1, 1, 1, 1, 1, 1, 1}}, f2);
        cases.push_back({instance_with_kernel(repetition, 1, rng), 3, "p2 m7 n6 repetition kernel"});
    }
    {
        const FpMatrix two_block =
            FpMatrix::from_rows({{1, 1, 1, 1, 1, 0, 0, 0}, {0, 0, 0, 1, 1, 1, 1, 1}}, f2);
        cases.push_back({instance_with_kernel(two_block, 1, rng), 2, "p2 m8 n6 distance-5 kernel"});
    }
    {
        const LinearCode rm = rm_code(1, 3);
        cases.push_back({instance_with_kernel(rm.generator(), 1, rng), 1, "p2 m8 n4 RM(1,3) kernel"});
    }

    // odd characteristics: the kernel distance caps the radius at 1 for n <= 3
    {
        const FpMatrix hamming = FpMatrix::from_rows({{1, 0, 1, 2}, {0, 1, 1, 1}}, f3);
        cases.push_back({instance_with_kernel(hamming, 2, rng), 1, "p3 m4 n2 distance-3 kernel"});
    }
    cases.push_back({random_instance(f3, 6, 3, 2, 101), 1, "p3 m6 n3 random"});
    cases.push_back({random_opi(f5, 2, 2, 105), 1, "p5 m4 n2 polynomial fit"});
    cases.push_back({random_instance(f5, 5, 3, 3, 100), 1, "p5 m5 n3 random"});
    cases.push_back({example_opi_instance(), 1, "p7 m6 n3 worked example"});
    cases.push_back({random_opi(f7, 2, 3, 107), 1, "p7 m6 n2 polynomial fit"});

    // clamp each requested radius to the decodable bound
    for (TwoPathCase& tc : cases) {
        const int cap = default_ell(tc.inst);
        tc.ell = std::min(tc.ell, cap);
    }
    return cases;
}

std::vector<std::string> suite_names() {
    return {"fixtures",       "field-axioms", "linearity", "normalization", "weight-preservation",
            "disentanglement", "qft-roundtrip", "poisson",  "twopath",       "orthonormality"};
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed, int cases) {
    if (name == "fixtures") return suite_fixtures();
    if (name == "field-axioms") return suite_field_axioms(seed, cases);
    if (name == "linearity") return suite_linearity(seed, cases);
    if (name == "normalization") return suite_normalization(seed, cases);
    if (name == "weight-preservation") return suite_weight_preservation(seed, cases);
    if (name == "disentanglement") return suite_disentanglement(seed, cases);
    if (name == "qft-roundtrip") return suite_qft_roundtrip(seed, cases);
    if (name == "poisson") return suite_poisson(seed, cases);
    if (name == "twopath") return suite_twopath();
    if (name == "orthonormality") return suite_orthonormality();
    throw DomainError("unknown suite: " + name);
}

std::vector<SuiteResult> run_suites(const std::vector<std::string>& filter, std::uint64_t seed, int cases) {
    std::vector<std::string> names = filter.empty() ? suite_names() : filter;
    std::vector<SuiteResult> out;
    out.reserve(names.size());
    for (const std::string& name : names) out.push_back(run_suite(name, seed, cases));
    return out;
}

}  // namespace dqilab
