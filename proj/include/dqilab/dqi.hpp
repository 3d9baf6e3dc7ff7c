#ifndef DQILAB_DQI_HPP
#define DQILAB_DQI_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dqilab/codes.hpp"
#include "dqilab/problems.hpp"

namespace dqilab {

using cd = std::complex<double>;

// size guards for exact state enumeration
inline constexpr std::uint64_t kStateGuard = std::uint64_t{1} << 24;    // solution register
inline constexpr std::uint64_t kErrorRegGuard = std::uint64_t{1} << 22; // error register / Poisson check

// p^sites with an explicit cap; throws TooLarge beyond it
std::uint64_t state_size(fp_t p, std::size_t sites, std::uint64_t cap = kStateGuard);

// base-p digit conventions: most significant site first
std::uint64_t index_of(std::span<const fp_t> digits, fp_t p);
std::vector<fp_t> digits_of(std::uint64_t index, std::size_t sites, fp_t p);
int index_weight(std::uint64_t index, std::size_t sites, fp_t p);

// Exact amplitude array over F_p^sites, unit norm after every published operation.
struct StateVector {
    PrimeField field;
    std::size_t sites = 0;
    std::vector<cd> amplitudes;

    double norm() const;
};

StateVector uniform_state(const PrimeField& field, std::size_t sites);

// uniform superposition of the binary strings of Hamming weight k, embedded in F_p^m
StateVector dicke_state(const PrimeField& field, std::size_t m, std::size_t k);

// ell+1 amplifying-polynomial weights with sum_k |w_k|^2 = 1
struct WeightVector {
    std::vector<cd> w;

    int ell() const { return static_cast<int>(w.size()) - 1; }
};

// validates the unit-norm invariant (1e-10)
WeightVector make_weights(std::vector<cd> w);
// rescales to unit norm first
WeightVector normalized_weights(std::vector<cd> w);

struct Normalizers {
    double fbar;  // mean of f_i over the field: (2r - p)/p
    double phi;   // sqrt(4r(1 - r/p))
};

Normalizers normalizers(const PrimeField& field, std::size_t r);

// shifted, rescaled constraint indicator and its transform; sum_x g^2 = sum_y |g~|^2 = 1
double g_fun(const MaxLinsatInstance& inst, std::size_t i, fp_t x);
cd g_tilde(const MaxLinsatInstance& inst, std::size_t i, fp_t y);

// Amplitude sum over all error patterns of weight <= ell, no norm check;
// weights need not be unit-norm. Building block for the checked operations
// and for ray-level comparisons past the injectivity bound.
std::vector<cd> dqi_amplitudes_raw(const MaxLinsatInstance& inst, std::span<const cd> weights);

// DQI state over the solution register; throws NormalizationFailure when the
// computed norm strays beyond 1e-6 from unity (error-pattern collision).
StateVector build_dqi_direct(const MaxLinsatInstance& inst, const WeightVector& weights);

// degree-k elementary-symmetric amplitudes with closed-form normalizer, unchecked
std::vector<double> pk_amplitudes_raw(const MaxLinsatInstance& inst, std::size_t k);

StateVector build_pk_state(const MaxLinsatInstance& inst, std::size_t k);

// pairwise inner products of the raw symmetric-polynomial states, k <= ell
std::vector<std::vector<double>> pk_gram(const MaxLinsatInstance& inst, int ell);

// Register-level simulation through the seven preparation steps.
struct PipelineSnapshot {
    int stage = 0;
    fp_t p = 0;
    std::size_t w_levels = 0;  // weight-register levels while active, 0 after drop
    std::size_t e_sites = 0;
    std::size_t s_sites = 0;

    std::vector<cd> we;  // stages 0..4: joint W (x) E, W level major

    struct EsTerm {
        std::uint64_t e_index;
        std::uint64_t s_index;
        cd amp;
    };
    std::vector<EsTerm> es;  // stages 5..6

    std::vector<cd> s;  // stage 7

    double w_excited_mass() const;                // probability mass with W level != 0
    double e_nonzero_mass() const;                // stage 5/6 mass with E != 0...0
    std::vector<double> e_weight_histogram() const;  // stages 2..4: mass per nonzero-digit count
};

struct PipelineResult {
    StateVector final_state;
    std::vector<PipelineSnapshot> snapshots;  // stages 0..7
};

PipelineResult pipeline_run(const MaxLinsatInstance& inst, const WeightVector& weights);

// sum_x |amp(x)|^2 * count_satisfied, exact
double expected_satisfaction(const StateVector& state, const MaxLinsatInstance& inst);

struct WeightOptimum {
    WeightVector weights;
    double value;                            // expected satisfied constraints
    std::vector<std::vector<double>> overlap;  // M_jk = <P_j| S |P_k>
};

// principal eigenvector of the satisfaction overlap matrix over {|P^(k)>, k <= ell}
WeightOptimum optimize_weights(const MaxLinsatInstance& inst, int ell);

// closed-form optimal rate; exactly 1 once r/p >= 1 - ell/m
double semicircle(double ell_over_m, double r_over_p);

enum class FourierDirection { forward, inverse };

// site-wise transform, forward kernel exp(-2 pi i x y / p)
StateVector qft_state(const StateVector& state, FourierDirection direction);

struct PoissonCheckResult {
    StateVector lhs;  // F applied to the uniform codeword superposition
    StateVector rhs;  // uniform superposition over the dual code
    double l2_error;
};

PoissonCheckResult poisson_check(const LinearCode& code);

// l2 distance after aligning global phase at the largest-magnitude amplitude
double aligned_l2_distance(const StateVector& a, const StateVector& b);
double aligned_l2_distance(std::span<const cd> a, std::span<const cd> b);

// minimum weight of a nonzero y with B^T y = 0; m+1 when the kernel is trivial.
// Analytic for opi (n+1) and mopi (generalized Reed-Muller dual), brute force otherwise.
int kernel_distance(const MaxLinsatInstance& inst);

// minimum distance of the code spanned by the columns of B
int rowspace_distance(const MaxLinsatInstance& inst);

// min( floor((kernel_distance - 1)/2), m ); full range m when the kernel is trivial
int default_ell(const MaxLinsatInstance& inst);

// generalized Reed-Muller minimum distance for order nu in m variables over F_p
std::uint64_t grm_distance(fp_t p, std::size_t vars, std::size_t nu);

// xorsat-path conversions between amplifying-polynomial coefficient systems (p = 2)
std::vector<cd> u_from_alpha(std::span<const double> alpha, std::size_t m);
std::vector<cd> w_from_u(std::span<const cd> u, std::size_t m, std::size_t n);
std::vector<cd> u_from_w(std::span<const cd> w, std::size_t m, std::size_t n);

// measurement sampling; (state index, count) pairs sorted by index
std::vector<std::pair<std::uint64_t, std::uint64_t>> sample_state(const StateVector& state, std::size_t shots,
                                                                  std::uint64_t seed);

struct DqiReport {
    double expected_satisfied = 0.0;
    double semicircle_prediction = 0.0;  // m * semicircle(ell/m, r/p)
    int ell = 0;
    std::size_t m = 0;
    std::size_t n = 0;
    std::size_t r = 0;
    fp_t p = 0;
    bool exact = true;  // false when the closed form stands in for an infeasible simulation
    std::vector<double> weights;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> samples;
};

// Full DQI analysis of one instance: optimized weights and exact expectation
// where the state fits the guards, closed-form prediction otherwise.
DqiReport dqi_solve(const MaxLinsatInstance& inst, std::optional<int> ell_override = std::nullopt,
                    std::size_t shots = 0, std::uint64_t seed = 0);

}  // namespace dqilab

#endif
