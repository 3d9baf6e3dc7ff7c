#ifndef DQILAB_PROBLEMS_HPP
#define DQILAB_PROBLEMS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dqilab/gf.hpp"

namespace dqilab {

enum class InstanceKind { generic, xorsat, opi, mopi };

std::string kind_name(InstanceKind kind);
InstanceKind kind_from_name(const std::string& name);

using Assignment = std::vector<fp_t>;

// m linear constraints b_i . x in T_i over F_p^n. Target sets are kept
// sorted; every T_i is nonempty and a strict subset of the field.
struct MaxLinsatInstance {
    PrimeField field;
    FpMatrix constraint_matrix;                // m x n
    std::vector<std::vector<fp_t>> targets;    // one sorted set per constraint
    InstanceKind kind = InstanceKind::generic;
    std::vector<fp_t> points;                  // opi evaluation points (empty otherwise)
    std::size_t mopi_vars = 0;                 // mopi only
    std::size_t mopi_degree = 0;               // mopi only
    std::optional<std::uint64_t> seed;

    std::size_t m() const { return constraint_matrix.rows(); }
    std::size_t n() const { return constraint_matrix.cols(); }

    bool constant_r() const;
    // common target-set size; throws RaggedTargets when sizes vary
    std::size_t r() const;
};

MaxLinsatInstance make_instance(const PrimeField& field, FpMatrix constraint_matrix,
                                std::vector<std::vector<fp_t>> targets,
                                InstanceKind kind = InstanceKind::generic);

bool target_contains(const std::vector<fp_t>& target, fp_t value);

// +1 when b_i . x lands in T_i, else -1
int constraint_value(const MaxLinsatInstance& inst, std::size_t i, const Assignment& x);

// #SAT - #UNSAT, in [-m, m]
int objective(const MaxLinsatInstance& inst, const Assignment& x);

int count_satisfied(const MaxLinsatInstance& inst, const Assignment& x);

// Vandermonde instance: row i holds points[i]^0 .. points[i]^(n-1), so
// b_i . x evaluates the degree-(n-1) polynomial with coefficients x at points[i].
MaxLinsatInstance build_opi(const PrimeField& field, std::size_t n, std::vector<fp_t> eval_points,
                            std::vector<std::vector<fp_t>> targets);

// Multivariate instance: one constraint per point of F_p^vars (first variable
// fastest), one column per monomial of total degree <= degree.
MaxLinsatInstance build_mopi(const PrimeField& field, std::size_t vars, std::size_t degree,
                             std::vector<std::vector<fp_t>> targets);

// monomial exponent tuples for build_mopi, ascending total degree then
// descending exponent order
std::vector<std::vector<unsigned>> mopi_monomials(std::size_t vars, std::size_t degree, fp_t p);
std::vector<std::vector<fp_t>> mopi_points(std::size_t vars, fp_t p);

// Uniform random instance, reproducible from the seed. Rejects all-zero rows
// and, when n <= m, rank-deficient matrices. Tagged xorsat when p=2, r=1.
MaxLinsatInstance random_instance(const PrimeField& field, std::size_t m, std::size_t n, std::size_t r,
                                  std::uint64_t seed);

// OPI with points 1..p-1 (m = p-1) and random r-element targets
MaxLinsatInstance random_opi(const PrimeField& field, std::size_t n, std::size_t r, std::uint64_t seed);

MaxLinsatInstance random_mopi(const PrimeField& field, std::size_t vars, std::size_t degree, std::size_t r,
                              std::uint64_t seed);

std::string instance_to_json(const MaxLinsatInstance& inst);
MaxLinsatInstance instance_from_json(const std::string& text);
void save_instance(const MaxLinsatInstance& inst, const std::string& path);
MaxLinsatInstance load_instance(const std::string& path);

}  // namespace dqilab

#endif
