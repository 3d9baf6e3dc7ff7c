#ifndef DQILAB_GF_HPP
#define DQILAB_GF_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dqilab/errors.hpp"

namespace dqilab {

using fp_t = std::uint64_t;

// Prime field F_p with elements stored as canonical representatives in [0, p-1].
// The modulus must be a prime below 2^31 so that products fit in 64 bits.
class PrimeField {
  public:
    explicit PrimeField(fp_t p);

    fp_t p() const { return p_; }

    fp_t add(fp_t a, fp_t b) const { return (a + b) % p_; }
    fp_t sub(fp_t a, fp_t b) const { return (a + p_ - b) % p_; }
    fp_t mul(fp_t a, fp_t b) const { return (a * b) % p_; }
    fp_t neg(fp_t a) const { return a == 0 ? 0 : p_ - a; }
    fp_t pow(fp_t base, std::uint64_t exp) const;
    fp_t inv(fp_t a) const;  // throws ZeroInverse for a = 0

    // canonical representative of an arbitrary integer
    fp_t reduce(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        if (r < 0) r += static_cast<std::int64_t>(p_);
        return static_cast<fp_t>(r);
    }

    bool operator==(const PrimeField&) const = default;

  private:
    fp_t p_;
};

// true iff the powers of g cover all of F_p^x
bool is_primitive(fp_t g, const PrimeField& field);

struct FpPoly {
    PrimeField field;
    std::vector<fp_t> coeffs;  // coeffs[j] multiplies x^j; zero leading coefficients allowed

    // highest nonzero index; -1 for the zero polynomial
    int degree() const;
};

FpPoly poly_reduce(std::span<const std::int64_t> int_coeffs, const PrimeField& field);
fp_t poly_eval(const FpPoly& poly, fp_t x);

// Dense row-major matrix over F_p. Dimensions are fixed at construction;
// entries are validated to lie in [0, p-1].
class FpMatrix {
  public:
    FpMatrix(std::size_t rows, std::size_t cols, const PrimeField& field);
    static FpMatrix from_rows(const std::vector<std::vector<fp_t>>& rows, const PrimeField& field);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const PrimeField& field() const { return field_; }

    fp_t at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, fp_t v);

    std::span<const fp_t> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    FpMatrix transposed() const;
    bool operator==(const FpMatrix&) const = default;

  private:
    std::size_t rows_, cols_;
    PrimeField field_;
    std::vector<fp_t> data_;
};

fp_t dot(std::span<const fp_t> a, std::span<const fp_t> b, const PrimeField& field);

// row vector times matrix: v (1 x rows) * M -> (1 x cols)
std::vector<fp_t> vec_mat(std::span<const fp_t> v, const FpMatrix& m);

FpMatrix mat_mul(const FpMatrix& a, const FpMatrix& b);

// Reduced row echelon form in place; returns the pivot column of each
// surviving row (zero rows sink to the bottom).
std::vector<std::size_t> rref(FpMatrix& m);

std::size_t rank(FpMatrix m);

// basis of {x : M x^T = 0}, one row per free column; (cols - rank) rows total
FpMatrix nullspace_basis(const FpMatrix& m);

// exact solution of a square system A x = b, empty if A is singular
std::optional<std::vector<fp_t>> solve_square(const FpMatrix& a, std::span<const fp_t> b);

}  // namespace dqilab

#endif
