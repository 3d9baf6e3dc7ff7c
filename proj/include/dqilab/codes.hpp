#ifndef DQILAB_CODES_HPP
#define DQILAB_CODES_HPP

#include <atomic>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "dqilab/gf.hpp"

namespace dqilab {

struct DecodeResult {
    std::vector<fp_t> error;
    std::vector<fp_t> codeword;
    bool unique = true;
};

// [n, k] linear block code over F_p, held as a full-rank generator G (k x n)
// together with a parity check H ((n-k) x n) satisfying G H^T = 0.
class LinearCode {
  public:
    static LinearCode from_generator(FpMatrix generator);
    static LinearCode from_parity_check(FpMatrix parity);

    const PrimeField& field() const { return generator_.field(); }
    std::size_t n() const { return generator_.cols(); }
    std::size_t k() const { return generator_.rows(); }
    const FpMatrix& generator() const { return generator_; }
    const FpMatrix& parity_check() const { return parity_; }

    std::vector<fp_t> encode(std::span<const fp_t> message) const;
    std::vector<fp_t> syndrome(std::span<const fp_t> word) const;
    bool contains(std::span<const fp_t> word) const;

    // brute-force minimum Hamming weight over nonzero codewords; cached.
    // Guarded by p^k <= 2^24.
    int min_distance() const;

  private:
    LinearCode(FpMatrix generator, FpMatrix parity);

    FpMatrix generator_;
    FpMatrix parity_;
    std::shared_ptr<std::atomic<int>> cached_distance_;  // -1 = unknown
};

// Reed-Solomon code from n distinct evaluation points: row j of G holds points^j.
LinearCode rs_code(std::span<const fp_t> points, std::size_t k, const PrimeField& field);

// Binary Reed-Muller code RM(r, m): n = 2^m, monomial rows of degree <= r
// ordered by ascending degree then descending exponent mask.
LinearCode rm_code(int r, int m);

LinearCode dual_code(const LinearCode& code);

// exhaustive oracle decoder; ties resolve to the lexicographically smallest
// codeword with unique=false
DecodeResult nearest_codeword(std::span<const fp_t> word, const LinearCode& code);

// Table decoder for an arbitrary parity map H (r x n): enumerates every error
// of weight <= wmax once at construction. Syndromes reached by two distinct
// low-weight errors are poisoned and decode as AmbiguousSolution.
class SyndromeDecoder {
  public:
    SyndromeDecoder(FpMatrix parity, int wmax);

    int radius() const { return wmax_; }
    std::size_t word_length() const { return parity_.cols(); }

    // error of weight <= wmax with e H^T = s; throws NoSolution / AmbiguousSolution
    std::vector<fp_t> decode(std::span<const fp_t> syndrome) const;

  private:
    struct Entry {
        std::vector<fp_t> error;
        bool ambiguous = false;
    };

    std::string key_of(std::span<const fp_t> syndrome) const;

    FpMatrix parity_;
    int wmax_;
    std::unordered_map<std::string, Entry> table_;
};

DecodeResult syndrome_decode(std::span<const fp_t> syndrome, const LinearCode& code, int wmax);

int hamming_weight(std::span<const fp_t> v);
int hamming_distance(std::span<const fp_t> a, std::span<const fp_t> b);

}  // namespace dqilab

#endif
