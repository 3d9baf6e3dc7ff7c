#include "dqilab/codes.hpp"

#include <algorithm>
#include <cstring>
#include <set>

namespace dqilab {

namespace {

constexpr std::uint64_t kEnumerationGuard = std::uint64_t{1} << 24;

// p^k, saturating at the guard so callers can compare safely
std::uint64_t pow_guarded(fp_t p, std::size_t k) {
    std::uint64_t v = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (v > kEnumerationGuard) return kEnumerationGuard + 1;
        v *= p;
    }
    return v;
}

void add_row_into(std::vector<fp_t>& acc, std::span<const fp_t> row, const PrimeField& f) {
    for (std::size_t j = 0; j < acc.size(); ++j) acc[j] = f.add(acc[j], row[j]);
}

// Walks every nonzero message in odometer order, keeping the running codeword
// up to date; fn(codeword) is called once per message.
template <typename Fn>
void for_each_nonzero_codeword(const FpMatrix& g, Fn&& fn) {
    const PrimeField& f = g.field();
    const fp_t p = f.p();
    const std::size_t k = g.rows(), n = g.cols();
    std::vector<fp_t> digits(k, 0);
    std::vector<fp_t> word(n, 0);
    while (true) {
        std::size_t pos = k;
        while (pos-- > 0) {
            digits[pos] = (digits[pos] + 1) % p;
            add_row_into(word, g.row(pos), f);
            if (digits[pos] != 0) break;
            if (pos == 0) return;  // wrapped all the way around
        }
        fn(const_cast<const std::vector<fp_t>&>(word));
    }
}

}  // namespace

int hamming_weight(std::span<const fp_t> v) {
    int w = 0;
    for (fp_t x : v) w += (x != 0);
    return w;
}

int hamming_distance(std::span<const fp_t> a, std::span<const fp_t> b) {
    if (a.size() != b.size()) throw DimensionMismatch("hamming distance length mismatch");
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] != b[i]);
    return d;
}

LinearCode::LinearCode(FpMatrix generator, FpMatrix parity)
    : generator_(std::move(generator)),
      parity_(std::move(parity)),
      cached_distance_(std::make_shared<std::atomic<int>>(-1)) {}

LinearCode LinearCode::from_generator(FpMatrix generator) {
    if (rank(generator) != generator.rows()) {
        throw RankDeficient("generator matrix rows are linearly dependent");
    }
    FpMatrix parity = nullspace_basis(generator);
    return LinearCode(std::move(generator), std::move(parity));
}

LinearCode LinearCode::from_parity_check(FpMatrix parity) {
    // reduce to a row basis so H is exactly (n-k) x n
    FpMatrix reduced = parity;
    const std::size_t r = rref(reduced).size();
    FpMatrix basis(r, parity.cols(), parity.field());
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < parity.cols(); ++j) basis.set(i, j, reduced.at(i, j));
    }
    FpMatrix generator = nullspace_basis(basis);
    return LinearCode(std::move(generator), std::move(basis));
}

std::vector<fp_t> LinearCode::encode(std::span<const fp_t> message) const {
    if (message.size() != k()) throw DimensionMismatch("message length does not match code dimension");
    return vec_mat(message, generator_);
}

std::vector<fp_t> LinearCode::syndrome(std::span<const fp_t> word) const {
    if (word.size() != n()) throw DimensionMismatch("word length does not match code length");
    // s = y H^T
    const PrimeField& f = field();
    std::vector<fp_t> s(parity_.rows(), 0);
    for (std::size_t i = 0; i < parity_.rows(); ++i) s[i] = dot(word, parity_.row(i), f);
    return s;
}

bool LinearCode::contains(std::span<const fp_t> word) const {
    const std::vector<fp_t> s = syndrome(word);
    return std::all_of(s.begin(), s.end(), [](fp_t v) { return v == 0; });
}

int LinearCode::min_distance() const {
    const int cached = cached_distance_->load(std::memory_order_relaxed);
    if (cached >= 0) return cached;
    if (k() == 0) throw Error("minimum distance of the zero code is undefined");
    if (pow_guarded(field().p(), k()) > kEnumerationGuard) {
        throw TooLarge("p^k exceeds the enumeration guard for min_distance");
    }
    int best = static_cast<int>(n()) + 1;
    for_each_nonzero_codeword(generator_, [&](const std::vector<fp_t>& word) {
        best = std::min(best, hamming_weight(word));
    });
    cached_distance_->store(best, std::memory_order_relaxed);
    return best;
}

LinearCode rs_code(std::span<const fp_t> points, std::size_t k, const PrimeField& field) {
    const std::size_t n = points.size();
    if (k < 1 || k > n) throw BadDimension("Reed-Solomon dimension must satisfy 1 <= k <= n");
    std::set<fp_t> seen;
    for (fp_t x : points) {
        if (x >= field.p()) throw DomainError("evaluation point outside the field");
        if (!seen.insert(x).second) throw DuplicatePoints("Reed-Solomon evaluation points must be distinct");
    }
    FpMatrix g(k, n, field);
    for (std::size_t i = 0; i < n; ++i) {
        fp_t v = 1;
        for (std::size_t j = 0; j < k; ++j) {
            g.set(j, i, v);
            v = field.mul(v, points[i]);
        }
    }
    return LinearCode::from_generator(std::move(g));
}

LinearCode rm_code(int r, int m) {
    if (m < 1 || r < 0 || r > m) throw BadDimension("RM(r, m) requires 0 <= r <= m");
    const PrimeField f2(2);
    const std::size_t n = std::size_t{1} << m;

    // exponent masks, bit (i-1) <-> variable x_i; ascending degree then
    // descending mask matches the b_j row order
    std::vector<unsigned> masks;
    for (unsigned mask = 0; mask < n; ++mask) {
        if (std::popcount(mask) <= r) masks.push_back(mask);
    }
    std::sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) {
        const int wa = std::popcount(a), wb = std::popcount(b);
        if (wa != wb) return wa < wb;
        return a < b;  // bit (i-1) carries x_i, so ascending masks list x_1 first
    });

    FpMatrix g(masks.size(), n, f2);
    for (std::size_t row = 0; row < masks.size(); ++row) {
        for (std::size_t col = 0; col < n; ++col) {
            // column col assigns x_i = bit (m-i) of col, x_1 most significant
            bool val = true;
            for (int i = 1; i <= m; ++i) {
                if (masks[row] & (1u << (i - 1))) {
                    val = val && ((col >> (m - i)) & 1u);
                }
            }
            g.set(row, col, val ? 1 : 0);
        }
    }
    return LinearCode::from_generator(std::move(g));
}

LinearCode dual_code(const LinearCode& code) {
    FpMatrix generator = nullspace_basis(code.generator());
    // the original generator doubles as the dual's parity check
    return LinearCode::from_generator(std::move(generator));
}

DecodeResult nearest_codeword(std::span<const fp_t> word, const LinearCode& code) {
    if (word.size() != code.n()) throw DimensionMismatch("word length does not match code length");
    if (pow_guarded(code.field().p(), code.k()) > kEnumerationGuard) {
        throw TooLarge("p^k exceeds the enumeration guard for nearest_codeword");
    }
    const PrimeField& f = code.field();

    std::vector<fp_t> best(word.size(), 0);
    int best_dist = hamming_weight(word);  // zero codeword
    int ties = 1;
    for_each_nonzero_codeword(code.generator(), [&](const std::vector<fp_t>& cw) {
        const int d = hamming_distance(word, cw);
        if (d < best_dist) {
            best_dist = d;
            best = cw;
            ties = 1;
        } else if (d == best_dist) {
            ++ties;
            if (std::lexicographical_compare(cw.begin(), cw.end(), best.begin(), best.end())) best = cw;
        }
    });

    DecodeResult out;
    out.codeword = best;
    out.unique = (ties == 1);
    out.error.resize(word.size());
    for (std::size_t i = 0; i < word.size(); ++i) out.error[i] = f.sub(word[i], best[i]);
    return out;
}

SyndromeDecoder::SyndromeDecoder(FpMatrix parity, int wmax) : parity_(std::move(parity)), wmax_(wmax) {
    if (wmax < 0) throw BadDimension("decoding radius must be nonnegative");
    const PrimeField& f = parity_.field();
    const fp_t p = f.p();
    const std::size_t n = parity_.cols();

    // table size sum_{w<=wmax} C(n,w) (p-1)^w
    double size_estimate = 0;
    {
        double binom = 1;
        double powv = 1;
        for (int w = 0; w <= wmax; ++w) {
            size_estimate += binom * powv;
            binom = binom * static_cast<double>(n - w) / static_cast<double>(w + 1);
            powv *= static_cast<double>(p - 1);
        }
    }
    if (size_estimate > static_cast<double>(kEnumerationGuard)) {
        throw TooLarge("syndrome table exceeds the enumeration guard");
    }

    std::vector<fp_t> error(n, 0);
    std::vector<fp_t> syn(parity_.rows(), 0);

    auto insert = [&]() {
        Entry& e = table_[key_of(syn)];
        if (e.error.empty() && !e.ambiguous) {
            e.error = error;
        } else if (e.error != error) {
            e.ambiguous = true;
        }
    };

    // depth-first over supports (ascending positions) and nonzero values
    auto recurse = [&](auto&& self, std::size_t from, int weight) -> void {
        insert();
        if (weight == wmax_) return;
        for (std::size_t i = from; i < n; ++i) {
            for (fp_t v = 1; v < p; ++v) {
                error[i] = v;
                for (std::size_t rrow = 0; rrow < parity_.rows(); ++rrow) {
                    syn[rrow] = f.add(syn[rrow], f.mul(v, parity_.at(rrow, i)));
                }
                self(self, i + 1, weight + 1);
                for (std::size_t rrow = 0; rrow < parity_.rows(); ++rrow) {
                    syn[rrow] = f.sub(syn[rrow], f.mul(v, parity_.at(rrow, i)));
                }
            }
            error[i] = 0;
        }
    };
    recurse(recurse, 0, 0);
}

std::string SyndromeDecoder::key_of(std::span<const fp_t> syndrome) const {
    std::string key(syndrome.size() * sizeof(std::uint32_t), '\0');
    for (std::size_t i = 0; i < syndrome.size(); ++i) {
        const std::uint32_t v = static_cast<std::uint32_t>(syndrome[i]);
        std::memcpy(key.data() + i * sizeof(std::uint32_t), &v, sizeof(v));
    }
    return key;
}

std::vector<fp_t> SyndromeDecoder::decode(std::span<const fp_t> syndrome) const {
    if (syndrome.size() != parity_.rows()) throw DimensionMismatch("syndrome length mismatch");
    const auto it = table_.find(key_of(syndrome));
    if (it == table_.end()) {
        throw NoSolution("no error of weight <= " + std::to_string(wmax_) + " matches the syndrome");
    }
    if (it->second.ambiguous) {
        throw AmbiguousSolution("multiple weight <= " + std::to_string(wmax_) +
                                " errors share this syndrome (radius reaches d/2)");
    }
    return it->second.error;
}

DecodeResult syndrome_decode(std::span<const fp_t> syndrome, const LinearCode& code, int wmax) {
    SyndromeDecoder dec(code.parity_check(), wmax);
    DecodeResult out;
    out.error = dec.decode(syndrome);
    out.codeword.assign(code.n(), 0);
    out.unique = true;
    return out;
}

}  // namespace dqilab
