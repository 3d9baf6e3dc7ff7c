#include "dqilab/dqi.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "dqilab/rng.hpp"

namespace dqilab {

namespace {

constexpr double kNormTolerance = 1e-6;    // collision threshold
constexpr double kResidualMass = 1e-20;    // squared-amplitude leakage bound

double binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (std::size_t i = 1; i <= k; ++i) {
        r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return r;
}

std::vector<cd> omega_table(fp_t p) {
    std::vector<cd> om(p);
    for (fp_t t = 0; t < p; ++t) {
        const double phase = -2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(p);
        om[t] = std::polar(1.0, phase);
    }
    return om;
}

// per-constraint transform tables; gt[i][0] is pinned to exact zero, which the
// closed forms guarantee up to rounding
struct GTables {
    std::vector<std::vector<double>> g;
    std::vector<std::vector<cd>> gt;
};

GTables g_tables(const MaxLinsatInstance& inst) {
    const fp_t p = inst.field.p();
    const std::size_t m = inst.m();
    GTables t;
    t.g.assign(m, std::vector<double>(p));
    t.gt.assign(m, std::vector<cd>(p));
    for (std::size_t i = 0; i < m; ++i) {
        for (fp_t x = 0; x < p; ++x) t.g[i][x] = g_fun(inst, i, x);
        t.gt[i][0] = 0.0;
        for (fp_t y = 1; y < p; ++y) t.gt[i][y] = g_tilde(inst, i, y);
    }
    return t;
}

// visits every index of F_p^sites in ascending order along with z . digits mod p
template <typename Fn>
void for_each_index_with_dot(std::span<const fp_t> z, fp_t p, Fn&& fn) {
    const std::size_t sites = z.size();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < sites; ++i) total *= p;
    std::vector<fp_t> digits(sites, 0);
    fp_t dotv = 0;
    for (std::uint64_t idx = 0;; ++idx) {
        fn(idx, dotv);
        if (idx + 1 == total) return;
        std::size_t j = sites;
        while (j-- > 0) {
            digits[j] = (digits[j] + 1) % p;
            dotv = (dotv + z[j]) % p;  // wrap p-1 -> 0 also shifts by +z[j] mod p
            if (digits[j] != 0) break;
        }
    }
}

// satisfied count per state index, enumerated once
std::vector<int> satisfied_table(const MaxLinsatInstance& inst, std::uint64_t total) {
    const fp_t p = inst.field.p();
    const std::size_t m = inst.m(), n = inst.n();
    std::vector<int> sat(total, 0);
    std::vector<fp_t> digits(n, 0);
    std::vector<fp_t> dots(m, 0);
    for (std::uint64_t idx = 0;; ++idx) {
        int s = 0;
        for (std::size_t i = 0; i < m; ++i) s += target_contains(inst.targets[i], dots[i]);
        sat[idx] = s;
        if (idx + 1 == total) break;
        std::size_t j = n;
        while (j-- > 0) {
            digits[j] = (digits[j] + 1) % p;
            for (std::size_t i = 0; i < m; ++i) {
                dots[i] = inst.field.add(dots[i], inst.constraint_matrix.at(i, j));
            }
            if (digits[j] != 0) break;
        }
    }
    return sat;
}

void jacobi_symmetric(std::vector<std::vector<double>>& a, std::vector<std::vector<double>>& vecs) {
    const std::size_t n = a.size();
    vecs.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) vecs[i][i] = 1.0;
    if (n < 2) return;

    for (int sweep = 0; sweep < 200; ++sweep) {
        double off = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            scale = std::max(scale, std::abs(a[i][i]));
            for (std::size_t j = i + 1; j < n; ++j) off = std::max(off, std::abs(a[i][j]));
        }
        if (off <= 1e-15 * (1.0 + scale)) break;

        for (std::size_t piv = 0; piv < n; ++piv) {
            for (std::size_t q = piv + 1; q < n; ++q) {
                if (std::abs(a[piv][q]) <= 1e-300) continue;
                const double theta = 0.5 * std::atan2(2.0 * a[piv][q], a[q][q] - a[piv][piv]);
                const double c = std::cos(theta), s = std::sin(theta);
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][piv], akq = a[k][q];
                    a[k][piv] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[piv][k], aqk = a[q][k];
                    a[piv][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = vecs[k][piv], vkq = vecs[k][q];
                    vecs[k][piv] = c * vkp - s * vkq;
                    vecs[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
}

}  // namespace

std::uint64_t state_size(fp_t p, std::size_t sites, std::uint64_t cap) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < sites; ++i) {
        if (total > cap / p) throw TooLarge("state dimension p^sites exceeds the size guard");
        total *= p;
    }
    if (total > cap) throw TooLarge("state dimension p^sites exceeds the size guard");
    return total;
}

std::uint64_t index_of(std::span<const fp_t> digits, fp_t p) {
    std::uint64_t idx = 0;
    for (fp_t d : digits) idx = idx * p + d;
    return idx;
}

std::vector<fp_t> digits_of(std::uint64_t index, std::size_t sites, fp_t p) {
    std::vector<fp_t> d(sites, 0);
    for (std::size_t j = sites; j-- > 0;) {
        d[j] = index % p;
        index /= p;
    }
    return d;
}

int index_weight(std::uint64_t index, std::size_t sites, fp_t p) {
    int w = 0;
    for (std::size_t j = 0; j < sites; ++j) {
        w += (index % p) != 0;
        index /= p;
    }
    return w;
}

double StateVector::norm() const {
    long double acc = 0;
    for (const cd& a : amplitudes) acc += std::norm(a);
    return static_cast<double>(std::sqrt(acc));
}

StateVector uniform_state(const PrimeField& field, std::size_t sites) {
    const std::uint64_t total = state_size(field.p(), sites);
    StateVector st{field, sites, {}};
    st.amplitudes.assign(total, cd(1.0 / std::sqrt(static_cast<double>(total)), 0.0));
    return st;
}

StateVector dicke_state(const PrimeField& field, std::size_t m, std::size_t k) {
    if (k > m) throw BadDimension("Dicke weight k must satisfy 0 <= k <= m");
    const std::uint64_t total = state_size(field.p(), m, kErrorRegGuard);
    StateVector st{field, m, {}};
    st.amplitudes.assign(total, cd(0.0, 0.0));
    const double amp = 1.0 / std::sqrt(binomial(m, k));

    // precompute strides of each site, most significant first
    std::vector<std::uint64_t> stride(m, 1);
    for (std::size_t i = m; i-- > 1;) stride[i - 1] = stride[i] * field.p();

    std::vector<std::size_t> support;
    auto recurse = [&](auto&& self, std::size_t from, std::size_t left, std::uint64_t idx) -> void {
        if (left == 0) {
            st.amplitudes[idx] = amp;
            return;
        }
        for (std::size_t i = from; i + left <= m; ++i) {
            self(self, i + 1, left - 1, idx + stride[i]);
        }
    };
    recurse(recurse, 0, k, 0);
    return st;
}

WeightVector make_weights(std::vector<cd> w) {
    if (w.empty()) throw BadDimension("weight vector must have at least one entry");
    long double nrm = 0;
    for (const cd& v : w) nrm += std::norm(v);
    if (std::abs(std::sqrt(static_cast<double>(nrm)) - 1.0) > 1e-10) {
        throw NormalizationFailure("weight vector is not unit norm");
    }
    return WeightVector{std::move(w)};
}

WeightVector normalized_weights(std::vector<cd> w) {
    if (w.empty()) throw BadDimension("weight vector must have at least one entry");
    long double nrm = 0;
    for (const cd& v : w) nrm += std::norm(v);
    if (nrm == 0) throw NormalizationFailure("cannot normalize the zero weight vector");
    const double inv = 1.0 / std::sqrt(static_cast<double>(nrm));
    for (cd& v : w) v *= inv;
    return WeightVector{std::move(w)};
}

Normalizers normalizers(const PrimeField& field, std::size_t r) {
    const double p = static_cast<double>(field.p());
    if (r < 1 || r > field.p() - 1) throw BadDimension("target-set size must satisfy 1 <= r <= p-1");
    const double rr = static_cast<double>(r);
    return Normalizers{(2.0 * rr - p) / p, std::sqrt(4.0 * rr * (1.0 - rr / p))};
}

double g_fun(const MaxLinsatInstance& inst, std::size_t i, fp_t x) {
    if (i >= inst.m()) throw IndexOutOfRange("constraint index out of range");
    if (x >= inst.field.p()) throw DomainError("argument outside the field");
    const Normalizers nz = normalizers(inst.field, inst.r());
    const double f = target_contains(inst.targets[i], x) ? 1.0 : -1.0;
    return (f - nz.fbar) / nz.phi;
}

cd g_tilde(const MaxLinsatInstance& inst, std::size_t i, fp_t y) {
    if (i >= inst.m()) throw IndexOutOfRange("constraint index out of range");
    if (y >= inst.field.p()) throw DomainError("argument outside the field");
    const fp_t p = inst.field.p();
    const Normalizers nz = normalizers(inst.field, inst.r());
    cd acc = 0.0;
    for (fp_t x = 0; x < p; ++x) {
        const double f = target_contains(inst.targets[i], x) ? 1.0 : -1.0;
        const double g = (f - nz.fbar) / nz.phi;
        const double phase = 2.0 * std::numbers::pi * static_cast<double>(inst.field.mul(x, y)) /
                             static_cast<double>(p);
        acc += std::polar(g, phase);
    }
    return acc / std::sqrt(static_cast<double>(p));
}

std::vector<cd> dqi_amplitudes_raw(const MaxLinsatInstance& inst, std::span<const cd> weights) {
    const fp_t p = inst.field.p();
    const std::size_t m = inst.m(), n = inst.n();
    const int ell = static_cast<int>(weights.size()) - 1;
    if (ell < 0) throw BadDimension("weight vector must have at least one entry");
    if (static_cast<std::size_t>(ell) > m) throw BadDimension("polynomial degree ell must not exceed m");
    (void)inst.r();  // constant target size required for the g transform

    const std::uint64_t total = state_size(p, n);
    const GTables tables = g_tables(inst);
    const std::vector<cd> om = omega_table(p);

    std::vector<cd> amps(total, cd(0.0, 0.0));
    std::vector<fp_t> z(n, 0);

    auto accumulate = [&](cd coef) {
        for_each_index_with_dot(z, p, [&](std::uint64_t idx, fp_t dotv) { amps[idx] += coef * om[dotv]; });
    };

    // depth-first over error supports (ascending) and nonzero values; z tracks B^T y
    auto recurse = [&](auto&& self, std::size_t from, int weight, cd factor) -> void {
        accumulate(factor * weights[weight] / std::sqrt(binomial(m, weight)));
        if (weight == ell) return;
        for (std::size_t i = from; i < m; ++i) {
            for (fp_t v = 1; v < p; ++v) {
                for (std::size_t j = 0; j < n; ++j) {
                    z[j] = inst.field.add(z[j], inst.field.mul(v, inst.constraint_matrix.at(i, j)));
                }
                self(self, i + 1, weight + 1, factor * tables.gt[i][v]);
                for (std::size_t j = 0; j < n; ++j) {
                    z[j] = inst.field.sub(z[j], inst.field.mul(v, inst.constraint_matrix.at(i, j)));
                }
            }
        }
    };
    recurse(recurse, 0, 0, cd(1.0, 0.0));

    const double scale = 1.0 / std::sqrt(static_cast<double>(total));
    for (cd& a : amps) a *= scale;
    return amps;
}

StateVector build_dqi_direct(const MaxLinsatInstance& inst, const WeightVector& weights) {
    StateVector st{inst.field, inst.n(), dqi_amplitudes_raw(inst, weights.w)};
    const double deviation = std::abs(st.norm() - 1.0);
    if (deviation > kNormTolerance) {
        throw NormalizationFailure("DQI state norm deviates by " + std::to_string(deviation) +
                                   "; ell reaches half the kernel distance");
    }
    return st;
}

std::vector<double> pk_amplitudes_raw(const MaxLinsatInstance& inst, std::size_t k) {
    const fp_t p = inst.field.p();
    const std::size_t m = inst.m(), n = inst.n();
    if (k > m) throw BadDimension("symmetric-polynomial degree must not exceed m");
    (void)inst.r();

    const std::uint64_t total = state_size(p, n);
    const GTables tables = g_tables(inst);

    std::vector<double> amps(total, 0.0);
    std::vector<fp_t> digits(n, 0);
    std::vector<fp_t> dots(m, 0);
    std::vector<double> esym(k + 1, 0.0);

    for (std::uint64_t idx = 0;; ++idx) {
        // degree-k elementary symmetric polynomial in g_i(b_i . x)
        std::fill(esym.begin(), esym.end(), 0.0);
        esym[0] = 1.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double g = tables.g[i][dots[i]];
            for (std::size_t j = std::min(k, i + 1); j >= 1; --j) {
                esym[j] += esym[j - 1] * g;
            }
        }
        amps[idx] = esym[k];
        if (idx + 1 == total) break;
        std::size_t j = n;
        while (j-- > 0) {
            digits[j] = (digits[j] + 1) % p;
            for (std::size_t i = 0; i < m; ++i) {
                dots[i] = inst.field.add(dots[i], inst.constraint_matrix.at(i, j));
            }
            if (digits[j] != 0) break;
        }
    }

    // closed-form normalizer 1 / sqrt(p^(n-k) C(m,k))
    const double scale =
        std::pow(static_cast<double>(p), 0.5 * (static_cast<double>(k) - static_cast<double>(n))) /
        std::sqrt(binomial(m, k));
    for (double& a : amps) a *= scale;
    return amps;
}

StateVector build_pk_state(const MaxLinsatInstance& inst, std::size_t k) {
    const std::vector<double> raw = pk_amplitudes_raw(inst, k);
    StateVector st{inst.field, inst.n(), {}};
    st.amplitudes.assign(raw.begin(), raw.end());
    const double deviation = std::abs(st.norm() - 1.0);
    if (deviation > kNormTolerance) {
        throw NormalizationFailure("symmetric-polynomial state norm deviates by " + std::to_string(deviation) +
                                   "; k reaches half the kernel distance");
    }
    return st;
}

std::vector<std::vector<double>> pk_gram(const MaxLinsatInstance& inst, int ell) {
    if (ell < 0) throw BadDimension("ell must be nonnegative");
    std::vector<std::vector<double>> vecs;
    vecs.reserve(ell + 1);
    for (int k = 0; k <= ell; ++k) vecs.push_back(pk_amplitudes_raw(inst, k));

    std::vector<std::vector<double>> gram(ell + 1, std::vector<double>(ell + 1, 0.0));
    for (int a = 0; a <= ell; ++a) {
        for (int b = a; b <= ell; ++b) {
            long double acc = 0;
            for (std::size_t x = 0; x < vecs[a].size(); ++x) acc += vecs[a][x] * vecs[b][x];
            gram[a][b] = gram[b][a] = static_cast<double>(acc);
        }
    }
    return gram;
}

double PipelineSnapshot::w_excited_mass() const {
    if (we.empty() || w_levels <= 1) return 0.0;
    const std::size_t per_row = we.size() / w_levels;
    long double acc = 0;
    for (std::size_t row = 1; row < w_levels; ++row) {
        for (std::size_t e = 0; e < per_row; ++e) acc += std::norm(we[row * per_row + e]);
    }
    return static_cast<double>(acc);
}

double PipelineSnapshot::e_nonzero_mass() const {
    long double acc = 0;
    for (const EsTerm& t : es) {
        if (t.e_index != 0) acc += std::norm(t.amp);
    }
    return static_cast<double>(acc);
}

std::vector<double> PipelineSnapshot::e_weight_histogram() const {
    std::vector<double> hist(e_sites + 1, 0.0);
    if (!we.empty()) {
        const std::size_t per_row = we.size() / w_levels;
        for (std::size_t row = 0; row < w_levels; ++row) {
            for (std::uint64_t e = 0; e < per_row; ++e) {
                hist[index_weight(e, e_sites, p)] += std::norm(we[row * per_row + e]);
            }
        }
    }
    for (const EsTerm& t : es) hist[index_weight(t.e_index, e_sites, p)] += std::norm(t.amp);
    return hist;
}

PipelineResult pipeline_run(const MaxLinsatInstance& inst, const WeightVector& weights) {
    const fp_t p = inst.field.p();
    const std::size_t m = inst.m(), n = inst.n();
    const int ell = weights.ell();
    if (static_cast<std::size_t>(ell) > m) throw BadDimension("polynomial degree ell must not exceed m");
    (void)inst.r();

    const std::uint64_t e_total = state_size(p, m, kErrorRegGuard);
    const std::uint64_t s_total = state_size(p, n, kStateGuard);
    const std::size_t levels = static_cast<std::size_t>(ell) + 1;

    const SyndromeDecoder decoder = [&]() {
        try {
            return SyndromeDecoder(inst.constraint_matrix.transposed(), ell);
        } catch (const TooLarge& e) {
            throw DecoderUnavailable(std::string("syndrome decoder construction failed: ") + e.what());
        }
    }();

    std::vector<std::uint64_t> stride(m, 1);
    for (std::size_t i = m; i-- > 1;) stride[i - 1] = stride[i] * p;

    // index lists of the weight-k binary strings
    std::vector<std::vector<std::uint64_t>> dicke_idx(levels);
    for (std::size_t k = 0; k < levels; ++k) {
        auto recurse = [&](auto&& self, std::size_t from, std::size_t left, std::uint64_t idx) -> void {
            if (left == 0) {
                dicke_idx[k].push_back(idx);
                return;
            }
            for (std::size_t i = from; i + left <= m; ++i) self(self, i + 1, left - 1, idx + stride[i]);
        };
        recurse(recurse, 0, k, 0);
    }

    std::vector<PipelineSnapshot> snapshots;
    snapshots.reserve(8);
    std::vector<cd> we(levels * e_total, cd(0.0, 0.0));

    auto snap_we = [&](int stage) {
        PipelineSnapshot s;
        s.stage = stage;
        s.p = p;
        s.w_levels = levels;
        s.e_sites = m;
        s.s_sites = n;
        s.we = we;
        snapshots.push_back(std::move(s));
    };

    // stage 0: all registers in their ground strings
    we[0] = 1.0;
    snap_we(0);

    // stage 1: load the weight coefficients onto W
    we[0] = 0.0;
    for (std::size_t k = 0; k < levels; ++k) we[k * e_total + 0] = weights.w[k];
    snap_we(1);

    // stage 2: controlled Dicke preparation on E
    for (std::size_t k = 0; k < levels; ++k) {
        const cd c = we[k * e_total + 0];
        we[k * e_total + 0] = 0.0;
        const double amp = 1.0 / std::sqrt(binomial(m, k));
        for (std::uint64_t idx : dicke_idx[k]) we[k * e_total + idx] += c * amp;
    }
    snap_we(2);

    // stage 3: rotate each |k>_W (x) |D_k> component down to W level 0
    for (std::size_t k = 1; k < levels; ++k) {
        const double inv_c = 1.0 / std::sqrt(binomial(m, k));
        cd alpha = 0.0, beta = 0.0;
        for (std::uint64_t idx : dicke_idx[k]) {
            alpha += we[0 * e_total + idx];
            beta += we[k * e_total + idx];
        }
        alpha *= inv_c;
        beta *= inv_c;
        const cd delta0 = (beta - alpha) * inv_c;
        const cd deltak = (-alpha - beta) * inv_c;
        for (std::uint64_t idx : dicke_idx[k]) {
            we[0 * e_total + idx] += delta0;
            we[k * e_total + idx] += deltak;
        }
    }
    snap_we(3);
    if (snapshots.back().w_excited_mass() > kResidualMass) {
        throw Error("weight register failed to disentangle");
    }

    // stage 4: per-site constraint transform |0> -> |0>, |1> -> sum_y g~_i(y)|y>
    const GTables tables = g_tables(inst);
    std::vector<cd> buf(e_total);
    for (std::size_t row = 0; row < levels; ++row) {
        cd* slice = we.data() + row * e_total;
        for (std::size_t site = 0; site < m; ++site) {
            std::fill(buf.begin(), buf.end(), cd(0.0, 0.0));
            const std::uint64_t st = stride[site];
            for (std::uint64_t idx = 0; idx < e_total; ++idx) {
                const cd a = slice[idx];
                if (a == cd(0.0, 0.0)) continue;
                const fp_t digit = static_cast<fp_t>((idx / st) % p);
                if (digit == 0) {
                    buf[idx] += a;
                } else if (digit == 1) {
                    const std::uint64_t base = idx - st;
                    for (fp_t y = 0; y < p; ++y) buf[base + y * st] += tables.gt[site][y] * a;
                } else if (std::abs(a) > 1e-12) {
                    throw Error("constraint transform applied outside its specified levels");
                }
            }
            std::copy(buf.begin(), buf.end(), slice);
        }
    }
    snap_we(4);
    if (snapshots.back().w_excited_mass() > kResidualMass) {
        throw Error("weight register reacquired amplitude during stage 4");
    }

    // stage 5: write B^T y onto S, keeping the joint support sparse
    std::vector<PipelineSnapshot::EsTerm> terms;
    for (std::uint64_t idx = 0; idx < e_total; ++idx) {
        const cd a = we[idx];
        if (a == cd(0.0, 0.0)) continue;
        const std::vector<fp_t> y = digits_of(idx, m, p);
        const std::vector<fp_t> z = vec_mat(y, inst.constraint_matrix);
        terms.push_back({idx, index_of(z, p), a});
    }
    {
        PipelineSnapshot s;
        s.stage = 5;
        s.p = p;
        s.w_levels = 0;
        s.e_sites = m;
        s.s_sites = n;
        s.es = terms;
        snapshots.push_back(std::move(s));
    }

    // stage 6: decode the syndrome register and cancel the error register
    std::map<std::pair<std::uint64_t, std::uint64_t>, cd> merged;
    for (const auto& term : terms) {
        const std::vector<fp_t> z = digits_of(term.s_index, n, p);
        const std::vector<fp_t> decoded = decoder.decode(z);
        std::vector<fp_t> y = digits_of(term.e_index, m, p);
        for (std::size_t i = 0; i < m; ++i) y[i] = inst.field.sub(y[i], decoded[i]);
        merged[{index_of(y, p), term.s_index}] += term.amp;
    }
    std::vector<PipelineSnapshot::EsTerm> terms6;
    terms6.reserve(merged.size());
    for (const auto& [key, amp] : merged) terms6.push_back({key.first, key.second, amp});
    {
        PipelineSnapshot s;
        s.stage = 6;
        s.p = p;
        s.w_levels = 0;
        s.e_sites = m;
        s.s_sites = n;
        s.es = terms6;
        snapshots.push_back(std::move(s));
        if (snapshots.back().e_nonzero_mass() > kResidualMass) {
            throw Error("error register failed to disentangle");
        }
    }

    // stage 7: Fourier transform of the syndrome register
    StateVector syndrome_state{inst.field, n, std::vector<cd>(s_total, cd(0.0, 0.0))};
    for (const auto& term : terms6) {
        if (term.e_index == 0) syndrome_state.amplitudes[term.s_index] += term.amp;
    }
    StateVector final_state = qft_state(syndrome_state, FourierDirection::forward);
    {
        PipelineSnapshot s;
        s.stage = 7;
        s.p = p;
        s.w_levels = 0;
        s.e_sites = 0;
        s.s_sites = n;
        s.s = final_state.amplitudes;
        snapshots.push_back(std::move(s));
    }

    const double deviation = std::abs(final_state.norm() - 1.0);
    if (deviation > 1e-10) {
        throw NormalizationFailure("pipeline output norm deviates by " + std::to_string(deviation));
    }
    return PipelineResult{std::move(final_state), std::move(snapshots)};
}

double expected_satisfaction(const StateVector& state, const MaxLinsatInstance& inst) {
    if (state.sites != inst.n() || state.field.p() != inst.field.p()) {
        throw DimensionMismatch("state does not match the instance dimensions");
    }
    const std::vector<int> sat = satisfied_table(inst, state.amplitudes.size());
    long double acc = 0;
    for (std::size_t idx = 0; idx < state.amplitudes.size(); ++idx) {
        acc += std::norm(state.amplitudes[idx]) * sat[idx];
    }
    return static_cast<double>(acc);
}

WeightOptimum optimize_weights(const MaxLinsatInstance& inst, int ell) {
    if (ell < 0 || static_cast<std::size_t>(ell) > inst.m()) {
        throw BadDimension("ell must lie in [0, m]");
    }
    const std::uint64_t total = state_size(inst.field.p(), inst.n());

    std::vector<std::vector<double>> vecs;
    vecs.reserve(ell + 1);
    for (int k = 0; k <= ell; ++k) {
        std::vector<double> v = pk_amplitudes_raw(inst, k);
        long double nrm = 0;
        for (double a : v) nrm += a * a;
        if (std::abs(std::sqrt(static_cast<double>(nrm)) - 1.0) > kNormTolerance) {
            throw NormalizationFailure("symmetric-polynomial state " + std::to_string(k) +
                                       " is not unit norm; ell reaches half the kernel distance");
        }
        vecs.push_back(std::move(v));
    }

    const std::vector<int> sat = satisfied_table(inst, total);
    std::vector<std::vector<double>> overlap(ell + 1, std::vector<double>(ell + 1, 0.0));
    for (int a = 0; a <= ell; ++a) {
        for (int b = a; b <= ell; ++b) {
            long double acc = 0;
            for (std::uint64_t x = 0; x < total; ++x) acc += sat[x] * vecs[a][x] * vecs[b][x];
            overlap[a][b] = overlap[b][a] = static_cast<double>(acc);
        }
    }

    std::vector<std::vector<double>> work = overlap, eigvecs;
    jacobi_symmetric(work, eigvecs);
    std::size_t best = 0;
    for (std::size_t i = 1; i < work.size(); ++i) {
        if (work[i][i] > work[best][best]) best = i;
    }

    std::vector<cd> w(ell + 1);
    double sign = 1.0;
    for (int k = 0; k <= ell; ++k) {
        if (std::abs(eigvecs[k][best]) > 1e-12) {
            sign = eigvecs[k][best] > 0 ? 1.0 : -1.0;
            break;
        }
    }
    for (int k = 0; k <= ell; ++k) w[k] = sign * eigvecs[k][best];

    WeightOptimum out{normalized_weights(std::move(w)), work[best][best], std::move(overlap)};
    return out;
}

double semicircle(double ell_over_m, double r_over_p) {
    if (!(ell_over_m >= 0.0 && ell_over_m <= 1.0 && r_over_p >= 0.0 && r_over_p <= 1.0)) {
        throw DomainError("semicircle arguments must lie in [0, 1]");
    }
    if (r_over_p >= 1.0 - ell_over_m) return 1.0;
    const double a = std::sqrt(ell_over_m * (1.0 - r_over_p));
    const double b = std::sqrt(r_over_p * (1.0 - ell_over_m));
    return (a + b) * (a + b);
}

StateVector qft_state(const StateVector& state, FourierDirection direction) {
    const fp_t p = state.field.p();
    const std::size_t sites = state.sites;
    const double sign = direction == FourierDirection::forward ? -1.0 : 1.0;

    std::vector<std::vector<cd>> kernel(p, std::vector<cd>(p));
    const double inv_sqrt_p = 1.0 / std::sqrt(static_cast<double>(p));
    for (fp_t u = 0; u < p; ++u) {
        for (fp_t t = 0; t < p; ++t) {
            const double phase =
                sign * 2.0 * std::numbers::pi * static_cast<double>((u * t) % p) / static_cast<double>(p);
            kernel[u][t] = std::polar(inv_sqrt_p, phase);
        }
    }

    StateVector out = state;
    std::vector<cd> buf(state.amplitudes.size());
    std::uint64_t stride = 1;
    for (std::size_t site = sites; site-- > 0;) {
        std::fill(buf.begin(), buf.end(), cd(0.0, 0.0));
        for (std::uint64_t idx = 0; idx < out.amplitudes.size(); ++idx) {
            const fp_t t = static_cast<fp_t>((idx / stride) % p);
            if (t != 0) continue;
            // transform the p-point fiber through this index
            for (fp_t u = 0; u < p; ++u) {
                cd acc = 0.0;
                for (fp_t v = 0; v < p; ++v) acc += kernel[u][v] * out.amplitudes[idx + v * stride];
                buf[idx + u * stride] = acc;
            }
        }
        out.amplitudes = buf;
        stride *= p;
    }
    return out;
}

PoissonCheckResult poisson_check(const LinearCode& code) {
    const PrimeField& field = code.field();
    const fp_t p = field.p();
    const std::size_t n = code.n();
    const std::uint64_t total = state_size(p, n, kErrorRegGuard);

    auto superpose = [&](const LinearCode& c) {
        StateVector st{field, n, std::vector<cd>(total, cd(0.0, 0.0))};
        const std::uint64_t count = state_size(p, c.k(), kErrorRegGuard);
        const double amp = 1.0 / std::sqrt(static_cast<double>(count));
        // odometer over messages with an incrementally maintained codeword
        std::vector<fp_t> digits(c.k(), 0);
        std::vector<fp_t> word(n, 0);
        st.amplitudes[0] = amp;
        for (std::uint64_t step = 1; step < count; ++step) {
            std::size_t j = c.k();
            while (j-- > 0) {
                digits[j] = (digits[j] + 1) % p;
                for (std::size_t col = 0; col < n; ++col) {
                    word[col] = field.add(word[col], c.generator().at(j, col));
                }
                if (digits[j] != 0) break;
            }
            st.amplitudes[index_of(word, p)] = amp;
        }
        return st;
    };

    PoissonCheckResult out{superpose(code), superpose(dual_code(code)), 0.0};
    out.lhs = qft_state(out.lhs, FourierDirection::forward);
    out.l2_error = aligned_l2_distance(out.lhs, out.rhs);
    return out;
}

double aligned_l2_distance(std::span<const cd> a, std::span<const cd> b) {
    if (a.size() != b.size()) throw DimensionMismatch("state dimension mismatch");
    std::size_t pivot = 0;
    for (std::size_t i = 1; i < a.size(); ++i) {
        if (std::abs(a[i]) > std::abs(a[pivot])) pivot = i;
    }
    cd phase(1.0, 0.0);
    if (std::abs(a[pivot]) > 0 && std::abs(b[pivot]) > 0) {
        phase = (a[pivot] / std::abs(a[pivot])) * std::conj(b[pivot] / std::abs(b[pivot]));
    }
    long double acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::norm(a[i] - phase * b[i]);
    return static_cast<double>(std::sqrt(acc));
}

double aligned_l2_distance(const StateVector& a, const StateVector& b) {
    return aligned_l2_distance(std::span<const cd>(a.amplitudes), std::span<const cd>(b.amplitudes));
}

std::uint64_t grm_distance(fp_t p, std::size_t vars, std::size_t nu) {
    if (nu > vars * (p - 1)) throw BadDimension("Reed-Muller order exceeds vars*(p-1)");
    const std::size_t a = nu / (p - 1);
    const std::size_t b = nu % (p - 1);
    if (a == vars) return 1;
    std::uint64_t d = p - b;
    for (std::size_t i = 0; i < vars - 1 - a; ++i) d *= p;
    return d;
}

int kernel_distance(const MaxLinsatInstance& inst) {
    const std::size_t m = inst.m();
    switch (inst.kind) {
        case InstanceKind::opi:
            // dual of a generalized Reed-Solomon code is again MDS
            return static_cast<int>(inst.n()) + 1;
        case InstanceKind::mopi: {
            const fp_t p = inst.field.p();
            const std::size_t cap = inst.mopi_vars * (p - 1);
            if (inst.mopi_degree + 1 > cap) return static_cast<int>(m) + 1;
            return static_cast<int>(grm_distance(p, inst.mopi_vars, cap - inst.mopi_degree - 1));
        }
        default: {
            const LinearCode kernel = LinearCode::from_parity_check(inst.constraint_matrix.transposed());
            if (kernel.k() == 0) return static_cast<int>(m) + 1;
            return kernel.min_distance();
        }
    }
}

int rowspace_distance(const MaxLinsatInstance& inst) {
    switch (inst.kind) {
        case InstanceKind::opi:
            return static_cast<int>(inst.m() - inst.n()) + 1;
        case InstanceKind::mopi:
            return static_cast<int>(grm_distance(inst.field.p(), inst.mopi_vars, inst.mopi_degree));
        default: {
            FpMatrix bt = inst.constraint_matrix.transposed();
            const std::size_t r = rref(bt).size();
            if (r == 0) throw Error("constraint matrix is zero; its row space is the zero code");
            FpMatrix basis(r, bt.cols(), inst.field);
            for (std::size_t i = 0; i < r; ++i) {
                for (std::size_t j = 0; j < bt.cols(); ++j) basis.set(i, j, bt.at(i, j));
            }
            return LinearCode::from_generator(std::move(basis)).min_distance();
        }
    }
}

int default_ell(const MaxLinsatInstance& inst) {
    const int m = static_cast<int>(inst.m());
    const int d = kernel_distance(inst);
    if (d > m) return m;  // trivial kernel: every radius decodes uniquely
    return std::min((d - 1) / 2, m);
}

std::vector<cd> u_from_alpha(std::span<const double> alpha, std::size_t m) {
    const int ell = static_cast<int>(alpha.size()) - 1;
    if (ell < 0) throw BadDimension("alpha must have at least one coefficient");
    if (static_cast<std::size_t>(ell) > m) throw BadDimension("polynomial degree exceeds m");

    // K_k(s) = sum_j (-1)^(k-j) C(s,j) C(m-s, k-j); both sides are degree-<=ell
    // polynomials in the satisfied count s, so matching at s = 0..ell suffices
    auto kraw = [&](int k, int s) {
        double acc = 0;
        for (int j = 0; j <= k; ++j) {
            const double term = binomial(s, j) * binomial(m - s, k - j);
            acc += ((k - j) % 2 == 0 ? term : -term);
        }
        return acc;
    };

    const int dim = ell + 1;
    std::vector<std::vector<double>> a(dim, std::vector<double>(dim + 1, 0.0));
    for (int s = 0; s < dim; ++s) {
        for (int k = 0; k < dim; ++k) a[s][k] = kraw(k, s);
        const double f = 2.0 * s - static_cast<double>(m);
        double rhs = 0.0, fpow = 1.0;
        for (int j = 0; j <= ell; ++j) {
            rhs += alpha[j] * fpow;
            fpow *= f;
        }
        a[s][dim] = rhs;
    }

    for (int col = 0; col < dim; ++col) {
        int piv = col;
        for (int i = col + 1; i < dim; ++i) {
            if (std::abs(a[i][col]) > std::abs(a[piv][col])) piv = i;
        }
        if (std::abs(a[piv][col]) < 1e-12) throw Error("Krawtchouk system is singular");
        std::swap(a[piv], a[col]);
        for (int i = 0; i < dim; ++i) {
            if (i == col) continue;
            const double f = a[i][col] / a[col][col];
            for (int j = col; j <= dim; ++j) a[i][j] -= f * a[col][j];
        }
    }

    std::vector<cd> u(dim);
    for (int k = 0; k < dim; ++k) u[k] = a[k][dim] / a[k][k];
    return u;
}

std::vector<cd> w_from_u(std::span<const cd> u, std::size_t m, std::size_t n) {
    std::vector<cd> w(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) {
        w[k] = u[k] * std::sqrt(std::pow(2.0, static_cast<double>(n)) * binomial(m, k));
    }
    return w;
}

std::vector<cd> u_from_w(std::span<const cd> w, std::size_t m, std::size_t n) {
    std::vector<cd> u(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) {
        u[k] = w[k] / std::sqrt(std::pow(2.0, static_cast<double>(n)) * binomial(m, k));
    }
    return u;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> sample_state(const StateVector& state, std::size_t shots,
                                                                  std::uint64_t seed) {
    std::vector<double> cumulative(state.amplitudes.size());
    long double acc = 0;
    for (std::size_t i = 0; i < state.amplitudes.size(); ++i) {
        acc += std::norm(state.amplitudes[i]);
        cumulative[i] = static_cast<double>(acc);
    }

    SplitMix64 rng(seed);
    std::map<std::uint64_t, std::uint64_t> counts;
    for (std::size_t s = 0; s < shots; ++s) {
        const double u = rng.uniform01() * cumulative.back();
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        const std::uint64_t idx = static_cast<std::uint64_t>(std::distance(cumulative.begin(), it));
        counts[std::min<std::uint64_t>(idx, cumulative.size() - 1)] += 1;
    }
    return {counts.begin(), counts.end()};
}

DqiReport dqi_solve(const MaxLinsatInstance& inst, std::optional<int> ell_override, std::size_t shots,
                    std::uint64_t seed) {
    const std::size_t m = inst.m(), n = inst.n();
    const std::size_t r = inst.r();
    const fp_t p = inst.field.p();

    std::optional<int> dker;
    try {
        dker = kernel_distance(inst);
    } catch (const TooLarge&) {
        dker = std::nullopt;
    }

    int ell;
    if (ell_override) {
        ell = *ell_override;
        if (ell < 0 || static_cast<std::size_t>(ell) > m) throw BadDimension("ell must lie in [0, m]");
        if (dker) {
            const int cap = (*dker > static_cast<int>(m)) ? static_cast<int>(m) : (*dker - 1) / 2;
            if (ell > cap) {
                throw DecoderUnavailable("no unique decoder at radius " + std::to_string(ell) +
                                         "; this instance supports at most " + std::to_string(cap));
            }
        }
    } else {
        if (!dker) {
            throw TooLarge("kernel distance enumeration exceeds the guard; pass an explicit ell");
        }
        ell = (*dker > static_cast<int>(m)) ? static_cast<int>(m) : std::min((*dker - 1) / 2, static_cast<int>(m));
    }

    DqiReport report;
    report.ell = ell;
    report.m = m;
    report.n = n;
    report.r = r;
    report.p = p;
    const double rate = semicircle(static_cast<double>(ell) / static_cast<double>(m),
                                   static_cast<double>(r) / static_cast<double>(p));
    report.semicircle_prediction = rate * static_cast<double>(m);

    bool feasible = true;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n && feasible; ++i) {
        if (total > kStateGuard / p) feasible = false;
        total *= p;
    }
    if (feasible && total > kStateGuard) feasible = false;

    if (feasible) {
        const WeightOptimum opt = optimize_weights(inst, ell);
        const StateVector state = build_dqi_direct(inst, opt.weights);
        report.expected_satisfied = expected_satisfaction(state, inst);
        report.exact = true;
        report.weights.reserve(opt.weights.w.size());
        for (const cd& v : opt.weights.w) report.weights.push_back(v.real());
        if (shots > 0) report.samples = sample_state(state, shots, seed);
    } else {
        report.expected_satisfied = report.semicircle_prediction;
        report.exact = false;
    }
    return report;
}

}  // namespace dqilab
