#include "dqilab/classical.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

#include "dqilab/rng.hpp"

namespace dqilab {

namespace {

constexpr std::uint64_t kEnumerationGuard = std::uint64_t{1} << 24;

std::uint64_t pow_guarded(fp_t p, std::size_t n) {
    std::uint64_t v = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (v > kEnumerationGuard) return kEnumerationGuard + 1;
        v *= p;
    }
    return v;
}

int satisfied_from_dots(const MaxLinsatInstance& inst, const std::vector<fp_t>& dots) {
    int s = 0;
    for (std::size_t i = 0; i < inst.m(); ++i) s += target_contains(inst.targets[i], dots[i]);
    return s;
}

// chunked parallel-for; results must not depend on the chunking
template <typename Fn>
void parallel_chunks(std::size_t total, Fn&& fn) {
    const std::size_t workers = std::min(worker_count(), total == 0 ? std::size_t{1} : total);
    if (workers <= 1 || total < 128) {
        fn(std::size_t{0}, total);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (total + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(total, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, lo, hi]() { fn(lo, hi); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace

std::size_t worker_count() {
    if (const char* env = std::getenv("DQI_LAB_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<std::size_t>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

SolveReport exhaustive_optimum(const MaxLinsatInstance& inst) {
    const fp_t p = inst.field.p();
    const std::size_t n = inst.n(), m = inst.m();
    const std::uint64_t total = pow_guarded(p, n);
    if (total > kEnumerationGuard) throw TooLarge("p^n exceeds the enumeration guard for exhaustive search");

    SolveReport report;
    report.method = "exhaustive";
    report.evaluations = total;

    // odometer over assignments in lexicographic order with incremental dots
    Assignment x(n, 0);
    std::vector<fp_t> dots(m, 0);
    auto bump = [&](std::size_t j) {
        x[j] = (x[j] + 1) % p;
        for (std::size_t i = 0; i < m; ++i) {
            dots[i] = inst.field.add(dots[i], inst.constraint_matrix.at(i, j));
        }
        return x[j] != 0;
    };

    long double sum = 0;
    int best = -1;
    Assignment best_x;
    for (std::uint64_t step = 0;; ++step) {
        const int sat = satisfied_from_dots(inst, dots);
        sum += sat;
        if (sat > best) {  // first hit in lexicographic order wins ties
            best = sat;
            best_x = x;
        }
        if (step + 1 == total) break;
        std::size_t j = n;
        while (j-- > 0) {
            if (bump(j)) break;
        }
    }

    report.best_x = std::move(best_x);
    report.best_satisfied = best;
    report.mean_satisfied = static_cast<double>(sum / static_cast<long double>(total));
    return report;
}

SolveReport prange_solve(const MaxLinsatInstance& inst, std::size_t trials, std::uint64_t seed) {
    const std::size_t m = inst.m(), n = inst.n();
    if (n > m) throw BadDimension("information-set solving requires n <= m");
    if (rank(inst.constraint_matrix) < n) {
        throw RankDeficient("constraint matrix has no invertible n-row subset");
    }
    if (trials == 0) throw BadDimension("at least one trial required");

    SolveReport report;
    report.method = "prange";
    report.evaluations = trials;
    report.per_trial.assign(trials, 0);
    std::vector<Assignment> solutions(trials);

    parallel_chunks(trials, [&](std::size_t lo, std::size_t hi) {
        std::vector<std::size_t> order(m);
        for (std::size_t t = lo; t < hi; ++t) {
            SplitMix64 rng = substream(seed, t);

            // sample row subsets until the submatrix is invertible
            std::vector<std::size_t> rows_sel;
            FpMatrix sub(n, n, inst.field);
            bool found = false;
            for (int attempt = 0; attempt < 200 && !found; ++attempt) {
                for (std::size_t i = 0; i < m; ++i) order[i] = i;
                for (std::size_t i = 0; i < n; ++i) {
                    const std::size_t j = i + static_cast<std::size_t>(rng.below(m - i));
                    std::swap(order[i], order[j]);
                }
                rows_sel.assign(order.begin(), order.begin() + n);
                for (std::size_t i = 0; i < n; ++i) {
                    for (std::size_t j = 0; j < n; ++j) {
                        sub.set(i, j, inst.constraint_matrix.at(rows_sel[i], j));
                    }
                }
                found = rank(sub) == n;
            }
            if (!found) {
                // deterministic fallback: greedy pivot scan over all rows
                rows_sel.clear();
                FpMatrix probe(0, 0, inst.field);
                std::vector<std::vector<fp_t>> picked;
                for (std::size_t i = 0; i < m && rows_sel.size() < n; ++i) {
                    std::vector<std::vector<fp_t>> cand = picked;
                    cand.emplace_back(inst.constraint_matrix.row(i).begin(),
                                      inst.constraint_matrix.row(i).end());
                    if (rank(FpMatrix::from_rows(cand, inst.field)) == cand.size()) {
                        picked = std::move(cand);
                        rows_sel.push_back(i);
                    }
                }
                for (std::size_t i = 0; i < n; ++i) {
                    for (std::size_t j = 0; j < n; ++j) {
                        sub.set(i, j, inst.constraint_matrix.at(rows_sel[i], j));
                    }
                }
            }

            // one target value per selected row, uniform within its set
            std::vector<fp_t> rhs(n);
            for (std::size_t i = 0; i < n; ++i) {
                const auto& target = inst.targets[rows_sel[i]];
                rhs[i] = target[static_cast<std::size_t>(rng.below(target.size()))];
            }
            const auto solved = solve_square(sub, rhs);
            if (!solved) throw Error("selected information set unexpectedly singular");

            report.per_trial[t] = count_satisfied(inst, *solved);
            solutions[t] = std::move(*solved);
        }
    });

    long double sum = 0;
    int best = -1;
    std::size_t best_idx = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        sum += report.per_trial[t];
        if (report.per_trial[t] > best) {
            best = report.per_trial[t];
            best_idx = t;
        }
    }
    report.best_satisfied = best;
    report.best_x = solutions[best_idx];
    report.mean_satisfied = static_cast<double>(sum / static_cast<long double>(trials));
    return report;
}

SolveReport random_baseline(const MaxLinsatInstance& inst, std::size_t samples, std::uint64_t seed) {
    if (samples == 0) throw BadDimension("at least one sample required");
    const fp_t p = inst.field.p();
    const std::size_t n = inst.n();

    SolveReport report;
    report.method = "random";
    report.evaluations = samples;
    report.per_trial.assign(samples, 0);
    std::vector<Assignment> drawn(samples);

    parallel_chunks(samples, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t t = lo; t < hi; ++t) {
            SplitMix64 rng = substream(seed, t);
            Assignment x(n);
            for (std::size_t j = 0; j < n; ++j) x[j] = rng.below(p);
            report.per_trial[t] = count_satisfied(inst, x);
            drawn[t] = std::move(x);
        }
    });

    long double sum = 0;
    int best = -1;
    std::size_t best_idx = 0;
    for (std::size_t t = 0; t < samples; ++t) {
        sum += report.per_trial[t];
        if (report.per_trial[t] > best) {
            best = report.per_trial[t];
            best_idx = t;
        }
    }
    report.best_satisfied = best;
    report.best_x = drawn[best_idx];
    report.mean_satisfied = static_cast<double>(sum / static_cast<long double>(samples));
    return report;
}

}  // namespace dqilab
