#include "dqilab/gf.hpp"

#include <algorithm>

namespace dqilab {

namespace {

bool is_prime_u64(fp_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (fp_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

}  // namespace

PrimeField::PrimeField(fp_t p) : p_(p) {
    if (p >= (fp_t{1} << 31)) {
        throw InvalidModulus("field modulus must fit below 2^31, got " + std::to_string(p));
    }
    if (!is_prime_u64(p)) {
        throw InvalidModulus("field modulus must be prime (extension fields p^l, l > 1 are not supported), got " +
                             std::to_string(p));
    }
}

fp_t PrimeField::pow(fp_t base, std::uint64_t exp) const {
    fp_t result = 1 % p_;
    base %= p_;
    while (exp > 0) {
        if (exp & 1) result = mul(result, base);
        base = mul(base, base);
        exp >>= 1;
    }
    return result;
}

fp_t PrimeField::inv(fp_t a) const {
    if (a == 0) throw ZeroInverse("0 has no multiplicative inverse");
    return pow(a, p_ - 2);
}

bool is_primitive(fp_t g, const PrimeField& field) {
    if (g == 0) return false;
    const fp_t p = field.p();
    // order of g must be exactly p-1
    fp_t x = g % p;
    std::uint64_t order = 1;
    while (x != 1) {
        x = field.mul(x, g);
        ++order;
    }
    return order == p - 1;
}

int FpPoly::degree() const {
    for (std::size_t j = coeffs.size(); j-- > 0;) {
        if (coeffs[j] != 0) return static_cast<int>(j);
    }
    return -1;
}

FpPoly poly_reduce(std::span<const std::int64_t> int_coeffs, const PrimeField& field) {
    FpPoly out{field, {}};
    out.coeffs.reserve(int_coeffs.size());
    for (std::int64_t c : int_coeffs) out.coeffs.push_back(field.reduce(c));
    return out;
}

fp_t poly_eval(const FpPoly& poly, fp_t x) {
    const PrimeField& f = poly.field;
    fp_t acc = 0;
    for (std::size_t j = poly.coeffs.size(); j-- > 0;) {
        acc = f.add(f.mul(acc, x), poly.coeffs[j]);
    }
    return acc;
}

FpMatrix::FpMatrix(std::size_t rows, std::size_t cols, const PrimeField& field)
    : rows_(rows), cols_(cols), field_(field), data_(rows * cols, 0) {}

FpMatrix FpMatrix::from_rows(const std::vector<std::vector<fp_t>>& rows, const PrimeField& field) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows[0].size();
    FpMatrix m(r, c, field);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw DimensionMismatch("ragged rows in matrix literal");
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

void FpMatrix::set(std::size_t i, std::size_t j, fp_t v) {
    if (v >= field_.p()) throw DomainError("matrix entry out of field range");
    data_[i * cols_ + j] = v;
}

FpMatrix FpMatrix::transposed() const {
    FpMatrix t(cols_, rows_, field_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) t.set(j, i, at(i, j));
    }
    return t;
}

fp_t dot(std::span<const fp_t> a, std::span<const fp_t> b, const PrimeField& field) {
    if (a.size() != b.size()) throw DimensionMismatch("dot product length mismatch");
    fp_t acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc = field.add(acc, field.mul(a[i], b[i]));
    return acc;
}

std::vector<fp_t> vec_mat(std::span<const fp_t> v, const FpMatrix& m) {
    if (v.size() != m.rows()) throw DimensionMismatch("vector-matrix length mismatch");
    const PrimeField& f = m.field();
    std::vector<fp_t> out(m.cols(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (v[i] == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out[j] = f.add(out[j], f.mul(v[i], m.at(i, j)));
        }
    }
    return out;
}

FpMatrix mat_mul(const FpMatrix& a, const FpMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape mismatch");
    const PrimeField& f = a.field();
    FpMatrix out(a.rows(), b.cols(), f);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const fp_t aik = a.at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out.set(i, j, f.add(out.at(i, j), f.mul(aik, b.at(k, j))));
            }
        }
    }
    return out;
}

std::vector<std::size_t> rref(FpMatrix& m) {
    const PrimeField& f = m.field();
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::vector<fp_t>> a(rows, std::vector<fp_t>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) a[i][j] = m.at(i, j);
    }

    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t sel = row;
        while (sel < rows && a[sel][col] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(a[sel], a[row]);
        const fp_t pivinv = f.inv(a[row][col]);
        for (std::size_t j = col; j < cols; ++j) a[row][j] = f.mul(a[row][j], pivinv);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == row || a[i][col] == 0) continue;
            const fp_t factor = a[i][col];
            for (std::size_t j = col; j < cols; ++j) {
                a[i][j] = f.sub(a[i][j], f.mul(factor, a[row][j]));
            }
        }
        pivots.push_back(col);
        ++row;
    }

    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) m.set(i, j, a[i][j]);
    }
    return pivots;
}

std::size_t rank(FpMatrix m) { return rref(m).size(); }

FpMatrix nullspace_basis(const FpMatrix& m) {
    FpMatrix r = m;
    const std::vector<std::size_t> pivots = rref(r);
    const PrimeField& f = m.field();
    const std::size_t cols = m.cols();

    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;

    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < cols; ++c) {
        if (!is_pivot[c]) free_cols.push_back(c);
    }

    FpMatrix basis(free_cols.size(), cols, f);
    for (std::size_t b = 0; b < free_cols.size(); ++b) {
        const std::size_t fc = free_cols[b];
        basis.set(b, fc, 1);
        // pivot row i fixes coordinate pivots[i]: x_piv = -r[i][fc]
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            basis.set(b, pivots[i], f.neg(r.at(i, fc)));
        }
    }
    return basis;
}

std::optional<std::vector<fp_t>> solve_square(const FpMatrix& a, std::span<const fp_t> b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) throw DimensionMismatch("solve_square expects n x n and length-n rhs");
    const PrimeField& f = a.field();

    std::vector<std::vector<fp_t>> aug(n, std::vector<fp_t>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = a.at(i, j);
        aug[i][n] = b[i];
    }

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t sel = col;
        while (sel < n && aug[sel][col] == 0) ++sel;
        if (sel == n) return std::nullopt;
        std::swap(aug[sel], aug[col]);
        const fp_t pivinv = f.inv(aug[col][col]);
        for (std::size_t j = col; j <= n; ++j) aug[col][j] = f.mul(aug[col][j], pivinv);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || aug[i][col] == 0) continue;
            const fp_t factor = aug[i][col];
            for (std::size_t j = col; j <= n; ++j) {
                aug[i][j] = f.sub(aug[i][j], f.mul(factor, aug[col][j]));
            }
        }
    }

    std::vector<fp_t> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = aug[i][n];
    return x;
}

}  // namespace dqilab
