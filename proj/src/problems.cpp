#include "dqilab/problems.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "dqilab/rng.hpp"
#include "json.hpp"

namespace dqilab {

namespace {

void validate_targets(const PrimeField& field, const std::vector<std::vector<fp_t>>& targets) {
    const fp_t p = field.p();
    for (const auto& t : targets) {
        if (t.empty()) throw BadDimension("target set must be nonempty");
        if (t.size() >= p) throw BadDimension("target set must be a strict subset of the field");
        if (!std::is_sorted(t.begin(), t.end())) throw BadDimension("target sets must be sorted");
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (t[i] >= p) throw DomainError("target value outside the field");
            if (i > 0 && t[i] == t[i - 1]) throw BadDimension("duplicate value in target set");
        }
    }
}

std::vector<fp_t> sorted_subset(SplitMix64& rng, fp_t p, std::size_t r) {
    std::vector<fp_t> pool(p);
    for (fp_t v = 0; v < p; ++v) pool[v] = v;
    for (std::size_t i = 0; i < r; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(p - i));
        std::swap(pool[i], pool[j]);
    }
    std::vector<fp_t> out(pool.begin(), pool.begin() + r);
    std::sort(out.begin(), out.end());
    return out;
}

void require_constant_r(const std::vector<std::vector<fp_t>>& targets, const char* what) {
    for (const auto& t : targets) {
        if (t.size() != targets.front().size()) {
            throw RaggedTargets(std::string(what) + " requires a constant target-set size");
        }
    }
}

}  // namespace

std::string kind_name(InstanceKind kind) {
    switch (kind) {
        case InstanceKind::generic: return "generic";
        case InstanceKind::xorsat: return "xorsat";
        case InstanceKind::opi: return "opi";
        case InstanceKind::mopi: return "mopi";
    }
    return "generic";
}

InstanceKind kind_from_name(const std::string& name) {
    if (name == "generic") return InstanceKind::generic;
    if (name == "xorsat") return InstanceKind::xorsat;
    if (name == "opi") return InstanceKind::opi;
    if (name == "mopi") return InstanceKind::mopi;
    throw DomainError("unknown instance kind: " + name);
}

bool MaxLinsatInstance::constant_r() const {
    for (const auto& t : targets) {
        if (t.size() != targets.front().size()) return false;
    }
    return true;
}

std::size_t MaxLinsatInstance::r() const {
    if (targets.empty()) throw BadDimension("instance has no constraints");
    if (!constant_r()) throw RaggedTargets("target-set sizes vary across constraints");
    return targets.front().size();
}

MaxLinsatInstance make_instance(const PrimeField& field, FpMatrix constraint_matrix,
                                std::vector<std::vector<fp_t>> targets, InstanceKind kind) {
    if (targets.size() != constraint_matrix.rows()) {
        throw DimensionMismatch("one target set per constraint row required");
    }
    if (constraint_matrix.rows() == 0 || constraint_matrix.cols() == 0) {
        throw BadDimension("instance needs at least one constraint and one variable");
    }
    validate_targets(field, targets);

    MaxLinsatInstance inst{field, std::move(constraint_matrix), std::move(targets), kind, {}, 0, 0, std::nullopt};
    if (kind == InstanceKind::xorsat) {
        if (field.p() != 2) throw BadDimension("xorsat instances require p = 2");
        for (const auto& t : inst.targets) {
            if (t.size() != 1) throw BadDimension("xorsat instances require singleton targets");
        }
    }
    return inst;
}

bool target_contains(const std::vector<fp_t>& target, fp_t value) {
    return std::binary_search(target.begin(), target.end(), value);
}

int constraint_value(const MaxLinsatInstance& inst, std::size_t i, const Assignment& x) {
    if (i >= inst.m()) throw IndexOutOfRange("constraint index out of range");
    if (x.size() != inst.n()) throw DimensionMismatch("assignment length does not match variable count");
    for (fp_t v : x) {
        if (v >= inst.field.p()) throw DomainError("assignment entry outside the field");
    }
    const fp_t value = dot(inst.constraint_matrix.row(i), x, inst.field);
    return target_contains(inst.targets[i], value) ? 1 : -1;
}

int objective(const MaxLinsatInstance& inst, const Assignment& x) {
    int total = 0;
    for (std::size_t i = 0; i < inst.m(); ++i) total += constraint_value(inst, i, x);
    return total;
}

int count_satisfied(const MaxLinsatInstance& inst, const Assignment& x) {
    return (objective(inst, x) + static_cast<int>(inst.m())) / 2;
}

MaxLinsatInstance build_opi(const PrimeField& field, std::size_t n, std::vector<fp_t> eval_points,
                            std::vector<std::vector<fp_t>> targets) {
    const std::size_t m = eval_points.size();
    if (n < 1 || n > m) throw BadDimension("opi requires 1 <= n <= m");
    if (m >= field.p()) throw BadDimension("opi requires m < p");
    {
        std::vector<fp_t> sorted = eval_points;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw DuplicatePoints("opi evaluation points must be distinct");
        }
    }
    require_constant_r(targets, "opi");

    FpMatrix b(m, n, field);
    for (std::size_t i = 0; i < m; ++i) {
        if (eval_points[i] >= field.p()) throw DomainError("evaluation point outside the field");
        fp_t v = 1;
        for (std::size_t j = 0; j < n; ++j) {
            b.set(i, j, v);
            v = field.mul(v, eval_points[i]);
        }
    }
    MaxLinsatInstance inst = make_instance(field, std::move(b), std::move(targets), InstanceKind::opi);
    inst.points = std::move(eval_points);
    return inst;
}

std::vector<std::vector<unsigned>> mopi_monomials(std::size_t vars, std::size_t degree, fp_t p) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> expo(vars, 0);
    auto recurse = [&](auto&& self, std::size_t var, std::size_t remaining) -> void {
        if (var == vars) {
            out.push_back(expo);
            return;
        }
        const unsigned cap = static_cast<unsigned>(std::min<std::size_t>(remaining, p - 1));
        for (unsigned e = 0; e <= cap; ++e) {
            expo[var] = e;
            self(self, var + 1, remaining - e);
        }
        expo[var] = 0;
    };
    recurse(recurse, 0, degree);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        const unsigned da = std::accumulate(a.begin(), a.end(), 0u);
        const unsigned db = std::accumulate(b.begin(), b.end(), 0u);
        if (da != db) return da < db;
        return a > b;  // earlier variables first within a degree class
    });
    return out;
}

std::vector<std::vector<fp_t>> mopi_points(std::size_t vars, fp_t p) {
    std::vector<std::vector<fp_t>> out;
    std::vector<fp_t> point(vars, 0);
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < vars; ++i) total *= p;
    out.reserve(total);
    for (std::uint64_t t = 0; t < total; ++t) {
        std::uint64_t rest = t;
        for (std::size_t j = 0; j < vars; ++j) {  // first variable fastest
            point[j] = rest % p;
            rest /= p;
        }
        out.push_back(point);
    }
    return out;
}

MaxLinsatInstance build_mopi(const PrimeField& field, std::size_t vars, std::size_t degree,
                             std::vector<std::vector<fp_t>> targets) {
    const fp_t p = field.p();
    if (vars < 1) throw BadDimension("mopi requires at least one variable");
    if (degree > vars * (p - 1)) throw BadDimension("mopi degree exceeds vars*(p-1)");
    const std::vector<std::vector<fp_t>> points = mopi_points(vars, p);
    if (targets.size() != points.size()) {
        throw BadDimension("mopi requires one target set per point of F_p^vars");
    }
    require_constant_r(targets, "mopi");

    const std::vector<std::vector<unsigned>> monomials = mopi_monomials(vars, degree, p);
    FpMatrix b(points.size(), monomials.size(), field);
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = 0; j < monomials.size(); ++j) {
            fp_t v = 1;
            for (std::size_t var = 0; var < vars; ++var) {
                if (monomials[j][var] != 0) v = field.mul(v, field.pow(points[i][var], monomials[j][var]));
            }
            b.set(i, j, v);
        }
    }
    MaxLinsatInstance inst = make_instance(field, std::move(b), std::move(targets), InstanceKind::mopi);
    inst.mopi_vars = vars;
    inst.mopi_degree = degree;
    return inst;
}

MaxLinsatInstance random_instance(const PrimeField& field, std::size_t m, std::size_t n, std::size_t r,
                                  std::uint64_t seed) {
    const fp_t p = field.p();
    if (r < 1 || r > p - 1) throw BadDimension("target-set size must satisfy 1 <= r <= p-1");
    if (m < 1 || n < 1) throw BadDimension("instance needs at least one constraint and one variable");

    SplitMix64 rng(seed);
    FpMatrix b(m, n, field);
    for (int attempt = 0;; ++attempt) {
        if (attempt > 1000) throw Error("failed to sample a usable constraint matrix");
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) b.set(i, j, rng.below(p));
        }
        bool zero_row = false;
        for (std::size_t i = 0; i < m && !zero_row; ++i) {
            const auto row = b.row(i);
            zero_row = std::all_of(row.begin(), row.end(), [](fp_t v) { return v == 0; });
        }
        if (zero_row) continue;
        if (n <= m && rank(b) < n) continue;
        break;
    }

    std::vector<std::vector<fp_t>> targets;
    targets.reserve(m);
    for (std::size_t i = 0; i < m; ++i) targets.push_back(sorted_subset(rng, p, r));

    const InstanceKind kind = (p == 2 && r == 1) ? InstanceKind::xorsat : InstanceKind::generic;
    MaxLinsatInstance inst = make_instance(field, std::move(b), std::move(targets), kind);
    inst.seed = seed;
    return inst;
}

MaxLinsatInstance random_opi(const PrimeField& field, std::size_t n, std::size_t r, std::uint64_t seed) {
    const fp_t p = field.p();
    if (r < 1 || r > p - 1) throw BadDimension("target-set size must satisfy 1 <= r <= p-1");
    const std::size_t m = p - 1;
    if (n < 1 || n > m) throw BadDimension("opi requires 1 <= n <= p-1");

    SplitMix64 rng(seed);
    std::vector<fp_t> points;
    points.reserve(m);
    for (fp_t y = 1; y < p; ++y) points.push_back(y);
    std::vector<std::vector<fp_t>> targets;
    targets.reserve(m);
    for (std::size_t i = 0; i < m; ++i) targets.push_back(sorted_subset(rng, p, r));

    MaxLinsatInstance inst = build_opi(field, n, std::move(points), std::move(targets));
    inst.seed = seed;
    return inst;
}

MaxLinsatInstance random_mopi(const PrimeField& field, std::size_t vars, std::size_t degree, std::size_t r,
                              std::uint64_t seed) {
    const fp_t p = field.p();
    if (r < 1 || r > p - 1) throw BadDimension("target-set size must satisfy 1 <= r <= p-1");
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < vars; ++i) total *= p;

    SplitMix64 rng(seed);
    std::vector<std::vector<fp_t>> targets;
    targets.reserve(total);
    for (std::uint64_t t = 0; t < total; ++t) targets.push_back(sorted_subset(rng, p, r));

    MaxLinsatInstance inst = build_mopi(field, vars, degree, std::move(targets));
    inst.seed = seed;
    return inst;
}

std::string instance_to_json(const MaxLinsatInstance& inst) {
    nlohmann::ordered_json j;
    j["p"] = inst.field.p();
    j["kind"] = kind_name(inst.kind);
    j["B"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < inst.m(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (std::size_t col = 0; col < inst.n(); ++col) row.push_back(inst.constraint_matrix.at(i, col));
        j["B"].push_back(std::move(row));
    }
    j["targets"] = inst.targets;
    if (inst.kind == InstanceKind::opi) j["points"] = inst.points;
    if (inst.kind == InstanceKind::mopi) {
        j["vars"] = inst.mopi_vars;
        j["degree"] = inst.mopi_degree;
    }
    if (inst.seed) j["seed"] = *inst.seed;
    return j.dump(2) + "\n";
}

MaxLinsatInstance instance_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    const PrimeField field(j.at("p").get<fp_t>());
    const InstanceKind kind = kind_from_name(j.at("kind").get<std::string>());
    const auto rows = j.at("B").get<std::vector<std::vector<fp_t>>>();
    auto targets = j.at("targets").get<std::vector<std::vector<fp_t>>>();
    FpMatrix b = FpMatrix::from_rows(rows, field);

    MaxLinsatInstance inst = [&]() {
        if (kind == InstanceKind::opi) {
            auto points = j.at("points").get<std::vector<fp_t>>();
            MaxLinsatInstance built = build_opi(field, b.cols(), std::move(points), std::move(targets));
            if (!(built.constraint_matrix == b)) {
                throw DomainError("opi instance matrix does not match its evaluation points");
            }
            return built;
        }
        if (kind == InstanceKind::mopi) {
            const auto vars = j.at("vars").get<std::size_t>();
            const auto degree = j.at("degree").get<std::size_t>();
            MaxLinsatInstance built = build_mopi(field, vars, degree, std::move(targets));
            if (!(built.constraint_matrix == b)) {
                throw DomainError("mopi instance matrix does not match vars/degree");
            }
            return built;
        }
        return make_instance(field, std::move(b), std::move(targets), kind);
    }();
    if (j.contains("seed")) inst.seed = j.at("seed").get<std::uint64_t>();
    return inst;
}

void save_instance(const MaxLinsatInstance& inst, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << instance_to_json(inst);
}

MaxLinsatInstance load_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return instance_from_json(buf.str());
}

}  // namespace dqilab
