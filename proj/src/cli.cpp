#include "dqilab/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dqilab/classical.hpp"
#include "dqilab/dqi.hpp"
#include "dqilab/problems.hpp"
#include "dqilab/verify.hpp"
#include "json.hpp"

namespace dqilab {

namespace {

std::string fmt_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

MaxLinsatInstance generate_instance(const RunConfig& cfg) {
    if (!cfg.kind) throw BadDimension("--kind is required to generate an instance");
    const std::string& kind = *cfg.kind;
    if (!cfg.p) throw BadDimension("--p is required to generate an instance");
    const PrimeField field(*cfg.p);

    if (kind == "opi") {
        if (!cfg.n) throw BadDimension("--n (coefficient count) is required for opi");
        const std::size_t r = cfg.r.value_or(std::max<std::size_t>(1, field.p() / 2));
        return random_opi(field, *cfg.n, r, cfg.seed);
    }
    if (kind == "xorsat") {
        if (field.p() != 2) throw BadDimension("xorsat requires --p 2");
        if (cfg.r && *cfg.r != 1) throw BadDimension("xorsat requires r = 1");
        if (!cfg.m || !cfg.n) throw BadDimension("--m and --n are required for xorsat");
        return random_instance(field, *cfg.m, *cfg.n, 1, cfg.seed);
    }
    if (kind == "generic") {
        if (!cfg.m || !cfg.n || !cfg.r) throw BadDimension("--m, --n and --r are required for generic");
        return random_instance(field, *cfg.m, *cfg.n, *cfg.r, cfg.seed);
    }
    if (kind == "mopi") {
        // --m is the variable count, --n the total-degree bound
        if (!cfg.m || !cfg.n) throw BadDimension("--m (variables) and --n (degree) are required for mopi");
        const std::size_t r = cfg.r.value_or(std::max<std::size_t>(1, field.p() / 2));
        return random_mopi(field, *cfg.m, *cfg.n, r, cfg.seed);
    }
    throw DomainError("unknown kind: " + kind);
}

MaxLinsatInstance obtain_instance(const RunConfig& cfg) {
    const bool has_params = cfg.kind.has_value() || cfg.p.has_value();
    if (cfg.instance_path && has_params) {
        throw BadDimension("pass either an instance file or generation parameters, not both");
    }
    if (cfg.instance_path) return load_instance(*cfg.instance_path);
    if (has_params) return generate_instance(cfg);
    throw BadDimension("an instance file or generation parameters are required");
}

nlohmann::ordered_json instance_digest(const MaxLinsatInstance& inst) {
    nlohmann::ordered_json digest;
    digest["p"] = inst.field.p();
    digest["kind"] = kind_name(inst.kind);
    digest["m"] = inst.m();
    digest["n"] = inst.n();
    if (inst.constant_r()) {
        digest["r"] = inst.r();
    } else {
        digest["r"] = nullptr;
    }
    try {
        digest["d"] = rowspace_distance(inst);
    } catch (const Error&) {
        digest["d"] = nullptr;
    }
    try {
        digest["d_dual"] = kernel_distance(inst);
    } catch (const Error&) {
        digest["d_dual"] = nullptr;
    }
    return digest;
}

int cmd_gen(const RunConfig& cfg, std::ostream& out) {
    const MaxLinsatInstance inst = generate_instance(cfg);
    if (!cfg.out_path) throw BadDimension("--out is required for gen");
    save_instance(inst, *cfg.out_path);
    out << instance_digest(inst).dump() << "\n";
    return 0;
}

nlohmann::ordered_json report_to_json(const SolveReport& report, const MaxLinsatInstance& inst) {
    nlohmann::ordered_json j;
    j["method"] = report.method;
    j["p"] = inst.field.p();
    j["kind"] = kind_name(inst.kind);
    j["m"] = inst.m();
    j["n"] = inst.n();
    j["best_x"] = report.best_x;
    j["best_satisfied"] = report.best_satisfied;
    j["mean_satisfied"] = report.mean_satisfied;
    j["evaluations"] = report.evaluations;
    return j;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
    const MaxLinsatInstance inst = obtain_instance(cfg);
    nlohmann::ordered_json j;

    if (cfg.method == "exhaustive") {
        j = report_to_json(exhaustive_optimum(inst), inst);
    } else if (cfg.method == "prange") {
        j = report_to_json(prange_solve(inst, cfg.trials, cfg.seed), inst);
    } else if (cfg.method == "random") {
        const std::size_t samples = cfg.samples > 0 ? cfg.samples : 10000;
        j = report_to_json(random_baseline(inst, samples, cfg.seed), inst);
    } else if (cfg.method == "dqi") {
        const DqiReport report = dqi_solve(inst, cfg.ell, cfg.samples, cfg.seed);
        j["method"] = "dqi";
        j["p"] = report.p;
        j["kind"] = kind_name(inst.kind);
        j["m"] = report.m;
        j["n"] = report.n;
        j["r"] = report.r;
        j["ell"] = report.ell;
        j["mode"] = report.exact ? "exact" : "closed-form";
        j["expected_satisfied"] = report.expected_satisfied;
        j["semicircle_prediction"] = report.semicircle_prediction;
        j["weights"] = report.weights;
        if (!report.samples.empty()) {
            nlohmann::ordered_json samples = nlohmann::ordered_json::array();
            for (const auto& [index, count] : report.samples) {
                samples.push_back({digits_of(index, inst.n(), inst.field.p()), count});
            }
            j["samples"] = std::move(samples);
        }
    } else {
        throw DomainError("unknown method: " + cfg.method);
    }

    const std::string text = j.dump() + "\n";
    out << text;
    if (cfg.out_path) {
        std::ofstream file(*cfg.out_path, std::ios::binary);
        if (!file) throw Error("cannot open " + *cfg.out_path);
        file << text;
    }
    return 0;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.p) throw BadDimension("--p is required for sweep");
    const PrimeField field(*cfg.p);
    const std::size_t r = cfg.r.value_or(std::max<std::size_t>(1, field.p() / 2));

    std::ostringstream csv;
    csv << "x,dqi,prange,semicircle,seed\n";
    for (std::size_t idx = 0; idx < cfg.grid.size(); ++idx) {
        const double x = cfg.grid[idx];
        if (!(x > 0.0 && x < 1.0)) throw DomainError("grid points must lie in (0, 1)");
        const std::size_t n =
            std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(x * static_cast<double>(field.p()))));
        const std::uint64_t point_seed = cfg.seed + idx;

        const MaxLinsatInstance inst = random_opi(field, n, r, point_seed);
        const double mm = static_cast<double>(inst.m());

        const DqiReport dqi = dqi_solve(inst);
        const SolveReport prange = prange_solve(inst, cfg.trials, point_seed);
        // reference curve: the closed form read at the grid abscissa itself
        const double closed = semicircle(x, static_cast<double>(r) / static_cast<double>(field.p()));

        csv << fmt_real(x) << ',' << fmt_real(dqi.expected_satisfied / mm) << ','
            << fmt_real(prange.mean_satisfied / mm) << ',' << fmt_real(closed) << ',' << point_seed << "\n";
    }

    if (cfg.out_path) {
        std::ofstream file(*cfg.out_path, std::ios::binary);
        if (!file) throw Error("cannot open " + *cfg.out_path);
        file << csv.str();
    } else {
        out << csv.str();
    }
    return 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    const std::vector<SuiteResult> results = run_suites(cfg.suites, cfg.seed ? cfg.seed : kVerifySeed, cfg.cases);
    bool all_pass = true;
    for (const SuiteResult& suite : results) {
        nlohmann::ordered_json j;
        j["suite"] = suite.name;
        j["cases"] = suite.cases;
        j["failures"] = suite.failures;
        j["status"] = suite.pass() ? "pass" : "fail";
        if (!suite.messages.empty()) j["details"] = suite.messages;
        out << j.dump() << "\n";
        all_pass = all_pass && suite.pass();
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;

    CLI::App app{"classical laboratory for decoded-interferometry optimization"};
    app.require_subcommand(1);

    std::string grid_spec;
    std::uint64_t p_value = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--p", p_value, "field characteristic");
        sub->add_option("--m", cfg.m, "constraint count (mopi: variable count)");
        sub->add_option("--n", cfg.n, "variable count (mopi: degree bound)");
        sub->add_option("--r", cfg.r, "target-set size");
        sub->add_option("--kind", cfg.kind, "instance kind: generic|xorsat|opi|mopi");
        sub->add_option("--seed", cfg.seed, "random seed");
    };

    CLI::App* gen = app.add_subcommand("gen", "generate an instance file");
    add_common(gen);
    gen->add_option("--out", cfg.out_path, "output path");
    gen->add_option("--format", cfg.format, "output format (json)");

    CLI::App* solve = app.add_subcommand("solve", "run one solver on one instance");
    solve->add_option("instance", cfg.instance_path, "instance file");
    add_common(solve);
    solve->add_option("--method", cfg.method, "exhaustive|prange|random|dqi")->required();
    solve->add_option("--trials", cfg.trials, "trial count for trial-based solvers");
    solve->add_option("--samples", cfg.samples, "sample count (random baseline / dqi shots)");
    solve->add_option("--ell", cfg.ell, "amplifying polynomial degree override");
    solve->add_option("--out", cfg.out_path, "also write the report here");

    CLI::App* sweep = app.add_subcommand("sweep", "emit rate-comparison rows over an n/p grid");
    add_common(sweep);
    sweep->add_option("--grid", grid_spec, "comma-separated n/p grid points");
    sweep->add_option("--trials", cfg.trials, "Monte-Carlo trials per grid point");
    sweep->add_option("--out", cfg.out_path, "CSV output path");
    sweep->add_option("--format", cfg.format, "output format (csv)");

    CLI::App* verify = app.add_subcommand("verify", "run the property suites");
    verify->add_option("--suite", cfg.suites, "suite filter (repeatable)");
    verify->add_option("--seed", cfg.seed, "randomization seed");
    verify->add_option("--cases", cfg.cases, "randomized cases per suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    if (p_value != 0) cfg.p = p_value;

    try {
        if (gen->parsed()) {
            cfg.command = "gen";
            return cmd_gen(cfg, out);
        }
        if (solve->parsed()) {
            cfg.command = "solve";
            return cmd_solve(cfg, out);
        }
        if (sweep->parsed()) {
            cfg.command = "sweep";
            if (!grid_spec.empty()) {
                std::stringstream ss(grid_spec);
                std::string tok;
                while (std::getline(ss, tok, ',')) {
                    if (!tok.empty()) cfg.grid.push_back(std::stod(tok));
                }
            }
            return cmd_sweep(cfg, out);
        }
        cfg.command = "verify";
        return cmd_verify(cfg, out);
    } catch (const TooLarge& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const DecoderUnavailable& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const AmbiguousSolution& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace dqilab
