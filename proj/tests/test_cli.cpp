#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "dqilab/cli.hpp"
#include "dqilab/dqi.hpp"
#include "dqilab/problems.hpp"
#include "dqilab/verify.hpp"

using namespace dqilab;

namespace {

struct CliRun {
    int exit_code;
    std::string out;
    std::string err;
};

CliRun run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"dqi-lab"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "dqilab-cli-test";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("gen writes a loadable instance and prints its digest") {
    const auto path = (temp_dir() / "opi.json").string();
    const CliRun run =
        run_cli({"gen", "--kind", "opi", "--p", "7", "--n", "3", "--seed", "42", "--out", path});
    REQUIRE(run.exit_code == 0);

    const auto digest = nlohmann::json::parse(run.out);
    CHECK(digest["p"] == 7);
    CHECK(digest["kind"] == "opi");
    CHECK(digest["m"] == 6);
    CHECK(digest["n"] == 3);
    CHECK(digest["d"] == 4);       // m - n + 1
    CHECK(digest["d_dual"] == 4);  // n + 1

    const MaxLinsatInstance inst = load_instance(path);
    CHECK(inst.kind == InstanceKind::opi);
    CHECK(inst.m() == 6);
    CHECK(inst.n() == 3);
}

TEST_CASE("gen is byte-stable under a fixed seed") {
    const auto a = (temp_dir() / "a.json").string();
    const auto b = (temp_dir() / "b.json").string();
    REQUIRE(run_cli({"gen", "--kind", "generic", "--p", "5", "--m", "5", "--n", "2", "--r", "2",
                     "--seed", "9", "--out", a})
                .exit_code == 0);
    REQUIRE(run_cli({"gen", "--kind", "generic", "--p", "5", "--m", "5", "--n", "2", "--r", "2",
                     "--seed", "9", "--out", b})
                .exit_code == 0);
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("gen enforces the parity-kind target size") {
    const auto path = (temp_dir() / "xs.json").string();
    CHECK(run_cli({"gen", "--kind", "xorsat", "--p", "2", "--m", "4", "--n", "2", "--r", "2",
                   "--out", path})
              .exit_code == 2);
    const CliRun ok =
        run_cli({"gen", "--kind", "xorsat", "--p", "2", "--m", "4", "--n", "2", "--out", path});
    CHECK(ok.exit_code == 0);
    const MaxLinsatInstance inst = load_instance(path);
    CHECK(inst.kind == InstanceKind::xorsat);
    CHECK(inst.r() == 1);
}

TEST_CASE("gen rejects invalid parameters") {
    const auto path = (temp_dir() / "bad.json").string();
    CHECK(run_cli({"gen", "--kind", "opi", "--p", "6", "--n", "3", "--out", path}).exit_code == 2);
    CHECK(run_cli({"gen", "--kind", "nosuch", "--p", "7", "--n", "3", "--out", path}).exit_code == 2);
    CHECK(run_cli({"gen", "--kind", "opi", "--p", "7", "--n", "3"}).exit_code == 2);  // no --out
}

TEST_CASE("solve on the worked fixture finds the optimum") {
    const auto path = (temp_dir() / "fixture.json").string();
    save_instance(example_opi_instance(), path);

    const CliRun run = run_cli({"solve", path, "--method", "exhaustive"});
    REQUIRE(run.exit_code == 0);
    const auto j = nlohmann::json::parse(run.out);
    CHECK(j["method"] == "exhaustive");
    CHECK(j["best_satisfied"] == 5);
    CHECK(j["evaluations"] == 343);
}

TEST_CASE("solve with a flat amplifier reports the uniform rate") {
    const auto path = (temp_dir() / "fixture2.json").string();
    save_instance(example_opi_instance(), path);

    const CliRun run = run_cli({"solve", path, "--method", "dqi", "--ell", "0"});
    REQUIRE(run.exit_code == 0);
    const auto j = nlohmann::json::parse(run.out);
    CHECK(j["mode"] == "exact");
    CHECK(j["expected_satisfied"].get<double>() == doctest::Approx(6.0 * 2.0 / 7.0).epsilon(1e-10));
}

TEST_CASE("interference analysis beats the information-set mean on a large instance") {
    const auto path = (temp_dir() / "big.json").string();
    REQUIRE(run_cli({"gen", "--kind", "opi", "--p", "101", "--n", "10", "--r", "50", "--seed", "7",
                     "--out", path})
                .exit_code == 0);

    const CliRun dqi = run_cli({"solve", path, "--method", "dqi"});
    REQUIRE(dqi.exit_code == 0);
    const auto jd = nlohmann::json::parse(dqi.out);
    CHECK(jd["mode"] == "closed-form");

    const CliRun prange = run_cli({"solve", path, "--method", "prange", "--trials", "400",
                                   "--seed", "11"});
    REQUIRE(prange.exit_code == 0);
    const auto jp = nlohmann::json::parse(prange.out);

    CHECK(jd["expected_satisfied"].get<double>() > jp["mean_satisfied"].get<double>());
}

TEST_CASE("solve maps guard and decoder failures to distinct exit codes") {
    const auto path = (temp_dir() / "too-big.json").string();
    REQUIRE(run_cli({"gen", "--kind", "opi", "--p", "101", "--n", "13", "--r", "50", "--seed", "3",
                     "--out", path})
                .exit_code == 0);
    CHECK(run_cli({"solve", path, "--method", "exhaustive"}).exit_code == 4);

    // both an instance file and generation parameters: invalid
    CHECK(run_cli({"solve", path, "--kind", "opi", "--p", "7", "--n", "3", "--method", "exhaustive"})
              .exit_code == 2);
    CHECK(run_cli({"solve", path, "--method", "nosuch"}).exit_code == 2);
}

TEST_CASE("sweep emits the frozen header and rate columns") {
    const CliRun empty = run_cli({"sweep", "--p", "31", "--grid", ""});
    REQUIRE(empty.exit_code == 0);
    CHECK(empty.out == "x,dqi,prange,semicircle,seed\n");

    const auto path = (temp_dir() / "sweep.csv").string();
    const CliRun run = run_cli({"sweep", "--p", "31", "--grid", "0.1,0.2", "--trials", "200",
                                "--seed", "5", "--out", path});
    REQUIRE(run.exit_code == 0);
    const std::string csv = slurp(path);
    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "x,dqi,prange,semicircle,seed");
    int rows = 0;
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        ++rows;
        std::istringstream cells(line);
        std::string cell;
        std::vector<double> values;
        while (std::getline(cells, cell, ',')) values.push_back(std::stod(cell));
        REQUIRE(values.size() == 5);
        for (int c = 1; c <= 3; ++c) {
            CHECK(values[c] >= 0.0);
            CHECK(values[c] <= 1.0);
        }
        CHECK(values[1] > values[2]);  // interference rate beats the baseline here
    }
    CHECK(rows == 2);

    // byte-stable across runs
    const auto path2 = (temp_dir() / "sweep2.csv").string();
    REQUIRE(run_cli({"sweep", "--p", "31", "--grid", "0.1,0.2", "--trials", "200", "--seed", "5",
                     "--out", path2})
                .exit_code == 0);
    CHECK(slurp(path2) == csv);
}

TEST_CASE("closed-form column saturates at one once targets cover the band") {
    // r/p >= 1 - x at x = 0.4, r = 21, p = 31: rate column must print 1
    const CliRun run = run_cli({"sweep", "--p", "31", "--r", "21", "--grid", "0.4", "--trials", "50",
                                "--seed", "2"});
    REQUIRE(run.exit_code == 0);
    std::istringstream lines(run.out);
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    std::istringstream cells(row);
    std::string cell;
    std::vector<std::string> values;
    while (std::getline(cells, cell, ',')) values.push_back(cell);
    REQUIRE(values.size() == 5);
    CHECK(std::stod(values[3]) == 1.0);
}

TEST_CASE("verify filters suites and reports counters") {
    const CliRun run = run_cli({"verify", "--suite", "poisson", "--cases", "12"});
    REQUIRE(run.exit_code == 0);
    const auto j = nlohmann::json::parse(run.out);
    CHECK(j["suite"] == "poisson");
    CHECK(j["status"] == "pass");
    CHECK(j["cases"] == 13);  // fixture + 12 randomized codes
    CHECK(j["failures"] == 0);

    CHECK(run_cli({"verify", "--suite", "nosuch"}).exit_code == 2);
}

TEST_CASE("solve emits measurement samples on request") {
    const auto path = (temp_dir() / "sampled.json").string();
    save_instance(example_opi_instance(), path);

    const CliRun run = run_cli({"solve", path, "--method", "dqi", "--samples", "2000", "--seed", "6"});
    REQUIRE(run.exit_code == 0);
    const auto j = nlohmann::json::parse(run.out);
    REQUIRE(j.contains("samples"));
    std::uint64_t total = 0;
    for (const auto& entry : j["samples"]) {
        REQUIRE(entry.size() == 2);
        CHECK(entry[0].size() == 3);
        total += entry[1].get<std::uint64_t>();
    }
    CHECK(total == 2000);
}

TEST_CASE("ragged targets stay available to classical solvers only") {
    const PrimeField f5(5);
    const MaxLinsatInstance ragged = make_instance(
        f5, FpMatrix::from_rows({{1, 0}, {0, 1}, {1, 1}}, f5), {{0, 1}, {2}, {0, 3, 4}},
        InstanceKind::generic);
    const auto path = (temp_dir() / "ragged.json").string();
    save_instance(ragged, path);

    const CliRun classical = run_cli({"solve", path, "--method", "exhaustive"});
    CHECK(classical.exit_code == 0);

    const CliRun dqi = run_cli({"solve", path, "--method", "dqi"});
    CHECK(dqi.exit_code == 2);
}

TEST_CASE("a radius past the unique-decoding bound reports the decoder as unavailable") {
    const auto path = (temp_dir() / "narrow.json").string();
    save_instance(build_opi(PrimeField(7), 2, {1, 2, 3, 4, 5, 6},
                            {{0, 1}, {3, 6}, {2, 5}, {3, 6}, {4, 5}, {1, 5}}),
                  path);
    CHECK(run_cli({"solve", path, "--method", "dqi", "--ell", "2"}).exit_code == 3);
    CHECK(run_cli({"solve", path, "--method", "dqi", "--ell", "1"}).exit_code == 0);
}

TEST_CASE("verify agrees with the in-process analysis on the same instance") {
    // the command's expectation must match a direct library computation
    const auto path = (temp_dir() / "cross.json").string();
    REQUIRE(run_cli({"gen", "--kind", "opi", "--p", "7", "--n", "3", "--seed", "13", "--out", path})
                .exit_code == 0);
    const CliRun run = run_cli({"solve", path, "--method", "dqi"});
    REQUIRE(run.exit_code == 0);
    const auto j = nlohmann::json::parse(run.out);

    const MaxLinsatInstance inst = load_instance(path);
    const DqiReport direct = dqi_solve(inst);
    CHECK(j["expected_satisfied"].get<double>() ==
          doctest::Approx(direct.expected_satisfied).epsilon(1e-12));
}

#ifdef DQI_LAB_BINARY
TEST_CASE("installed binary round-trip") {
    const auto dir = temp_dir();
    const auto out = (dir / "bin-smoke.json").string();
    const std::string cmd = std::string(DQI_LAB_BINARY) + " gen --kind opi --p 7 --n 3 --seed 1 --out " +
                            out + " > " + (dir / "digest.txt").string();
    REQUIRE(std::system(cmd.c_str()) == 0);
    CHECK(load_instance(out).m() == 6);
}
#endif
