#ifndef DQILAB_CLI_HPP
#define DQILAB_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dqilab {

// Parsed command-line options. Exactly one of instance_path /
// generation parameters may be set for commands that consume an instance.
struct RunConfig {
    std::string command;  // gen | solve | sweep | verify

    std::optional<std::string> instance_path;
    std::optional<std::string> kind;
    std::optional<std::uint64_t> p;
    std::optional<std::size_t> m;
    std::optional<std::size_t> n;
    std::optional<std::size_t> r;
    std::uint64_t seed = 0;

    std::string method;  // exhaustive | prange | random | dqi
    std::size_t trials = 2000;
    std::size_t samples = 0;
    std::optional<int> ell;

    std::vector<double> grid;
    std::vector<std::string> suites;
    int cases = 1000;

    std::optional<std::string> out_path;
    std::string format = "json";
};

// exit codes: 0 ok, 1 verification failure, 2 invalid parameters,
// 3 decoder unavailable, 4 size guard exceeded
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dqilab

#endif
