#ifndef DQILAB_VERIFY_HPP
#define DQILAB_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dqilab/codes.hpp"
#include "dqilab/problems.hpp"

namespace dqilab {

struct SuiteResult {
    std::string name;
    int cases = 0;
    int failures = 0;
    std::vector<std::string> messages;  // first few failure descriptions

    bool pass() const { return failures == 0; }
};

inline constexpr std::uint64_t kVerifySeed = 0x20250809ULL;
inline constexpr int kVerifyCases = 1000;

std::vector<std::string> suite_names();

SuiteResult run_suite(const std::string& name, std::uint64_t seed = kVerifySeed, int cases = kVerifyCases);

// empty filter runs everything
std::vector<SuiteResult> run_suites(const std::vector<std::string>& filter, std::uint64_t seed = kVerifySeed,
                                    int cases = kVerifyCases);

// Cross-validation matrix for the state-preparation paths: structured kernels
// push the decoding radius up to 3 at p=2; odd characteristics reach radius 1.
struct TwoPathCase {
    MaxLinsatInstance inst;
    int ell;
    std::string label;
};

std::vector<TwoPathCase> twopath_matrix();

// Example fixtures shared between suites and tests
MaxLinsatInstance example_opi_instance();   // F_7 degree-2 fit, six two-element targets
MaxLinsatInstance example_mopi_instance();  // F_5 bivariate, degree 1
LinearCode example_dual_pair_code();        // F_5^4 two-dimensional code

}  // namespace dqilab

#endif
