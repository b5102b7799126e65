#ifndef MQRNG_STS_HPP
#define MQRNG_STS_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "mqrng/bits.hpp"

namespace mqrng {

struct TestResult {
    std::string name;
    double statistic = 0.0;
    double p_value = 0.0;
    bool pass = false; // p_value >= 0.01
};

struct TestReport {
    bool pass = false; // AND of the per-test flags
    std::size_t bit_count = 0;
    std::vector<TestResult> results;
};

/// Seven-test SP 800-22 subset: monobit frequency, block frequency (M = 128),
/// runs, longest run of ones, cumulative sums (both directions), serial
/// (m = 16, two p-values) and approximate entropy (m = 10). Nine p-values in
/// total; each test passes at p >= 0.01. Requires at least 10^6 bits.
TestReport run_sts_subset(const BitVector& bits);

} // namespace mqrng

#endif
