#ifndef MQRNG_CORRELATION_HPP
#define MQRNG_CORRELATION_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mqrng/bits.hpp"

namespace mqrng {

/// Shared result shape for both correlation analyses. For cross_correlation,
/// values[i] is r at lag i - max_lag; for extractor_strength, values[j] is r
/// at input bit position j (max_lag stays 0). reference is the ideal-uniform
/// scale 1/sqrt(n).
struct CorrelationReport {
    std::string a_id;
    std::string b_id;
    int max_lag = 0;
    std::size_t n = 0;
    double reference = 0.0;
    double max_positive = 0.0; // largest r in the scanned range
    double max_negative = 0.0; // smallest r in the scanned range
    std::vector<double> values;
};

/// Pearson correlation of the mean-centered byte sequences over the overlap
/// window at every lag in [-max_lag, +max_lag]. When a and b hold identical
/// content the self-pairing at lag 0 is excluded from the extrema (it is
/// still present in values). Requires equal lengths n >= 10^4, max_lag <=
/// n / 10, and nonconstant inputs.
CorrelationReport cross_correlation(std::span<const std::uint8_t> a,
                                    std::span<const std::uint8_t> b,
                                    int max_lag);

/// Per-column Pearson correlation between each input bit position and the
/// output bit across n = rows invocations. Constant columns (or a constant
/// output) report r = 0. outputs.size() must equal inputs.rows().
CorrelationReport extractor_strength(const BitMatrix& inputs, const BitVector& outputs);

} // namespace mqrng

#endif
