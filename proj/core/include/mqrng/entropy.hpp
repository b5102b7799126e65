#ifndef MQRNG_ENTROPY_HPP
#define MQRNG_ENTROPY_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mqrng/adc.hpp"

namespace mqrng {

/// Inputs for the worst-case conditional min-entropy of the digitized
/// measurement given the classical noise value e. The classical spread is
/// capped at e_max = 5 * sigma_e; the outer maximization runs over a
/// symmetric e-grid of e_grid_points (odd, >= 1001) with local refinement.
struct ConditionalModel {
    double sigma_q2 = 10.0;
    double sigma_e2 = 1.0;
    AdcConfig adc;
    int e_grid_points = 1001;

    double e_max() const;
};

/// P(code = bin | E = e): mass of a Normal(e, sigma_q2) variate over the
/// bin's voltage interval. Bins 0 and max absorb the saturated tails.
double conditional_bin_prob(int bin, double e, const ConditionalModel& model);

/// -log2 of the largest conditional bin probability over e in
/// [-e_max, +e_max], refined near the argmax well past the 1e-4 bit
/// stopping requirement. Throws std::domain_error when sigma_q2 is zero.
double worst_case_min_entropy(const ConditionalModel& model);

/// Most-common-value min-entropy estimate with a 99% upper confidence
/// bound on the modal probability (SP 800-90B section 6.3.1 style).
struct McvEstimate {
    double p_hat = 0.0;
    double p_upper = 1.0;
    double bits = 0.0;
    std::size_t sample_count = 0;
};

McvEstimate mcv_min_entropy(std::span<const std::uint8_t> symbols, int alphabet_size = 256);
McvEstimate mcv_min_entropy(std::span<const std::uint16_t> symbols, int alphabet_size);

/// One statistic of the shuffle battery: the value on the original ordering
/// and its standing among the shuffled recomputations.
struct IidStatistic {
    std::string name;
    double original = 0.0;
    int count_greater = 0; // shuffles strictly above the original
    int count_equal = 0;
    bool fail = false;
};

struct IidReport {
    bool pass = false;
    std::size_t sample_count = 0;
    int num_shuffles = 0;
    std::vector<IidStatistic> statistics;
};

/// SP 800-90B style IID permutation test over byte symbols. Computes
/// excursion, directional-run, median-run, collision, periodicity and
/// covariance statistics on the original sequence and on num_shuffles
/// seeded Fisher-Yates shuffles; a statistic fails when the original ranks
/// in the extreme 0.05% of either tail. Requires >= 1e5 samples and
/// >= 100 shuffles. workers = 0 uses all hardware threads.
IidReport iid_permutation_test(std::span<const std::uint8_t> symbols,
                               int num_shuffles = 1000,
                               std::uint64_t seed = 0,
                               int workers = 0);

/// Combined evaluation artifact: the analytic worst-case bound (NaN when no
/// channel model was supplied) plus the empirical estimates.
struct EntropyReport {
    double h_min_conditional;
    McvEstimate mcv;
    IidReport iid;
    std::size_t sample_count = 0;
};

} // namespace mqrng

#endif
