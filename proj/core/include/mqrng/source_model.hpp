#ifndef MQRNG_SOURCE_MODEL_HPP
#define MQRNG_SOURCE_MODEL_HPP

#include <cstdint>
#include <vector>

namespace mqrng {

/// Noise model of one homodyne detector measuring vacuum: a zero-mean
/// Gaussian quantum signal with variance sigma_q2 on top of zero-mean
/// Gaussian electronic noise with variance sigma_e2 (both in volts^2).
/// sigma_q2 holds at local-oscillator power lo_power_ref_mw and scales
/// linearly with LO power; sigma_e2 does not depend on the LO.
struct ChannelModel {
    int channel_id = 0;
    double sigma_q2 = 10.0;
    double sigma_e2 = 1.0;
    double lo_power_ref_mw = 1.0;
    std::uint64_t seed = 0;

    double sigma_m2() const { return sigma_q2 + sigma_e2; }
};

/// Throws std::domain_error unless both variances are positive and the
/// LO reference power is positive. A sigma_q2 of zero (LO off) is produced
/// by scale_with_power and is valid for sampling but not here.
void validate(const ChannelModel& model);

struct AnalogBlock {
    int channel_id = 0;
    std::vector<double> samples; // volts
};

/// Quantum-to-classical noise ratio in dB: 10*log10(sigma_q2/sigma_e2).
double qcnr_db(double sigma_q2, double sigma_e2);

/// sigma_q2 recovered from total and electronic-only variance measurements:
/// sigma_m2 - sigma_e2. Throws std::domain_error when sigma_m2 <= sigma_e2.
double quantum_variance(double sigma_m2, double sigma_e2);

/// n detector output samples starting at stream position first_sample.
/// Sample i draws its quantum and electronic components from dedicated
/// counter positions, so any block is computable independently and the
/// result is a pure function of (model, first_sample, n).
AnalogBlock sample_block(const ChannelModel& model, std::uint64_t first_sample, std::size_t n);

/// Rescales sigma_q2 to a different LO power (linear response through zero);
/// sigma_e2 is untouched. power_mw == 0 gives the electronics-only trace.
ChannelModel scale_with_power(const ChannelModel& model, double power_mw);

/// Sequential reader over one channel: consecutive next_block calls continue
/// the sample stream exactly where the previous call stopped.
class ChannelStream {
public:
    explicit ChannelStream(ChannelModel model) : model_(model) {}

    AnalogBlock next_block(std::size_t n) {
        AnalogBlock b = sample_block(model_, next_, n);
        next_ += n;
        return b;
    }

    const ChannelModel& model() const { return model_; }
    std::uint64_t position() const { return next_; }

private:
    ChannelModel model_;
    std::uint64_t next_ = 0;
};

} // namespace mqrng

#endif
