#ifndef MQRNG_ADC_HPP
#define MQRNG_ADC_HPP

#include <cstdint>
#include <vector>

#include "mqrng/source_model.hpp"

namespace mqrng {

/// Mid-rise quantizer with clamping saturation. Codes are unsigned and span
/// [-full_scale, +full_scale): code = floor((v + R) / delta), clamped to the
/// code range. The hardware being modeled is a 12-bit converter; smaller
/// widths are supported for reduced-resolution analysis.
struct AdcConfig {
    int bits = 12;
    double full_scale = 0.0;  // R, volts
    double sample_rate = 55e6; // samples per second

    int levels() const { return 1 << bits; }
    int max_code() const { return levels() - 1; }
    double bin_width() const { return 2.0 * full_scale / levels(); }
};

/// Throws std::domain_error on unusable parameters (bits outside [2, 16],
/// non-positive full scale or sample rate).
void validate(const AdcConfig& cfg);

struct DigitizedBlock {
    int channel_id = 0;
    std::vector<std::uint16_t> codes;
    AdcConfig adc;
};

/// Quantizes one voltage. Values below -R saturate to code 0, values at or
/// above +R saturate to the top code. Throws std::invalid_argument on
/// non-finite input.
std::uint16_t quantize(double v, const AdcConfig& cfg);

/// Eight least significant bits of a 12-bit code (code mod 256).
/// Throws std::invalid_argument when code > 4095.
std::uint8_t lsb8(std::uint16_t code);

/// Quantizes a whole block elementwise; length and channel id are preserved.
DigitizedBlock digitize_block(const AnalogBlock& block, const AdcConfig& cfg);

/// Digitization range R that maximizes the worst-case conditional
/// min-entropy for the given channel model: a logarithmic scan over
/// [sigma_m, 32 sigma_m] followed by golden-section refinement to a relative
/// tolerance of 1e-3 on R. Ties break toward smaller R.
/// Throws std::domain_error when sigma_q2 is zero.
double optimize_range(const ChannelModel& model, int bits = 12);

} // namespace mqrng

#endif
