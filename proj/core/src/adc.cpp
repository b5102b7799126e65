#include "mqrng/adc.hpp"

#include <cmath>
#include <stdexcept>

#include "mqrng/entropy.hpp"

namespace mqrng {

void validate(const AdcConfig& cfg) {
    if (cfg.bits < 2 || cfg.bits > 16) {
        throw std::domain_error("AdcConfig: bits must be in [2, 16]");
    }
    if (!(cfg.full_scale > 0.0) || !std::isfinite(cfg.full_scale)) {
        throw std::domain_error("AdcConfig: full_scale must be positive");
    }
    if (!(cfg.sample_rate > 0.0)) {
        throw std::domain_error("AdcConfig: sample_rate must be positive");
    }
}

std::uint16_t quantize(double v, const AdcConfig& cfg) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument("quantize: non-finite sample");
    }
    const double pos = (v + cfg.full_scale) / cfg.bin_width();
    if (pos <= 0.0) {
        return 0;
    }
    if (pos >= cfg.levels()) {
        return static_cast<std::uint16_t>(cfg.max_code());
    }
    const int code = static_cast<int>(pos); // pos >= 0, so truncation == floor
    return static_cast<std::uint16_t>(code > cfg.max_code() ? cfg.max_code() : code);
}

std::uint8_t lsb8(std::uint16_t code) {
    if (code > 4095) {
        throw std::invalid_argument("lsb8: code out of 12-bit range");
    }
    return static_cast<std::uint8_t>(code & 0xFF);
}

DigitizedBlock digitize_block(const AnalogBlock& block, const AdcConfig& cfg) {
    validate(cfg);
    DigitizedBlock out;
    out.channel_id = block.channel_id;
    out.adc = cfg;
    out.codes.resize(block.samples.size());
    for (std::size_t i = 0; i < block.samples.size(); ++i) {
        out.codes[i] = quantize(block.samples[i], cfg);
    }
    return out;
}

double optimize_range(const ChannelModel& model, int bits) {
    if (!(model.sigma_q2 > 0.0)) {
        throw std::domain_error("optimize_range: sigma_q2 must be positive");
    }
    if (!(model.sigma_e2 >= 0.0)) {
        throw std::domain_error("optimize_range: sigma_e2 must be non-negative");
    }
    const double sigma_m = std::sqrt(model.sigma_m2());

    const auto entropy_at = [&](double r) {
        ConditionalModel cm;
        cm.sigma_q2 = model.sigma_q2;
        cm.sigma_e2 = model.sigma_e2;
        cm.adc.bits = bits;
        cm.adc.full_scale = r;
        return worst_case_min_entropy(cm);
    };

    // Coarse scan on a log axis. Strict improvement keeps the smallest
    // maximizing R when the objective plateaus.
    const double lo = std::log(sigma_m);
    const double hi = std::log(32.0 * sigma_m);
    constexpr int kScanPoints = 49;
    int best = 0;
    double best_h = -1.0;
    for (int i = 0; i < kScanPoints; ++i) {
        const double x = lo + (hi - lo) * i / (kScanPoints - 1);
        const double h = entropy_at(std::exp(x));
        if (h > best_h) {
            best_h = h;
            best = i;
        }
    }

    const double step = (hi - lo) / (kScanPoints - 1);
    double a = lo + step * (best > 0 ? best - 1 : 0);
    double b = lo + step * (best < kScanPoints - 1 ? best + 1 : kScanPoints - 1);

    // Golden-section on log(R); the objective is unimodal in R (the center
    // bin mass grows with R while the saturation mass shrinks).
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = entropy_at(std::exp(x1));
    double f2 = entropy_at(std::exp(x2));
    while ((b - a) > 1e-3) { // log-space width == relative tolerance on R
        if (f1 >= f2) { // prefer the left interval on ties: smaller R
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = entropy_at(std::exp(x1));
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = entropy_at(std::exp(x2));
        }
    }
    return std::exp(f1 >= f2 ? x1 : x2);
}

} // namespace mqrng
