#include "mqrng/source_model.hpp"

#include <cmath>
#include <stdexcept>

#include "mqrng/philox.hpp"

namespace mqrng {

void validate(const ChannelModel& model) {
    if (!(model.sigma_q2 > 0.0) || !std::isfinite(model.sigma_q2)) {
        throw std::domain_error("ChannelModel: sigma_q2 must be positive");
    }
    if (!(model.sigma_e2 > 0.0) || !std::isfinite(model.sigma_e2)) {
        throw std::domain_error("ChannelModel: sigma_e2 must be positive");
    }
    if (!(model.lo_power_ref_mw > 0.0)) {
        throw std::domain_error("ChannelModel: lo_power_ref_mw must be positive");
    }
}

double qcnr_db(double sigma_q2, double sigma_e2) {
    if (!(sigma_q2 > 0.0) || !(sigma_e2 > 0.0)) {
        throw std::domain_error("qcnr_db: variances must be positive");
    }
    return 10.0 * std::log10(sigma_q2 / sigma_e2);
}

double quantum_variance(double sigma_m2, double sigma_e2) {
    if (!(sigma_e2 >= 0.0)) {
        throw std::domain_error("quantum_variance: sigma_e2 must be non-negative");
    }
    if (!(sigma_m2 > sigma_e2)) {
        throw std::domain_error("quantum_variance: sigma_m2 must exceed sigma_e2");
    }
    return sigma_m2 - sigma_e2;
}

AnalogBlock sample_block(const ChannelModel& model, std::uint64_t first_sample, std::size_t n) {
    if (model.sigma_q2 < 0.0 || model.sigma_e2 < 0.0) {
        throw std::domain_error("sample_block: negative variance");
    }
    const double sq = std::sqrt(model.sigma_q2);
    const double se = std::sqrt(model.sigma_e2);
    const CounterRng rng(model.seed);
    AnalogBlock block;
    block.channel_id = model.channel_id;
    block.samples.resize(n);
    // Sample i owns normal positions 2i (quantum) and 2i+1 (electronic), one
    // counter block per sample. Power sweeps therefore rescale the same
    // underlying noise realization instead of drawing a fresh one.
    constexpr std::size_t kChunk = 1 << 16;
    std::vector<double> z(2 * std::min(n, kChunk));
    std::size_t done = 0;
    while (done < n) {
        const std::size_t m = std::min(kChunk, n - done);
        rng.normals(2 * (first_sample + done), {z.data(), 2 * m});
        for (std::size_t i = 0; i < m; ++i) {
            block.samples[done + i] = sq * z[2 * i] + se * z[2 * i + 1];
        }
        done += m;
    }
    return block;
}

ChannelModel scale_with_power(const ChannelModel& model, double power_mw) {
    if (!(power_mw >= 0.0)) {
        throw std::domain_error("scale_with_power: power must be non-negative");
    }
    if (!(model.lo_power_ref_mw > 0.0)) {
        throw std::domain_error("scale_with_power: lo_power_ref_mw must be positive");
    }
    ChannelModel scaled = model;
    scaled.sigma_q2 = model.sigma_q2 * (power_mw / model.lo_power_ref_mw);
    return scaled;
}

} // namespace mqrng
