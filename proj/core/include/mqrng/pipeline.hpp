#ifndef MQRNG_PIPELINE_HPP
#define MQRNG_PIPELINE_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mqrng/adc.hpp"
#include "mqrng/bits.hpp"
#include "mqrng/source_model.hpp"

namespace mqrng {

enum class ExtractorKind { raw, cmac, two_source };

const char* to_string(ExtractorKind kind);
ExtractorKind extractor_from_string(const std::string& name);

/// Exact bit-rate arithmetic for the rate table.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;
};

struct RateModel {
    std::int64_t sampling_rate = 0; // samples per second per channel
    int n_extractors = 0;
    Rational bits_per_sample;
};

/// sampling_rate * n_extractors * bits_per_sample, evaluated exactly in
/// integer arithmetic before the final conversion to double.
/// Throws std::domain_error unless every field is positive.
double theoretical_rate(const RateModel& model);

/// Table-style per-sample output fraction for an extractor: 8 for raw,
/// out_bits/16 for cmac, 1/6 for two_source (one bit per six samples
/// consumed across the pair).
Rational bits_per_sample(ExtractorKind kind, int cmac_out_bits = 63);

struct PipelineConfig {
    std::vector<ChannelModel> channels;
    AdcConfig adc;
    ExtractorKind extractor = ExtractorKind::raw;
    std::size_t block_samples = 4096; // per channel per round
    std::vector<std::pair<int, int>> pairing; // two_source channel-id pairs
    int cmac_out_bits = 63;
    double cmac_input_entropy_k = 126.0;
};

/// Rejects: empty or duplicate channels, invalid channel or ADC parameters
/// (std::domain_error from the nested checks), block_samples not a multiple
/// of 16 (cmac) or 3 (two_source), and for two_source any missing, self- or
/// re-paired channel id or an empty pairing (std::invalid_argument).
void validate(const PipelineConfig& cfg);

struct ThroughputReport {
    double wall_seconds = 0.0;
    std::uint64_t total_bits = 0;
    double measured_bps = 0.0;
    double theoretical_bps = 0.0; // at the configured ADC sampling rate
    std::vector<std::string> lane_labels; // "ch<id>" or "pair<a>-<b>"
    std::vector<std::uint64_t> lane_bits;
};

struct PipelineResult {
    BitVector stream;
    ThroughputReport report;
};

/// Runs every lane (channel, or channel pair for two_source) for `rounds`
/// rounds of block_samples samples and interleaves the extractor outputs
/// round-robin at output-unit granularity (8 bits raw, out_bits cmac, 1 bit
/// two_source) in ascending lane order. The stream is a pure function of
/// (cfg, rounds) for any worker count. workers <= 0 uses all hardware
/// threads.
PipelineResult run_pipeline(const PipelineConfig& cfg, std::size_t rounds, int workers = 0);

/// Repeatedly runs the pipeline, discarding output, for at least
/// duration_seconds (>= 1) of wall time; reports measured against
/// theoretical bits per second.
ThroughputReport benchmark_throughput(const PipelineConfig& cfg,
                                      double duration_seconds,
                                      int workers = 0);

} // namespace mqrng

#endif
