#ifndef MQRNG_CONFIG_HPP
#define MQRNG_CONFIG_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include "mqrng/pipeline.hpp"

namespace mqrng {

/// Builds a ready-to-run configuration: `channels` channels with the default
/// operating point (sigma_q2 = 10, sigma_e2 = 1, full_scale = 15 V), distinct
/// per-channel seeds derived from base_seed, and for two_source a disjoint
/// pairing of consecutive channel ids.
PipelineConfig default_config(int channels = 7,
                              ExtractorKind kind = ExtractorKind::raw,
                              std::uint64_t base_seed = 1);

/// Flat key-value text with [adc], [pipeline] and [channel <id>] sections;
/// '#' starts a comment. Parse failures throw std::runtime_error carrying
/// "<name>:<line>: <reason>". The parsed config is validated before return.
PipelineConfig parse_config_text(std::string_view text,
                                 const std::string& name = "<config>");
PipelineConfig parse_config(const std::filesystem::path& path);

/// Inverse of parse_config_text: emits a file that parses back to an
/// identical configuration.
std::string config_to_text(const PipelineConfig& cfg);
void write_config(const std::filesystem::path& path, const PipelineConfig& cfg);

} // namespace mqrng

#endif
