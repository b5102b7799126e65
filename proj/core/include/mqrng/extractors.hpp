#ifndef MQRNG_EXTRACTORS_HPP
#define MQRNG_EXTRACTORS_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "mqrng/bits.hpp"

namespace mqrng {

/// Extractor A: keep the 8 least significant bits of every 12-bit code.
std::vector<std::uint8_t> extract_raw(std::span<const std::uint16_t> codes);

/// Extractor B state. Each 16-byte input group is tagged with CMAC-AES-128;
/// the tag's top out_bits become output and its low 128 - out_bits bits are
/// recycled into the next key ahead of the old key's top out_bits.
struct CmacState {
    std::array<std::uint8_t, 16> key{};
    int out_bits = 63;
    double input_entropy_k = 126.0;
};

/// Validates the extraction ratio: out_bits must stay within half the
/// entropy credited to each 128-bit input group (throws std::invalid_argument
/// when out_bits > floor(input_entropy_k / 2), is non-positive, or the
/// entropy claim exceeds the group size).
CmacState make_cmac_state(const std::array<std::uint8_t, 16>& key,
                          int out_bits = 63,
                          double input_entropy_k = 126.0);

/// Deterministic per-channel default key: leading 16 bytes of
/// SHA-256("mqrng-cmac-key" || seed_le64 || channel_id_le32).
std::array<std::uint8_t, 16> default_cmac_key(std::uint64_t seed, std::uint32_t channel_id);

/// Extractor B on one 16-byte group: returns the tag's most significant
/// out_bits in the low bits of the result and refreshes state.key.
std::uint64_t extract_cmac(CmacState& state, const std::array<std::uint8_t, 16>& input);

/// Extractor B over raw.size() / 16 groups, carrying the key refresh across
/// groups. raw.size() must be a multiple of 16 (callers truncate partial
/// groups).
BitVector extract_cmac(CmacState& state, std::span<const std::uint8_t> raw);

/// Three consecutive 12-bit codes packed MSB-first into a 36-bit word.
std::uint64_t pack36(std::uint16_t c0, std::uint16_t c1, std::uint16_t c2);

/// Extractor C kernel: GF(2) inner product of two 36-bit words from distinct
/// channels. Inputs wider than 36 bits are rejected.
std::uint8_t extract_two_source(std::uint64_t x, std::uint64_t y);

/// Extractor C over a channel pair: one bit per aligned group of three
/// samples, min(a.size(), b.size()) / 3 bits in total.
BitVector extract_two_source(std::span<const std::uint16_t> a,
                             std::span<const std::uint16_t> b);

} // namespace mqrng

#endif
