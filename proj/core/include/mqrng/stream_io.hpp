#ifndef MQRNG_STREAM_IO_HPP
#define MQRNG_STREAM_IO_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "mqrng/bits.hpp"

namespace mqrng {

/// Bitstream container format: the 8-byte magic "MQRNGBIT", a 32-bit
/// little-endian format version (currently 1), the MSB-first packed payload,
/// and a 64-bit little-endian bit-count trailer.
inline constexpr char kBitstreamMagic[8] = {'M', 'Q', 'R', 'N', 'G', 'B', 'I', 'T'};
inline constexpr std::uint32_t kBitstreamVersion = 1;

void write_bitstream(const std::filesystem::path& path, const BitVector& bits);
BitVector read_bitstream(const std::filesystem::path& path);

/// ASCII form: '0'/'1' characters terminated by a newline. The reader also
/// tolerates internal line breaks.
void write_ascii_bits(const std::filesystem::path& path, const BitVector& bits);
BitVector read_ascii_bits(const std::filesystem::path& path);

/// Reads either form, keyed on the magic header.
BitVector read_bits_auto(const std::filesystem::path& path);

/// Raw little-endian arrays for analog samples and ADC codes.
void write_f64(const std::filesystem::path& path, std::span<const double> values);
std::vector<double> read_f64(const std::filesystem::path& path);
void write_u16(const std::filesystem::path& path, std::span<const std::uint16_t> values);
std::vector<std::uint16_t> read_u16(const std::filesystem::path& path);

void write_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path);

/// Byte symbols for the estimators: the payload's complete bytes when the
/// file is a bitstream container, otherwise the file verbatim.
std::vector<std::uint8_t> read_symbols(const std::filesystem::path& path);

std::string sha256_file_hex(const std::filesystem::path& path);

} // namespace mqrng

#endif
