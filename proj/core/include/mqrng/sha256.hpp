#ifndef MQRNG_SHA256_HPP
#define MQRNG_SHA256_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>

namespace mqrng {

/// Incremental SHA-256 (FIPS 180-4). Used for output-file digests in run
/// manifests and for pipeline determinism checks.
class Sha256 {
public:
    Sha256();
    void update(std::span<const std::uint8_t> data);
    std::array<std::uint8_t, 32> finish();

    static std::array<std::uint8_t, 32> digest(std::span<const std::uint8_t> data);
    static std::string hex(const std::array<std::uint8_t, 32>& d);

private:
    void process_block(const std::uint8_t* p);

    std::array<std::uint32_t, 8> state_;
    std::array<std::uint8_t, 64> buf_;
    std::size_t buf_len_ = 0;
    std::uint64_t total_len_ = 0;
};

} // namespace mqrng

#endif
