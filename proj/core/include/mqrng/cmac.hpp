#ifndef MQRNG_CMAC_HPP
#define MQRNG_CMAC_HPP

#include <array>
#include <cstdint>
#include <span>

#include "mqrng/aes128.hpp"

namespace mqrng {

/// CMAC with AES-128 (RFC 4493 / SP 800-38B). Handles empty and
/// non-block-aligned messages via the usual K1/K2 subkey split.
class CmacAes128 {
public:
    explicit CmacAes128(std::span<const std::uint8_t, 16> key);

    std::array<std::uint8_t, 16> mac(std::span<const std::uint8_t> message) const;

private:
    Aes128 aes_;
    std::array<std::uint8_t, 16> k1_{};
    std::array<std::uint8_t, 16> k2_{};
};

} // namespace mqrng

#endif
