#ifndef MQRNG_AES128_HPP
#define MQRNG_AES128_HPP

#include <array>
#include <cstdint>
#include <span>

namespace mqrng {

/// AES-128 forward cipher (FIPS 197). Only encryption is provided; the CMAC
/// construction never needs the inverse.
class Aes128 {
public:
    explicit Aes128(std::span<const std::uint8_t, 16> key);

    void encrypt_block(std::span<const std::uint8_t, 16> in,
                       std::span<std::uint8_t, 16> out) const;

    std::array<std::uint8_t, 16> encrypt(const std::array<std::uint8_t, 16>& in) const;

private:
    std::array<std::uint8_t, 176> round_keys_{};
};

} // namespace mqrng

#endif
