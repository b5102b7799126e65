#include "mqrng/cmac.hpp"

#include <cstring>

namespace mqrng {

namespace {

// GF(2^128) doubling: left shift by one, fold the carry into x^7+x^2+x+1.
std::array<std::uint8_t, 16> dbl(const std::array<std::uint8_t, 16>& in) {
    std::array<std::uint8_t, 16> out;
    std::uint8_t carry = 0;
    for (int i = 15; i >= 0; --i) {
        out[i] = static_cast<std::uint8_t>((in[i] << 1) | carry);
        carry = in[i] >> 7;
    }
    if (carry)
        out[15] ^= 0x87;
    return out;
}

} // namespace

CmacAes128::CmacAes128(std::span<const std::uint8_t, 16> key) : aes_(key) {
    std::array<std::uint8_t, 16> zero{};
    k1_ = dbl(aes_.encrypt(zero));
    k2_ = dbl(k1_);
}

std::array<std::uint8_t, 16> CmacAes128::mac(std::span<const std::uint8_t> message) const {
    const std::size_t n = message.size();
    const std::size_t full = n == 0 ? 0 : (n - 1) / 16;

    std::array<std::uint8_t, 16> x{};
    std::array<std::uint8_t, 16> buf;
    for (std::size_t b = 0; b < full; ++b) {
        for (int i = 0; i < 16; ++i)
            buf[i] = x[i] ^ message[16 * b + i];
        x = aes_.encrypt(buf);
    }

    std::array<std::uint8_t, 16> last{};
    const std::size_t rem = n - 16 * full;
    if (rem == 16) {
        for (int i = 0; i < 16; ++i)
            last[i] = message[16 * full + i] ^ k1_[i];
    } else {
        std::memcpy(last.data(), message.data() + 16 * full, rem);
        last[rem] = 0x80;
        for (int i = 0; i < 16; ++i)
            last[i] ^= k2_[i];
    }
    for (int i = 0; i < 16; ++i)
        buf[i] = x[i] ^ last[i];
    return aes_.encrypt(buf);
}

} // namespace mqrng
