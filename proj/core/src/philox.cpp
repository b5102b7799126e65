#include "mqrng/philox.hpp"

#include <cmath>
#include <numbers>

namespace mqrng {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void round_once(std::array<std::uint32_t, 4>& c, std::uint32_t k0, std::uint32_t k1) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
    c = {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k0,
         static_cast<std::uint32_t>(p1),
         static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k1,
         static_cast<std::uint32_t>(p0)};
}

// 53-bit mantissa in (0, 1]; never zero so it is safe under log().
inline double to_unit_pos(std::uint64_t x) {
    return static_cast<double>((x >> 11) + 1) * 0x1.0p-53;
}

// 53-bit mantissa in [0, 1).
inline double to_unit(std::uint64_t x) {
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

} // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::uint32_t key0, std::uint32_t key1) {
    for (int r = 0; r < 10; ++r) {
        round_once(counter, key0, key1);
        key0 += kWeyl0;
        key1 += kWeyl1;
    }
    return counter;
}

std::uint64_t CounterRng::u64_at(std::uint64_t idx) const {
    const auto w = block(idx >> 1);
    if ((idx & 1) == 0) {
        return (static_cast<std::uint64_t>(w[0]) << 32) | w[1];
    }
    return (static_cast<std::uint64_t>(w[2]) << 32) | w[3];
}

void CounterRng::normal_pair(std::uint64_t pair_idx, double& z0, double& z1) const {
    const auto w = block(pair_idx);
    const double u1 = to_unit_pos((static_cast<std::uint64_t>(w[0]) << 32) | w[1]);
    const double u2 = to_unit((static_cast<std::uint64_t>(w[2]) << 32) | w[3]);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    z0 = r * std::cos(t);
    z1 = r * std::sin(t);
}

double CounterRng::normal_at(std::uint64_t idx) const {
    double z0, z1;
    normal_pair(idx >> 1, z0, z1);
    return (idx & 1) == 0 ? z0 : z1;
}

void CounterRng::normals(std::uint64_t first, std::span<double> out) const {
    std::size_t i = 0;
    if (!out.empty() && (first & 1) != 0) {
        out[i++] = normal_at(first);
    }
    for (; i + 2 <= out.size(); i += 2) {
        normal_pair((first + i) >> 1, out[i], out[i + 1]);
    }
    if (i < out.size()) {
        out[i] = normal_at(first + i);
    }
}

void CounterRng::bytes(std::uint64_t first, std::span<std::uint8_t> out) const {
    std::size_t i = 0;
    while (i < out.size()) {
        const std::uint64_t byte_pos = first + i;
        const std::uint64_t word_idx = byte_pos >> 3;
        const std::uint64_t w = u64_at(word_idx);
        std::size_t off = byte_pos & 7;
        while (off < 8 && i < out.size()) {
            out[i++] = static_cast<std::uint8_t>(w >> (56 - 8 * off));
            ++off;
        }
    }
}

} // namespace mqrng
