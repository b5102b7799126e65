#include "mqrng/extractors.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "mqrng/adc.hpp"
#include "mqrng/cmac.hpp"
#include "mqrng/sha256.hpp"

namespace mqrng {

std::vector<std::uint8_t> extract_raw(std::span<const std::uint16_t> codes) {
    std::vector<std::uint8_t> out;
    out.reserve(codes.size());
    for (std::uint16_t c : codes)
        out.push_back(lsb8(c));
    return out;
}

CmacState make_cmac_state(const std::array<std::uint8_t, 16>& key,
                          int out_bits,
                          double input_entropy_k) {
    if (!(input_entropy_k > 0.0) || input_entropy_k > 128.0)
        throw std::invalid_argument("input_entropy_k must lie in (0, 128]");
    const int limit = static_cast<int>(std::floor(input_entropy_k / 2.0));
    if (out_bits < 1 || out_bits > limit)
        throw std::invalid_argument("out_bits must lie in [1, floor(input_entropy_k / 2)]");
    CmacState st;
    st.key = key;
    st.out_bits = out_bits;
    st.input_entropy_k = input_entropy_k;
    return st;
}

std::array<std::uint8_t, 16> default_cmac_key(std::uint64_t seed, std::uint32_t channel_id) {
    std::uint8_t msg[14 + 8 + 4];
    std::memcpy(msg, "mqrng-cmac-key", 14);
    for (int i = 0; i < 8; ++i)
        msg[14 + i] = static_cast<std::uint8_t>(seed >> (8 * i));
    for (int i = 0; i < 4; ++i)
        msg[22 + i] = static_cast<std::uint8_t>(channel_id >> (8 * i));
    const auto digest = Sha256::digest({msg, sizeof msg});
    std::array<std::uint8_t, 16> key;
    std::memcpy(key.data(), digest.data(), 16);
    return key;
}

namespace {

inline unsigned __int128 load_be128(const std::uint8_t* p) {
    unsigned __int128 v = 0;
    for (int i = 0; i < 16; ++i)
        v = (v << 8) | p[i];
    return v;
}

inline void store_be128(unsigned __int128 v, std::uint8_t* p) {
    for (int i = 15; i >= 0; --i) {
        p[i] = static_cast<std::uint8_t>(v);
        v >>= 8;
    }
}

std::uint64_t cmac_group(CmacState& state, std::span<const std::uint8_t> group) {
    const CmacAes128 cmac(std::span<const std::uint8_t, 16>{state.key});
    const auto tag = cmac.mac(group);

    const int out_bits = state.out_bits;
    const unsigned __int128 t = load_be128(tag.data());
    const std::uint64_t out = static_cast<std::uint64_t>(t >> (128 - out_bits));

    // new_key = tag's low 128 - out_bits bits, then the old key's top out_bits.
    const int recycled = 128 - out_bits;
    const unsigned __int128 k = load_be128(state.key.data());
    const unsigned __int128 low_mask = (static_cast<unsigned __int128>(1) << recycled) - 1;
    store_be128(((t & low_mask) << out_bits) | (k >> recycled), state.key.data());
    return out;
}

} // namespace

std::uint64_t extract_cmac(CmacState& state, const std::array<std::uint8_t, 16>& input) {
    return cmac_group(state, input);
}

BitVector extract_cmac(CmacState& state, std::span<const std::uint8_t> raw) {
    if (raw.size() % 16 != 0)
        throw std::invalid_argument("extract_cmac input must be a multiple of 16 bytes");
    BitVector out;
    out.reserve_bits((raw.size() / 16) * static_cast<std::size_t>(state.out_bits));
    for (std::size_t off = 0; off < raw.size(); off += 16)
        out.append_bits(cmac_group(state, raw.subspan(off, 16)), state.out_bits);
    return out;
}

std::uint64_t pack36(std::uint16_t c0, std::uint16_t c1, std::uint16_t c2) {
    if (c0 > 4095 || c1 > 4095 || c2 > 4095)
        throw std::invalid_argument("pack36 codes must be 12-bit");
    return (static_cast<std::uint64_t>(c0) << 24) |
           (static_cast<std::uint64_t>(c1) << 12) | c2;
}

std::uint8_t extract_two_source(std::uint64_t x, std::uint64_t y) {
    if (x >> 36 || y >> 36)
        throw std::invalid_argument("two-source inputs must be 36-bit");
    return static_cast<std::uint8_t>(std::popcount(x & y) & 1);
}

BitVector extract_two_source(std::span<const std::uint16_t> a,
                             std::span<const std::uint16_t> b) {
    const std::size_t groups = std::min(a.size(), b.size()) / 3;
    BitVector out;
    out.reserve_bits(groups);
    for (std::size_t g = 0; g < groups; ++g) {
        const std::uint64_t x = pack36(a[3 * g], a[3 * g + 1], a[3 * g + 2]);
        const std::uint64_t y = pack36(b[3 * g], b[3 * g + 1], b[3 * g + 2]);
        out.push_back(extract_two_source(x, y));
    }
    return out;
}

} // namespace mqrng
