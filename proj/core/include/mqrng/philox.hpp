#ifndef MQRNG_PHILOX_HPP
#define MQRNG_PHILOX_HPP

#include <array>
#include <cstdint>
#include <span>

namespace mqrng {

/// Philox4x32-10 counter-based block generator (Salmon et al., Random123).
/// Any output block is a pure function of (key, counter), so disjoint parts
/// of a stream can be produced independently and in parallel while staying
/// bit-identical to a sequential run.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::uint32_t key0, std::uint32_t key1);

/// Seeded, counter-addressable random stream. One instance per channel;
/// instances with distinct seeds produce statistically independent streams.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed)
        : key0_(static_cast<std::uint32_t>(seed)),
          key1_(static_cast<std::uint32_t>(seed >> 32)) {}

    /// Raw 128-bit block at the given counter value.
    std::array<std::uint32_t, 4> block(std::uint64_t counter) const {
        return philox4x32({static_cast<std::uint32_t>(counter),
                           static_cast<std::uint32_t>(counter >> 32), 0, 0},
                          key0_, key1_);
    }

    /// Uniform 64-bit word at stream position idx.
    std::uint64_t u64_at(std::uint64_t idx) const;

    /// Standard normal variate at stream position idx. Positions 2k and 2k+1
    /// form one Box-Muller pair drawn from counter block k.
    double normal_at(std::uint64_t idx) const;

    /// Fills out with normals at positions [first, first + out.size()).
    void normals(std::uint64_t first, std::span<double> out) const;

    /// Fills out with uniform bytes at byte positions [first, first + out.size()).
    void bytes(std::uint64_t first, std::span<std::uint8_t> out) const;

    std::uint64_t seed() const {
        return (static_cast<std::uint64_t>(key1_) << 32) | key0_;
    }

private:
    void normal_pair(std::uint64_t pair_idx, double& z0, double& z1) const;

    std::uint32_t key0_;
    std::uint32_t key1_;
};

} // namespace mqrng

#endif
