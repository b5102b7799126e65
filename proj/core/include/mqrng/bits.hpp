#ifndef MQRNG_BITS_HPP
#define MQRNG_BITS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mqrng {

/// Growable bit sequence packed MSB-first within each byte. The final
/// partial byte is zero-padded; the exact bit count is kept alongside.
class BitVector {
public:
    BitVector() = default;
    BitVector(std::vector<std::uint8_t> bytes, std::size_t bit_count);

    void push_back(bool bit);

    /// Appends the low `nbits` of value, most significant first.
    void append_bits(std::uint64_t value, int nbits);

    /// Appends whole bytes (8 bits each, MSB-first).
    void append_bytes(std::span<const std::uint8_t> bytes);

    void append(const BitVector& other);

    bool operator[](std::size_t i) const {
        return (bytes_[i >> 3] >> (7 - (i & 7))) & 1u;
    }

    std::size_t size() const { return nbits_; }
    bool empty() const { return nbits_ == 0; }

    /// Packed storage, zero-padded to a whole number of bytes.
    std::span<const std::uint8_t> bytes() const { return bytes_; }

    /// Reads up to 64 bits starting at bit position pos (MSB-first).
    std::uint64_t read_bits(std::size_t pos, int nbits) const;

    void clear();
    void reserve_bits(std::size_t nbits) { bytes_.reserve((nbits + 7) / 8); }

private:
    std::vector<std::uint8_t> bytes_;
    std::size_t nbits_ = 0;
};

/// Packs a sequence of 0/1 values MSB-first.
BitVector pack_bits(std::span<const std::uint8_t> bits01);

/// Expands to one 0/1 byte per bit.
std::vector<std::uint8_t> unpack_bits(const BitVector& bits);

/// Dense row-major bit matrix (rows x cols), rows packed MSB-first.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols);

    bool get(std::size_t row, std::size_t col) const {
        const std::size_t bit = row * stride_bits_ + col;
        return (data_[bit >> 3] >> (7 - (bit & 7))) & 1u;
    }
    void set(std::size_t row, std::size_t col, bool v);

    /// Writes the low `cols` bits of value into a row, MSB-first. Rows wider
    /// than 64 bits are filled with set_bits instead.
    void set_row(std::size_t row, std::uint64_t value);

    /// Writes the low `nbits` of value, MSB-first, starting at column col.
    void set_bits(std::size_t row, std::size_t col, std::uint64_t value, int nbits);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t stride_bits_ = 0;
    std::vector<std::uint8_t> data_;
};

} // namespace mqrng

#endif
