#include "mqrng/bits.hpp"

#include <stdexcept>

namespace mqrng {

BitVector::BitVector(std::vector<std::uint8_t> bytes, std::size_t bit_count)
    : bytes_(std::move(bytes)), nbits_(bit_count) {
    if ((bit_count + 7) / 8 > bytes_.size()) {
        throw std::invalid_argument("BitVector: bit count exceeds storage");
    }
    bytes_.resize((bit_count + 7) / 8);
    if (nbits_ & 7) {
        bytes_.back() &= static_cast<std::uint8_t>(0xFFu << (8 - (nbits_ & 7)));
    }
}

void BitVector::push_back(bool bit) {
    if ((nbits_ & 7) == 0) {
        bytes_.push_back(0);
    }
    if (bit) {
        bytes_.back() |= static_cast<std::uint8_t>(1u << (7 - (nbits_ & 7)));
    }
    ++nbits_;
}

void BitVector::append_bits(std::uint64_t value, int nbits) {
    if (nbits < 0 || nbits > 64) {
        throw std::invalid_argument("append_bits: nbits out of range");
    }
    for (int i = nbits - 1; i >= 0; --i) {
        push_back((value >> i) & 1u);
    }
}

void BitVector::append_bytes(std::span<const std::uint8_t> bytes) {
    if ((nbits_ & 7) == 0) {
        bytes_.insert(bytes_.end(), bytes.begin(), bytes.end());
        nbits_ += 8 * bytes.size();
        return;
    }
    for (std::uint8_t b : bytes) {
        append_bits(b, 8);
    }
}

void BitVector::append(const BitVector& other) {
    if ((nbits_ & 7) == 0) {
        bytes_.insert(bytes_.end(), other.bytes_.begin(), other.bytes_.end());
        nbits_ += other.nbits_;
        return;
    }
    for (std::size_t i = 0; i < other.nbits_; ++i) {
        push_back(other[i]);
    }
}

std::uint64_t BitVector::read_bits(std::size_t pos, int nbits) const {
    if (nbits < 0 || nbits > 64 || pos + static_cast<std::size_t>(nbits) > nbits_) {
        throw std::out_of_range("read_bits: range outside bit vector");
    }
    std::uint64_t v = 0;
    for (int i = 0; i < nbits; ++i) {
        v = (v << 1) | static_cast<std::uint64_t>((*this)[pos + i]);
    }
    return v;
}

void BitVector::clear() {
    bytes_.clear();
    nbits_ = 0;
}

BitVector pack_bits(std::span<const std::uint8_t> bits01) {
    BitVector out;
    out.reserve_bits(bits01.size());
    for (std::uint8_t b : bits01) {
        out.push_back(b != 0);
    }
    return out;
}

std::vector<std::uint8_t> unpack_bits(const BitVector& bits) {
    std::vector<std::uint8_t> out(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        out[i] = bits[i] ? 1 : 0;
    }
    return out;
}

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_bits_(((cols + 7) / 8) * 8),
      data_(rows * ((cols + 7) / 8), 0) {}

void BitMatrix::set(std::size_t row, std::size_t col, bool v) {
    const std::size_t bit = row * stride_bits_ + col;
    const std::uint8_t mask = static_cast<std::uint8_t>(1u << (7 - (bit & 7)));
    if (v) {
        data_[bit >> 3] |= mask;
    } else {
        data_[bit >> 3] &= static_cast<std::uint8_t>(~mask);
    }
}

void BitMatrix::set_row(std::size_t row, std::uint64_t value) {
    if (cols_ > 64) {
        throw std::invalid_argument("set_row: row wider than 64 bits");
    }
    for (std::size_t c = 0; c < cols_; ++c) {
        set(row, c, (value >> (cols_ - 1 - c)) & 1u);
    }
}

void BitMatrix::set_bits(std::size_t row, std::size_t col, std::uint64_t value, int nbits) {
    if (nbits < 0 || nbits > 64 || col + static_cast<std::size_t>(nbits) > cols_) {
        throw std::out_of_range("set_bits: range outside row");
    }
    for (int i = 0; i < nbits; ++i) {
        set(row, col + i, (value >> (nbits - 1 - i)) & 1u);
    }
}

} // namespace mqrng
