#include "mqrng/stream_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "mqrng/sha256.hpp"

namespace mqrng {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& what) {
    throw std::runtime_error(path.string() + ": " + what);
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        fail(path, "cannot open for writing");
    return f;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        fail(path, "cannot open for reading");
    return f;
}

void put_u32le(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i)
        out.push_back(static_cast<char>(v >> (8 * i)));
}

void put_u64le(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i)
        out.push_back(static_cast<char>(v >> (8 * i)));
}

std::uint64_t get_u64le(const unsigned char* p, int n) {
    std::uint64_t v = 0;
    for (int i = n - 1; i >= 0; --i)
        v = (v << 8) | p[i];
    return v;
}

std::vector<unsigned char> slurp(const std::filesystem::path& path) {
    auto f = open_in(path);
    f.seekg(0, std::ios::end);
    const std::streamoff len = f.tellg();
    f.seekg(0, std::ios::beg);
    std::vector<unsigned char> data(static_cast<std::size_t>(len));
    if (len > 0 && !f.read(reinterpret_cast<char*>(data.data()), len))
        fail(path, "short read");
    return data;
}

} // namespace

void write_bitstream(const std::filesystem::path& path, const BitVector& bits) {
    std::string header;
    header.append(kBitstreamMagic, sizeof kBitstreamMagic);
    put_u32le(header, kBitstreamVersion);

    std::string trailer;
    put_u64le(trailer, bits.size());

    auto f = open_out(path);
    f.write(header.data(), static_cast<std::streamsize>(header.size()));
    const auto payload = bits.bytes();
    f.write(reinterpret_cast<const char*>(payload.data()),
            static_cast<std::streamsize>(payload.size()));
    f.write(trailer.data(), static_cast<std::streamsize>(trailer.size()));
    if (!f)
        fail(path, "write failed");
}

BitVector read_bitstream(const std::filesystem::path& path) {
    const auto data = slurp(path);
    if (data.size() < 20 ||
        std::memcmp(data.data(), kBitstreamMagic, sizeof kBitstreamMagic) != 0)
        fail(path, "not a bitstream file (bad magic)");
    const std::uint32_t version = static_cast<std::uint32_t>(get_u64le(data.data() + 8, 4));
    if (version != kBitstreamVersion)
        fail(path, "unsupported bitstream version " + std::to_string(version));
    const std::uint64_t nbits = get_u64le(data.data() + data.size() - 8, 8);
    const std::size_t payload = data.size() - 20;
    if ((nbits + 7) / 8 != payload)
        fail(path, "bit count inconsistent with payload size");
    std::vector<std::uint8_t> bytes(data.begin() + 12, data.end() - 8);
    return BitVector(std::move(bytes), static_cast<std::size_t>(nbits));
}

void write_ascii_bits(const std::filesystem::path& path, const BitVector& bits) {
    auto f = open_out(path);
    std::string line;
    line.reserve(bits.size() + 1);
    for (std::size_t i = 0; i < bits.size(); ++i)
        line.push_back(bits[i] ? '1' : '0');
    line.push_back('\n');
    f.write(line.data(), static_cast<std::streamsize>(line.size()));
    if (!f)
        fail(path, "write failed");
}

BitVector read_ascii_bits(const std::filesystem::path& path) {
    const auto data = slurp(path);
    BitVector bits;
    bits.reserve_bits(data.size());
    for (unsigned char c : data) {
        if (c == '0' || c == '1')
            bits.push_back(c == '1');
        else if (c != '\n' && c != '\r' && c != ' ' && c != '\t')
            fail(path, "unexpected character in ASCII bit file");
    }
    return bits;
}

BitVector read_bits_auto(const std::filesystem::path& path) {
    const auto data = slurp(path);
    if (data.size() >= sizeof kBitstreamMagic &&
        std::memcmp(data.data(), kBitstreamMagic, sizeof kBitstreamMagic) == 0)
        return read_bitstream(path);
    return read_ascii_bits(path);
}

void write_f64(const std::filesystem::path& path, std::span<const double> values) {
    std::string buf;
    buf.reserve(values.size() * 8);
    for (double v : values)
        put_u64le(buf, std::bit_cast<std::uint64_t>(v));
    auto f = open_out(path);
    f.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!f)
        fail(path, "write failed");
}

std::vector<double> read_f64(const std::filesystem::path& path) {
    const auto data = slurp(path);
    if (data.size() % 8 != 0)
        fail(path, "length is not a multiple of 8");
    std::vector<double> out(data.size() / 8);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = std::bit_cast<double>(get_u64le(data.data() + 8 * i, 8));
    return out;
}

void write_u16(const std::filesystem::path& path, std::span<const std::uint16_t> values) {
    std::string buf;
    buf.reserve(values.size() * 2);
    for (std::uint16_t v : values) {
        buf.push_back(static_cast<char>(v & 0xFF));
        buf.push_back(static_cast<char>(v >> 8));
    }
    auto f = open_out(path);
    f.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!f)
        fail(path, "write failed");
}

std::vector<std::uint16_t> read_u16(const std::filesystem::path& path) {
    const auto data = slurp(path);
    if (data.size() % 2 != 0)
        fail(path, "length is not a multiple of 2");
    std::vector<std::uint16_t> out(data.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::uint16_t>(get_u64le(data.data() + 2 * i, 2));
    return out;
}

void write_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    auto f = open_out(path);
    f.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
    if (!f)
        fail(path, "write failed");
}

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
    const auto data = slurp(path);
    return {data.begin(), data.end()};
}

std::vector<std::uint8_t> read_symbols(const std::filesystem::path& path) {
    const auto data = slurp(path);
    if (data.size() >= sizeof kBitstreamMagic &&
        std::memcmp(data.data(), kBitstreamMagic, sizeof kBitstreamMagic) == 0) {
        const BitVector bits = read_bitstream(path);
        const auto payload = bits.bytes();
        const std::size_t whole = bits.size() / 8;
        return {payload.begin(), payload.begin() + static_cast<std::ptrdiff_t>(whole)};
    }
    return {data.begin(), data.end()};
}

std::string sha256_file_hex(const std::filesystem::path& path) {
    const auto data = slurp(path);
    return Sha256::hex(Sha256::digest({data.data(), data.size()}));
}

} // namespace mqrng
