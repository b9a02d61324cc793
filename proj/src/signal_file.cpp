#include "sfft/signal_file.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <stdexcept>

namespace sfft {
namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
    return std::uint32_t{p[0]} | std::uint32_t{p[1]} << 8 | std::uint32_t{p[2]} << 16 |
           std::uint32_t{p[3]} << 24;
}

template <typename T>
using Bits = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;

template <typename T>
void put_real(std::vector<std::uint8_t>& out, T v) {
    const auto bits = std::bit_cast<Bits<T>>(v);
    for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

template <typename T>
T get_real(const std::uint8_t* p) {
    Bits<T> bits = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) bits |= static_cast<Bits<T>>(p[i]) << (8 * i);
    return std::bit_cast<T>(bits);
}

}  // namespace

std::vector<std::uint8_t> encode_signal_file(const SignalData& data) {
    const std::size_t count = element_count(data);
    if (count > std::numeric_limits<std::uint32_t>::max())
        throw std::runtime_error("signal file: too many elements");
    const std::uint8_t tag = std::holds_alternative<Signal<float>>(data) ? 4 : 8;

    std::vector<std::uint8_t> out{'S', 'F', 'F', 'T'};
    out.reserve(kSignalFileHeaderBytes + count * 2 * tag);
    put_u32(out, kSignalFileVersion);
    put_u32(out, static_cast<std::uint32_t>(count));
    out.push_back(tag);
    out.insert(out.end(), 3, 0);
    std::visit(
        [&](const auto& sig) {
            for (const auto& v : sig) {
                put_real(out, v.re);
                put_real(out, v.im);
            }
        },
        data);
    return out;
}

SignalData decode_signal_file(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < kSignalFileHeaderBytes) throw std::runtime_error("signal file: truncated header");
    if (std::memcmp(bytes.data(), "SFFT", 4) != 0) throw std::runtime_error("signal file: bad magic");
    const auto version = get_u32(bytes.data() + 4);
    if (version != kSignalFileVersion)
        throw std::runtime_error("signal file: unsupported version " + std::to_string(version));
    const std::size_t count = get_u32(bytes.data() + 8);
    const std::uint8_t tag = bytes[12];
    if (tag != 4 && tag != 8) throw std::runtime_error("signal file: bad precision tag " + std::to_string(tag));
    if (bytes[13] != 0 || bytes[14] != 0 || bytes[15] != 0) throw std::runtime_error("signal file: nonzero padding");
    const std::size_t expected = kSignalFileHeaderBytes + count * 2 * tag;
    if (bytes.size() != expected)
        throw std::runtime_error("signal file: payload is " + std::to_string(bytes.size() - kSignalFileHeaderBytes) +
                                 " bytes, header implies " + std::to_string(expected - kSignalFileHeaderBytes));

    const std::uint8_t* p = bytes.data() + kSignalFileHeaderBytes;
    auto decode = [&]<typename T>() {
        Signal<T> s(count);
        for (auto& v : s) {
            v.re = get_real<T>(p);
            v.im = get_real<T>(p + sizeof(T));
            p += 2 * sizeof(T);
        }
        return s;
    };
    if (tag == 4) return decode.template operator()<float>();
    return decode.template operator()<double>();
}

void write_signal_file(const std::string& path, const SignalData& data) {
    const auto bytes = encode_signal_file(data);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

SignalData read_signal_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_signal_file(bytes);
}

}  // namespace sfft
