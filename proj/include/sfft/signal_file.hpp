#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "sfft/complex.hpp"

namespace sfft {

// Binary signal container. 16-byte header, all integers little-endian:
//   0  "SFFT"
//   4  u32 version (1)
//   8  u32 element count
//   12 u8  precision tag (4 = float, 8 = double)
//   13 3 bytes zero padding
// then `count` interleaved (re, im) pairs in natural index order.

constexpr std::uint32_t kSignalFileVersion = 1;
constexpr std::size_t kSignalFileHeaderBytes = 16;

using SignalData = std::variant<Signal<float>, Signal<double>>;

std::vector<std::uint8_t> encode_signal_file(const SignalData& data);
/// Throws std::runtime_error on bad magic, version, precision or length.
SignalData decode_signal_file(const std::vector<std::uint8_t>& bytes);

void write_signal_file(const std::string& path, const SignalData& data);
SignalData read_signal_file(const std::string& path);

inline std::size_t element_count(const SignalData& d) {
    return std::visit([](const auto& s) { return s.size(); }, d);
}

}  // namespace sfft
