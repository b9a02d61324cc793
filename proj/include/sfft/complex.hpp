#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace sfft {

/// One complex value, interleaved re/im. The element type of every signal.
///
/// `T` is normally `float` or `double`; the butterflies are also instantiated
/// with an operation-counting scalar to derive their FLOP counts.
template <typename T>
struct Complex {
    T re{};
    T im{};

    friend bool operator==(const Complex&, const Complex&) = default;
};

using ComplexF = Complex<float>;
using ComplexD = Complex<double>;

template <typename T>
using Signal = std::vector<Complex<T>>;

template <typename T>
constexpr Complex<T> cadd(const Complex<T>& a, const Complex<T>& b) {
    return {a.re + b.re, a.im + b.im};
}

template <typename T>
constexpr Complex<T> csub(const Complex<T>& a, const Complex<T>& b) {
    return {a.re - b.re, a.im - b.im};
}

template <typename T>
constexpr Complex<T> cmul(const Complex<T>& a, const Complex<T>& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

template <typename T>
constexpr Complex<T> conj(const Complex<T>& a) {
    return {a.re, -a.im};
}

/// Multiply by -i. Pure data movement, no arithmetic.
template <typename T>
constexpr Complex<T> mul_neg_i(const Complex<T>& a) {
    return {a.im, -a.re};
}

template <typename T>
T norm2(const Complex<T>& a) {
    return a.re * a.re + a.im * a.im;
}

template <typename To, typename From>
Complex<To> convert(const Complex<From>& a) {
    return {static_cast<To>(a.re), static_cast<To>(a.im)};
}

template <typename To, typename From>
Signal<To> convert(const Signal<From>& s) {
    Signal<To> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = convert<To>(s[i]);
    return out;
}

/// W_n^k = exp(-2 pi i k / n), periodic in k modulo n.
///
/// The angle is reduced to [0, 2pi) in integer arithmetic and evaluated with
/// the platform sin/cos in double before rounding to `T`.
template <typename T>
Complex<T> twiddle(std::int64_t n, std::int64_t k) {
    if (n <= 0) throw std::invalid_argument("twiddle: order must be positive");
    std::int64_t r = k % n;
    if (r < 0) r += n;
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
    return {static_cast<T>(std::cos(angle)), static_cast<T>(std::sin(angle))};
}

/// Fills `out` with [w1, w1^2, ..., w1^out.size()], each power formed by one
/// complex multiply of the previous power with w1. No renormalization.
template <typename T>
constexpr void twiddle_chain(const Complex<T>& w1, std::span<Complex<T>> out) {
    if (out.empty()) return;
    out[0] = w1;
    for (std::size_t j = 1; j < out.size(); ++j) out[j] = cmul(out[j - 1], w1);
}

template <typename T>
std::vector<Complex<T>> twiddle_chain(const Complex<T>& w1, std::size_t count) {
    if (count == 0) throw std::invalid_argument("twiddle_chain: count must be >= 1");
    std::vector<Complex<T>> out(count);
    twiddle_chain(w1, std::span<Complex<T>>(out));
    return out;
}

}  // namespace sfft
