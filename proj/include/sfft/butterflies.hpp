#pragma once

#include <array>
#include <cstddef>
#include <utility>

#include "sfft/complex.hpp"

namespace sfft {

/// The working set of one butterfly: exactly `R` elements.
template <typename T, std::size_t R>
using ButterflyVector = std::array<Complex<T>, R>;

template <typename T>
using ComplexMatrix8 = std::array<std::array<Complex<T>, 8>, 8>;

template <typename T>
using RealMatrix8 = std::array<std::array<T, 8>, 8>;

// Butterflies are twiddle-free DFT cores; stage twiddles are applied by the
// caller before the butterfly. Output is in natural order.

template <typename T>
constexpr ButterflyVector<T, 2> butterfly_radix2(const ButterflyVector<T, 2>& x) {
    return {cadd(x[0], x[1]), csub(x[0], x[1])};
}

template <typename T>
constexpr ButterflyVector<T, 4> butterfly_radix4(const ButterflyVector<T, 4>& x) {
    const auto t0 = cadd(x[0], x[2]);
    const auto t1 = csub(x[0], x[2]);
    const auto t2 = cadd(x[1], x[3]);
    const auto t3 = mul_neg_i(csub(x[1], x[3]));
    return {cadd(t0, t2), cadd(t1, t3), csub(t0, t2), csub(t1, t3)};
}

/// 8-point DFT as split-radix DIT: DFT4 of the even elements, DFT4 of the odd
/// elements scaled by W8^k, joined by a radix-2 rank.
///
/// W8^2 = -i is a swap/negate. W8^1 and W8^3 each cost two adds and two
/// multiplies by sqrt(1/2), so the core is 52 real adds and 4 real multiplies.
template <typename T>
constexpr ButterflyVector<T, 8> butterfly_radix8_splitradix(const ButterflyVector<T, 8>& x) {
    const T h = static_cast<T>(0.70710678118654752440084436210484903928L);

    const auto e = butterfly_radix4<T>({x[0], x[2], x[4], x[6]});
    auto o = butterfly_radix4<T>({x[1], x[3], x[5], x[7]});

    // W8^1 = h(1 - i):  (a + ib) -> h(a + b) + i h(b - a)
    o[1] = {h * (o[1].re + o[1].im), h * (o[1].im - o[1].re)};
    o[2] = mul_neg_i(o[2]);
    // W8^3 = -h(1 + i): (a + ib) -> h(b - a) - i h(a + b)
    o[3] = {h * (o[3].im - o[3].re), -(h * (o[3].re + o[3].im))};

    ButterflyVector<T, 8> y;
    for (std::size_t k = 0; k < 4; ++k) {
        y[k] = cadd(e[k], o[k]);
        y[k + 4] = csub(e[k], o[k]);
    }
    return y;
}

/// F8[j][k] = W8^(jk).
template <typename T>
ComplexMatrix8<T> dft8_matrix() {
    ComplexMatrix8<T> f;
    for (int j = 0; j < 8; ++j)
        for (int k = 0; k < 8; ++k) f[j][k] = twiddle<T>(8, j * k);
    return f;
}

template <typename T>
std::pair<RealMatrix8<T>, RealMatrix8<T>> split(const ComplexMatrix8<T>& m) {
    RealMatrix8<T> re{}, im{};
    for (std::size_t j = 0; j < 8; ++j)
        for (std::size_t k = 0; k < 8; ++k) {
            re[j][k] = m[j][k].re;
            im[j][k] = m[j][k].im;
        }
    return {re, im};
}

template <typename T>
ComplexMatrix8<T> join(const RealMatrix8<T>& re, const RealMatrix8<T>& im) {
    ComplexMatrix8<T> m;
    for (std::size_t j = 0; j < 8; ++j)
        for (std::size_t k = 0; k < 8; ++k) m[j][k] = {re[j][k], im[j][k]};
    return m;
}

namespace detail {

// One 8x8x8 tile product, the unit the matrix hardware executes.
template <typename T>
RealMatrix8<T> matmul8(const RealMatrix8<T>& a, const RealMatrix8<T>& b) {
    RealMatrix8<T> c;
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) {
            T acc = a[i][0] * b[0][j];
            for (std::size_t k = 1; k < 8; ++k) acc = acc + a[i][k] * b[k][j];
            c[i][j] = acc;
        }
    return c;
}

template <typename T, typename Op>
RealMatrix8<T> elementwise(const RealMatrix8<T>& a, const RealMatrix8<T>& b, Op op) {
    RealMatrix8<T> c;
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) c[i][j] = op(a[i][j], b[i][j]);
    return c;
}

}  // namespace detail

/// Complex 8x8 product Y = F X from four real 8x8 products:
///   Y_re = F_re X_re - F_im X_im
///   Y_im = F_re X_im + F_im X_re
/// Columns of X are independent 8-point inputs.
template <typename T>
std::pair<RealMatrix8<T>, RealMatrix8<T>> mma_complex_multiply(const RealMatrix8<T>& f_re,
                                                               const RealMatrix8<T>& f_im,
                                                               const RealMatrix8<T>& x_re,
                                                               const RealMatrix8<T>& x_im) {
    using detail::elementwise;
    using detail::matmul8;
    auto y_re = elementwise(matmul8(f_re, x_re), matmul8(f_im, x_im), [](T a, T b) { return a - b; });
    auto y_im = elementwise(matmul8(f_re, x_im), matmul8(f_im, x_re), [](T a, T b) { return a + b; });
    return {y_re, y_im};
}

/// Real-FLOP counts of the two radix-8 routes, measured by running the
/// implementations above on an operation-counting scalar.
struct RadixEightFlopCounts {
    // Split-radix core alone (adds, multiplies).
    std::size_t core_adds = 0;
    std::size_t core_muls = 0;
    // Stage twiddles for one radix-8 butterfly: chain w2..w7 from w1, then
    // apply w1..w7 to elements 1..7.
    std::size_t twiddle_adds = 0;
    std::size_t twiddle_muls = 0;
    // Four 8x8 products plus the two combines, for 8 columns.
    std::size_t mma_adds = 0;
    std::size_t mma_muls = 0;

    std::size_t split_radix_butterfly() const {
        return core_adds + core_muls + twiddle_adds + twiddle_muls;
    }
    double mma_per_column() const { return static_cast<double>(mma_adds + mma_muls) / 8.0; }
};

RadixEightFlopCounts count_radix8_flops();

/// MMA route FLOPs per 8-point column divided by the FLOPs of one split-radix
/// stage butterfly (core plus its single-sincos twiddle chain and twiddle
/// application).
double mma_flop_ratio();

}  // namespace sfft
