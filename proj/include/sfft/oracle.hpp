#pragma once

#include <cstdint>
#include <span>

#include "sfft/complex.hpp"

namespace sfft {

/// Direct O(n^2) evaluation of X[k] = sum_m x[m] W_n^(mk) in double precision.
/// Any positive length. The exponent m*k is reduced modulo n exactly before
/// the root of unity is looked up.
Signal<double> naive_dft(std::span<const ComplexD> input);
Signal<double> naive_idft(std::span<const ComplexD> input);

inline Signal<double> naive_dft(const Signal<double>& x) { return naive_dft(std::span<const ComplexD>(x)); }
inline Signal<double> naive_idft(const Signal<double>& x) { return naive_idft(std::span<const ComplexD>(x)); }

struct ErrorReport {
    /// ||a - b|| / ||b||, b being the reference; 0 when both are zero.
    double relative_l2 = 0.0;
    double max_abs_componentwise = 0.0;
    std::size_t n = 0;
};

/// `b` is the reference. Throws std::invalid_argument on a length mismatch.
ErrorReport compare(std::span<const ComplexD> a, std::span<const ComplexD> b);
ErrorReport compare(std::span<const ComplexF> a, std::span<const ComplexD> b);

inline ErrorReport compare(const Signal<double>& a, const Signal<double>& b) {
    return compare(std::span<const ComplexD>(a), std::span<const ComplexD>(b));
}
inline ErrorReport compare(const Signal<float>& a, const Signal<double>& b) {
    return compare(std::span<const ComplexF>(a), std::span<const ComplexD>(b));
}

/// Seeded uniform samples on [-1, 1]^2.
Signal<double> random_signal(std::size_t n, std::uint64_t seed);

double energy(std::span<const ComplexD> x);

}  // namespace sfft
