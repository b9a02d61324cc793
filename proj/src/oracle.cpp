#include "sfft/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace sfft {
namespace {

Signal<double> direct_sum(std::span<const ComplexD> x, double sign) {
    const std::size_t n = x.size();
    if (n == 0) throw std::invalid_argument("naive_dft: empty input");

    // roots[m] = exp(sign * 2 pi i m / n), evaluated independently per m.
    std::vector<ComplexD> roots(n);
    // Quarter turns are exact so closed-form spectra come out exact.
    static constexpr ComplexD kQuarter[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    for (std::size_t m = 0; m < n; ++m) {
        if ((4 * m) % n == 0) {
            const std::size_t q = 4 * m / n;
            roots[m] = sign < 0 ? kQuarter[q] : conj(kQuarter[q]);
            continue;
        }
        const long double angle = sign * 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(m) /
                                  static_cast<long double>(n);
        roots[m] = {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
    }

    Signal<double> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        long double re = 0.0L, im = 0.0L;
        std::size_t e = 0;  // (m * k) mod n
        for (std::size_t m = 0; m < n; ++m) {
            const auto& w = roots[e];
            re += static_cast<long double>(x[m].re) * w.re - static_cast<long double>(x[m].im) * w.im;
            im += static_cast<long double>(x[m].re) * w.im + static_cast<long double>(x[m].im) * w.re;
            e += k;
            if (e >= n) e -= n;
        }
        out[k] = {static_cast<double>(re), static_cast<double>(im)};
    }
    return out;
}

}  // namespace

Signal<double> naive_dft(std::span<const ComplexD> input) { return direct_sum(input, -1.0); }

Signal<double> naive_idft(std::span<const ComplexD> input) {
    auto out = direct_sum(input, 1.0);
    const double scale = 1.0 / static_cast<double>(input.size());
    for (auto& v : out) v = {v.re * scale, v.im * scale};
    return out;
}

ErrorReport compare(std::span<const ComplexD> a, std::span<const ComplexD> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("compare: length mismatch (" + std::to_string(a.size()) + " vs " +
                                    std::to_string(b.size()) + ")");
    long double diff = 0.0L, ref = 0.0L;
    double max_abs = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double dr = a[i].re - b[i].re;
        const double di = a[i].im - b[i].im;
        diff += static_cast<long double>(dr) * dr + static_cast<long double>(di) * di;
        ref += static_cast<long double>(b[i].re) * b[i].re + static_cast<long double>(b[i].im) * b[i].im;
        max_abs = std::max({max_abs, std::abs(dr), std::abs(di)});
    }
    ErrorReport r;
    r.n = a.size();
    r.max_abs_componentwise = max_abs;
    if (ref == 0.0L) r.relative_l2 = diff == 0.0L ? 0.0 : std::numeric_limits<double>::infinity();
    else r.relative_l2 = static_cast<double>(std::sqrt(diff / ref));
    return r;
}

ErrorReport compare(std::span<const ComplexF> a, std::span<const ComplexD> b) {
    Signal<double> wide(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) wide[i] = convert<double>(a[i]);
    return compare(std::span<const ComplexD>(wide), b);
}

Signal<double> random_signal(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Signal<double> x(n);
    for (auto& v : x) {
        v.re = dist(rng);
        v.im = dist(rng);
    }
    return x;
}

double energy(std::span<const ComplexD> x) {
    long double e = 0.0L;
    for (const auto& v : x) e += static_cast<long double>(v.re) * v.re + static_cast<long double>(v.im) * v.im;
    return static_cast<double>(e);
}

}  // namespace sfft
