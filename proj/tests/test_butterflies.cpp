#include <cmath>

#include "sfft/butterflies.hpp"
#include "sfft/oracle.hpp"
#include "test_util.hpp"

using namespace sfft;

namespace {

template <typename T, std::size_t R>
double max_error_vs_dft(const ButterflyVector<T, R>& x, const ButterflyVector<T, R>& y) {
    Signal<double> wide(R);
    for (std::size_t i = 0; i < R; ++i) wide[i] = convert<double>(x[i]);
    const auto ref = naive_dft(wide);
    double err = 0;
    for (std::size_t i = 0; i < R; ++i)
        err = std::max({err, std::abs(y[i].re - ref[i].re), std::abs(y[i].im - ref[i].im)});
    return err;
}

template <typename T, std::size_t R>
ButterflyVector<T, R> random_vector(std::mt19937_64& rng) {
    ButterflyVector<T, R> v;
    for (auto& e : v) e = {static_cast<T>(test::uniform(rng)), static_cast<T>(test::uniform(rng))};
    return v;
}

}  // namespace

TEST_CASE("radix-2 butterfly") {
    CHECK(butterfly_radix2<double>({ComplexD{1, 0}, ComplexD{1, 0}}) ==
          ButterflyVector<double, 2>{ComplexD{2, 0}, ComplexD{0, 0}});
    CHECK(butterfly_radix2<double>({ComplexD{1, 0}, ComplexD{0, 0}}) ==
          ButterflyVector<double, 2>{ComplexD{1, 0}, ComplexD{1, 0}});
    std::mt19937_64 rng(2);
    auto x = random_vector<float, 2>(rng);
    CHECK(max_error_vs_dft(x, butterfly_radix2(x)) < 4 * test::eps<float>);
}

TEST_CASE("radix-4 butterfly") {
    ButterflyVector<double, 4> ones;
    ones.fill({1, 0});
    auto y = butterfly_radix4(ones);
    CHECK(y[0] == ComplexD{4, 0});
    for (int i = 1; i < 4; ++i) CHECK(y[i] == ComplexD{0, 0});

    auto flat = butterfly_radix4<double>({ComplexD{1, 0}, {}, {}, {}});
    for (const auto& v : flat) CHECK(v == ComplexD{1, 0});

    std::mt19937_64 rng(4);
    auto x = random_vector<float, 4>(rng);
    CHECK(max_error_vs_dft(x, butterfly_radix4(x)) < 1e-6);
}

TEST_CASE("split-radix radix-8 butterfly") {
    ButterflyVector<double, 8> ones;
    ones.fill({1, 0});
    auto y = butterfly_radix8_splitradix(ones);
    CHECK(y[0].re == doctest::Approx(8.0));
    for (int i = 1; i < 8; ++i) CHECK(std::hypot(y[i].re, y[i].im) < 1e-15);

    ButterflyVector<double, 8> delta{};
    delta[0] = {1, 0};
    for (const auto& v : butterfly_radix8_splitradix(delta)) CHECK(v == ComplexD{1, 0});

    // Matrix-vector oracle with F8.
    std::mt19937_64 rng(8);
    auto x = random_vector<float, 8>(rng);
    auto f = dft8_matrix<double>();
    auto got = butterfly_radix8_splitradix(x);
    for (int j = 0; j < 8; ++j) {
        ComplexD acc{};
        for (int k = 0; k < 8; ++k) acc = cadd(acc, cmul(f[j][k], convert<double>(x[k])));
        CHECK(std::abs(got[j].re - acc.re) < 1e-5);
        CHECK(std::abs(got[j].im - acc.im) < 1e-5);
    }
}

TEST_CASE("dft8_matrix entries") {
    auto f = dft8_matrix<double>();
    for (int k = 0; k < 8; ++k) CHECK(f[0][k] == ComplexD{1, 0});
    CHECK(std::abs(f[1][1].re - std::sqrt(0.5)) < 4 * test::eps<double>);
    CHECK(std::abs(f[1][1].im + std::sqrt(0.5)) < 4 * test::eps<double>);
    CHECK(f[4][4] == ComplexD{1, 0});
}

TEST_CASE("mma_complex_multiply identities") {
    std::mt19937_64 rng(9);
    RealMatrix8<double> eye{}, zero{}, xr, xi;
    for (int i = 0; i < 8; ++i) eye[i][i] = 1.0;
    for (auto* m : {&xr, &xi})
        for (auto& row : *m)
            for (auto& e : row) e = test::uniform(rng);

    auto [yr, yi] = mma_complex_multiply(eye, zero, xr, xi);
    CHECK(yr == xr);
    CHECK(yi == xi);

    auto [zr, zi] = mma_complex_multiply(zero, eye, xr, xi);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            CHECK(zr[i][j] == -xi[i][j]);
            CHECK(zi[i][j] == xr[i][j]);
        }
}

TEST_CASE("mma with split F8 reproduces the split-radix butterfly column by column") {
    std::mt19937_64 rng(10);
    auto [fr, fi] = split(dft8_matrix<float>());
    RealMatrix8<float> xr, xi;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            xr[i][j] = static_cast<float>(test::uniform(rng));
            xi[i][j] = static_cast<float>(test::uniform(rng));
        }
    auto [yr, yi] = mma_complex_multiply(fr, fi, xr, xi);
    for (int col = 0; col < 8; ++col) {
        ButterflyVector<float, 8> x;
        for (int i = 0; i < 8; ++i) x[i] = {xr[i][col], xi[i][col]};
        auto y = butterfly_radix8_splitradix(x);
        for (int i = 0; i < 8; ++i) {
            CHECK(std::abs(y[i].re - yr[i][col]) < 1e-5f);
            CHECK(std::abs(y[i].im - yi[i][col]) < 1e-5f);
        }
    }
}

TEST_CASE("radix-8 FLOP counts") {
    // Hand count of the implemented structure:
    //   core: two DFT4 (16 adds each), W8^1 and W8^3 (2 adds, 2 muls each),
    //         radix-2 rank (16 adds)                 -> 52 adds, 4 muls
    //   twiddles: 6 chain + 7 applied complex muls   -> 13 * (4 muls + 2 adds)
    //   MMA: 4 * 64 dot products of length 8 (8 muls + 7 adds) + 2 * 64 combines
    const auto c = count_radix8_flops();
    CHECK(c.core_adds == 52);
    CHECK(c.core_muls == 4);
    CHECK(c.twiddle_muls == 52);
    CHECK(c.twiddle_adds == 26);
    CHECK(c.mma_muls == 4 * 64 * 8);
    CHECK(c.mma_adds == 4 * 64 * 7 + 128);
    CHECK(c.split_radix_butterfly() == 134);
    CHECK(c.mma_per_column() == doctest::Approx(496.0));

    const double ratio = mma_flop_ratio();
    CHECK(ratio > 0);
    CHECK(ratio == doctest::Approx(496.0 / 134.0));
    CHECK(ratio >= 3.0);
    CHECK(ratio <= 4.0);
}
