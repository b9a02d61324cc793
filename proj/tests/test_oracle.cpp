#include <cmath>

#include "sfft/oracle.hpp"
#include "test_util.hpp"

using namespace sfft;

TEST_CASE("naive_dft closed forms") {
    Signal<double> delta(16);
    delta[0] = {1, 0};
    for (const auto& v : naive_dft(delta)) CHECK(v == ComplexD{1, 0});

    auto two = naive_dft(Signal<double>{{1, 0}, {-1, 0}});
    CHECK(two[0] == ComplexD{0, 0});
    CHECK(two[1] == ComplexD{2, 0});

    // Shifted delta: X[k] = W_n^k.
    Signal<double> shifted(12);
    shifted[1] = {1, 0};
    auto y = naive_dft(shifted);
    for (int k = 0; k < 12; ++k) {
        CHECK(std::abs(y[k].re - std::cos(2 * M_PI * k / 12)) < 1e-15);
        CHECK(std::abs(y[k].im + std::sin(2 * M_PI * k / 12)) < 1e-15);
    }
    CHECK_THROWS_AS(naive_dft(Signal<double>{}), std::invalid_argument);
}

TEST_CASE("naive_idft inverts naive_dft for any length") {
    for (std::size_t n : {1u, 3u, 7u, 64u, 100u}) {
        auto x = random_signal(n, n);
        CHECK(compare(naive_idft(naive_dft(x)), x).relative_l2 < 1e-14);
    }
}

TEST_CASE("compare") {
    auto x = random_signal(32, 5);
    CHECK(compare(x, x).relative_l2 == 0.0);
    CHECK(compare(x, x).max_abs_componentwise == 0.0);
    Signal<double> neg(x);
    for (auto& v : neg) v = {-v.re, -v.im};
    CHECK(compare(neg, x).relative_l2 == doctest::Approx(2.0));
    CHECK(compare(x, Signal<double>(32)).relative_l2 == std::numeric_limits<double>::infinity());
    CHECK(compare(Signal<double>(4), Signal<double>(4)).relative_l2 == 0.0);
    CHECK_THROWS_AS(compare(x, random_signal(31, 5)), std::invalid_argument);
    CHECK(compare(convert<float>(x), x).relative_l2 < 1e-7);
    CHECK(compare(x, x).n == 32);
}

TEST_CASE("random_signal is seeded and bounded") {
    CHECK(random_signal(64, 9) == random_signal(64, 9));
    CHECK(random_signal(64, 9) != random_signal(64, 10));
    for (const auto& v : random_signal(1000, 1)) {
        CHECK(std::abs(v.re) <= 1.0);
        CHECK(std::abs(v.im) <= 1.0);
    }
}

TEST_CASE("Parseval holds for the oracle") {
    auto x = random_signal(97, 97);
    CHECK(energy(naive_dft(x)) == doctest::Approx(97 * energy(x)).epsilon(1e-13));
}
