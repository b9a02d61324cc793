// Seeded property suites, 100+ cases each.
#include <cmath>

#include "sfft/butterflies.hpp"
#include "sfft/executor.hpp"
#include "sfft/four_step.hpp"
#include "sfft/oracle.hpp"
#include "test_util.hpp"

using namespace sfft;

namespace {

constexpr std::size_t kCases = 100;

RadixPolicy pick_policy(std::mt19937_64& rng) {
    static constexpr RadixPolicy all[] = {RadixPolicy::prefer8, RadixPolicy::prefer4, RadixPolicy::pure2};
    return all[std::uniform_int_distribution<int>(0, 2)(rng)];
}

ComplexD random_complex(std::mt19937_64& rng) { return {test::uniform(rng), test::uniform(rng)}; }

}  // namespace

TEST_CASE("property: Parseval") {
    test::for_all("parseval", kCases, 1001, [](auto& rng, std::size_t i) {
        const auto n = test::pick_pow2(rng, 1, 12);
        auto x = random_signal(n, 5000 + i);
        auto y = execute(make_plan(n, pick_policy(rng)), x);
        CHECK(energy(y) == doctest::Approx(static_cast<double>(n) * energy(x)).epsilon(1e-12));
        const double ef = energy(convert<double>(execute(make_plan(n, pick_policy(rng)), convert<float>(x))));
        CHECK(ef == doctest::Approx(static_cast<double>(n) * energy(x)).epsilon(1e-4));
    });
}

TEST_CASE("property: linearity") {
    test::for_all("linearity", kCases, 1002, [](auto& rng, std::size_t i) {
        const auto n = test::pick_pow2(rng, 1, 11);
        const auto plan = make_plan(n, pick_policy(rng));
        auto a = random_signal(n, 6000 + i), b = random_signal(n, 7000 + i);
        const ComplexD alpha = random_complex(rng), beta = random_complex(rng);
        Signal<double> mix(n);
        for (std::size_t k = 0; k < n; ++k) mix[k] = cadd(cmul(alpha, a[k]), cmul(beta, b[k]));
        auto fa = execute(plan, a), fb = execute(plan, b);
        Signal<double> expect(n);
        for (std::size_t k = 0; k < n; ++k) expect[k] = cadd(cmul(alpha, fa[k]), cmul(beta, fb[k]));
        CHECK(compare(execute(plan, mix), expect).relative_l2 < 1e-13);
    });
}

TEST_CASE("property: forward then inverse is the identity") {
    test::for_all("round_trip", kCases, 1003, [](auto& rng, std::size_t i) {
        const auto n = test::pick_pow2(rng, 1, 12);
        const auto plan = make_plan(n, pick_policy(rng));
        auto x = random_signal(n, 8000 + i);
        CHECK(compare(execute_inverse(plan, execute(plan, x)), x).relative_l2 < 1e-13);
        auto xf = convert<float>(x);
        CHECK(compare(execute_inverse(plan, execute(plan, xf)), x).relative_l2 < 1e-5);
    });
}

TEST_CASE("property: twiddle unit modulus within 4 ulps, exponent addition within 8 ulps") {
    test::for_all("twiddle", kCases * 10, 1004, [](auto& rng, std::size_t) {
        const auto n = std::uniform_int_distribution<std::int64_t>(2, 65536)(rng);
        std::uniform_int_distribution<std::int64_t> dk(0, n - 1);
        const auto a = dk(rng), b = dk(rng);
        auto w = twiddle<float>(n, a);
        CHECK(std::abs(std::hypot(double(w.re), double(w.im)) - 1.0) < 4 * test::eps<float>);
        auto wd = twiddle<double>(n, a);
        CHECK(std::abs(std::hypot(wd.re, wd.im) - 1.0) < 4 * test::eps<double>);
        auto prod = cmul(twiddle<float>(n, a), twiddle<float>(n, b));
        auto sum = twiddle<float>(n, a + b);
        CHECK(std::abs(prod.re - sum.re) <= 8 * test::eps<float>);
        CHECK(std::abs(prod.im - sum.im) <= 8 * test::eps<float>);
    });
}

TEST_CASE("property: chained twiddles drift at most 4 ulps per link") {
    test::for_all("chain", kCases, 1005, [](auto& rng, std::size_t) {
        const auto n = static_cast<std::int64_t>(test::pick_pow2(rng, 3, 24));
        const auto k = std::uniform_int_distribution<std::int64_t>(0, n - 1)(rng);
        const std::size_t len = std::uniform_int_distribution<std::size_t>(1, 15)(rng);
        const auto w = twiddle<float>(n, k);
        auto chain = twiddle_chain(w, len);
        // Exact powers of the rounded seed, so only the chain's own error counts.
        Complex<long double> p{w.re, w.im};
        for (std::size_t c = 1; c <= len; ++c) {
            CHECK(std::abs(chain[c - 1].re - p.re) <= c * 4 * test::eps<float>);
            CHECK(std::abs(chain[c - 1].im - p.im) <= c * 4 * test::eps<float>);
            p = cmul(p, Complex<long double>{w.re, w.im});
        }
    });
}

TEST_CASE("property: result does not depend on the decomposition") {
    test::for_all("plan_independence", kCases, 1006, [](auto& rng, std::size_t i) {
        const auto n = test::pick_pow2(rng, 4, 12);
        auto x = random_signal(n, 9000 + i);
        auto r8 = execute(make_plan(n, RadixPolicy::prefer8), x);
        auto r4 = execute(make_plan(n, RadixPolicy::prefer4, TwiddlePolicy::direct), x);
        auto r2 = execute(make_plan(n, RadixPolicy::pure2), x);
        CHECK(compare(r4, r8).relative_l2 < 1e-13);
        CHECK(compare(r2, r8).relative_l2 < 1e-13);
        const std::size_t b_max = std::size_t{1} << std::uniform_int_distribution<unsigned>(1, log2_exact(n) - 1)(rng);
        CHECK(compare(execute_four_step(make_four_step_plan(n, b_max), x), r8).relative_l2 < 1e-13);
    });
}

TEST_CASE("property: butterflies scale energy by their radix") {
    test::for_all("butterfly_energy", kCases, 1007, [](auto& rng, std::size_t) {
        auto e = [](const auto& v) {
            double s = 0;
            for (const auto& c : v) s += norm2(c);
            return s;
        };
        ButterflyVector<double, 2> x2;
        ButterflyVector<double, 4> x4;
        ButterflyVector<double, 8> x8;
        for (auto& c : x2) c = random_complex(rng);
        for (auto& c : x4) c = random_complex(rng);
        for (auto& c : x8) c = random_complex(rng);
        CHECK(e(butterfly_radix2(x2)) == doctest::Approx(2 * e(x2)).epsilon(1e-14));
        CHECK(e(butterfly_radix4(x4)) == doctest::Approx(4 * e(x4)).epsilon(1e-14));
        CHECK(e(butterfly_radix8_splitradix(x8)) == doctest::Approx(8 * e(x8)).epsilon(1e-14));
    });
}

TEST_CASE("property: cmul distributes over cadd within 4 ulps") {
    test::for_all("distributivity", kCases, 1008, [](auto& rng, std::size_t) {
        auto pick = [&] { return ComplexF{float(test::uniform(rng)), float(test::uniform(rng))}; };
        const auto a = pick(), b = pick(), c = pick();
        const auto lhs = cmul(a, cadd(b, c));
        const auto rhs = cadd(cmul(a, b), cmul(a, c));
        // ulps of the largest intermediate magnitude
        const double scale = std::sqrt(double(norm2(a))) * (std::sqrt(double(norm2(b))) + std::sqrt(double(norm2(c))));
        CHECK(std::abs(lhs.re - rhs.re) <= 4 * test::eps<float> * std::max(1.0, scale));
        CHECK(std::abs(lhs.im - rhs.im) <= 4 * test::eps<float> * std::max(1.0, scale));
        CHECK(cmul(a, b) == cmul(b, a));
    });
}
