#include "sfft/cost_model.hpp"
#include "test_util.hpp"

using namespace sfft;

TEST_CASE("fft_flops") {
    CHECK(fft_flops(4096, 256) == 62914560ull);
    CHECK(fft_flops(2, 1) == 10);
    // 1.78 us per transform at batch 256 -> ~138.1 GFLOPS.
    const double gflops = static_cast<double>(fft_flops(4096, 256)) / (1.78e-6 * 256) / 1e9;
    CHECK(gflops == doctest::Approx(138.1).epsilon(0.005));
    for (unsigned b = 1; b <= 20; ++b) {
        const std::size_t n = std::size_t{1} << b;
        CHECK(fft_flops(n, 3) == 5ull * n * b * 3);
    }
}

TEST_CASE("estimate basics") {
    const auto hw = m1_model();
    auto plan = synthesize(4096, hw, 8);
    auto c = estimate(plan, hw, 256);
    CHECK(c.predicted_seconds > 0);
    CHECK(c.gflops_predicted == doctest::Approx(c.flops / c.predicted_seconds / 1e9));
    CHECK(c.barriers == 6 * 256);
    CHECK(c.barrier_cycles == 6 * 256 * 2);
    // Three exchanges, each a write and a read of the whole signal.
    CHECK(c.tier2_bytes == 6.0 * 4096 * 8 * 256);
    CHECK(c.device_bytes == 2.0 * 4096 * 8 * 256);
    CHECK(c.tier1_bytes == 0);
    CHECK_THROWS_AS(estimate(plan, hw, 0), std::invalid_argument);
}

TEST_CASE("single-stage plan has no threadgroup traffic") {
    const auto hw = m1_model();
    auto c = estimate(make_plan(8, RadixPolicy::prefer8), hw, 1);
    CHECK(c.tier2_bytes == 0);
    CHECK(c.barriers == 0);
    CHECK(c.predicted_seconds > 0);
}

TEST_CASE("radix-8 beats radix-4; the scattered shuffle hybrid is slowest") {
    const auto hw = m1_model();
    auto r8 = estimate(make_design("radix8", 4096, hw), hw, 256);
    auto r4 = estimate(make_design("radix4", 4096, hw), hw, 256);
    auto sh = estimate(make_design("shuffle", 4096, hw), hw, 256);
    CHECK(r8.predicted_seconds < r4.predicted_seconds);
    CHECK(r4.predicted_seconds < sh.predicted_seconds);
    CHECK(sh.barriers == 4 * 256);
    CHECK(sh.tier1_bytes > 0);
    CHECK_THROWS_AS(make_design("radix16", 4096, hw), std::invalid_argument);
}

TEST_CASE("rank_designs") {
    const auto hw = m1_model();
    std::vector<NamedDesign> designs{{"radix4", make_design("radix4", 4096, hw)},
                                     {"radix8", make_design("radix8", 4096, hw)},
                                     {"shuffle", make_design("shuffle", 4096, hw)}};
    auto ranked = rank_designs(designs, hw, 256);
    REQUIRE(ranked.size() == 3);
    CHECK(ranked[0].name == "radix8");
    CHECK(ranked[1].name == "radix4");
    CHECK(ranked[2].name == "shuffle");

    auto single = rank_designs({designs[0]}, hw, 256);
    REQUIRE(single.size() == 1);
    CHECK(single[0].name == "radix4");

    std::vector<NamedDesign> twins{{"a", make_design("radix8", 4096, hw)}, {"b", make_design("radix8", 4096, hw)}};
    auto tied = rank_designs(twins, hw, 256);
    CHECK(tied[0].name == "a");
    CHECK(tied[1].name == "b");

    CHECK_THROWS_AS(rank_designs({}, hw, 256), std::invalid_argument);
}

TEST_CASE("multi-size trend") {
    const auto hw = m1_model();
    double prev = 0;
    for (std::size_t n = 256; n <= 4096; n *= 2) {
        const double g = estimate(synthesize(n, hw, 8), hw, 256).gflops_predicted;
        CAPTURE(n);
        CHECK(g >= prev);
        prev = g;
    }
    const double g8192 = estimate(synthesize(8192, hw, 8), hw, 256).gflops_predicted;
    CHECK(g8192 < prev);
}

TEST_CASE("four-step estimate includes transpose traffic") {
    const auto hw = m1_model();
    auto c = estimate(synthesize(8192, hw, 8), hw, 1);
    // Two sub-dispatches each read and write the signal, plus the transpose.
    CHECK(c.device_bytes == 6.0 * 8192 * 8);
    CHECK(c.flops == static_cast<double>(fft_flops(8192, 1)) + 6.0 * 8192);
}

TEST_CASE("faster sequential threadgroup memory never slows a plan") {
    auto hw = m1_model();
    const auto plan = synthesize(4096, hw, 8);
    double prev = estimate(plan, hw, 256).predicted_seconds;
    for (double bw = 700e9; bw < 5e12; bw *= 1.5) {
        hw.tg_bw_sequential = bw;
        const double t = estimate(plan, hw, 256).predicted_seconds;
        CHECK(t <= prev);
        prev = t;
    }
}

TEST_CASE("thesis comparison") {
    auto r = thesis_comparison(intel_eu_model(), m1_model());
    CHECK(r.max_local_fft_a == 1024);
    CHECK(r.max_local_fft_b == 4096);
    CHECK(r.local_fft_ratio == 4.0);
    CHECK(r.shared_memory_ratio == 16.0);
    CHECK(r.register_file_ratio == 104.0);
    CHECK(r.simd_width_ratio == 4.0);

    auto self = thesis_comparison(m1_model(), m1_model());
    CHECK(self.local_fft_ratio == 1.0);
    CHECK(self.shared_memory_ratio == 1.0);
    CHECK(self.register_file_ratio == 1.0);
    CHECK(self.dram_bandwidth_ratio == 1.0);
    CHECK(self.simd_width_ratio == 1.0);
}
