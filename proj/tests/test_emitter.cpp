#include <fstream>
#include <sstream>

#include "sfft/hardware.hpp"
#include "sfft/msl_emitter.hpp"
#include "sfft/planner.hpp"
#include "test_util.hpp"

using namespace sfft;

namespace {

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t c = 0;
    for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++c;
    return c;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing golden file " << path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("radix-4 kernel at n=4096") {
    auto plan = make_plan(4096, RadixPolicy::prefer4);
    auto k = emit_kernel(plan);
    CHECK(count(k.text, "    // stage ") == 6);
    CHECK(count(k.text, "threadgroup_barrier(") == 10);
    CHECK(k.plan_digest.barrier_count == 10);
    CHECK(k.plan_digest.barrier_positions.size() == 10);
    CHECK(k.plan_digest.barrier_positions.front() == "stage 0 before-write");
    CHECK(k.plan_digest.barrier_positions.back() == "stage 5 before-read");
    CHECK(count(k.text, "sincos(") == 5);
    CHECK(k.text.find("threadgroup float2 buf[4096];") != std::string::npos);
    CHECK(k.entry_point == "sfft_n4096_r444444");
    CHECK(structural_check(k, plan).ok);
}

TEST_CASE("radix-8 kernel at n=4096") {
    const auto dp = synthesize(4096, m1_model(), 8);
    const auto* plan = dp.single();
    REQUIRE(plan);
    auto k = emit_kernel(*plan);
    CHECK(count(k.text, "    // stage ") == 4);
    CHECK(count(k.text, "threadgroup_barrier(") == 6);
    CHECK(k.text.find("// threads_per_threadgroup: 512\n") != std::string::npos);
    CHECK(k.plan_digest.threads == 512);
    CHECK(k.dispatch_json.find("\"threads_per_threadgroup\": 512") != std::string::npos);
    CHECK(structural_check(k, *plan).ok);
}

TEST_CASE("single-stage kernel has no barriers and no shared buffer") {
    auto plan = make_plan(8, RadixPolicy::prefer8);
    auto k = emit_kernel(plan);
    CHECK(count(k.text, "threadgroup_barrier(") == 0);
    CHECK(k.text.find("threadgroup float2") == std::string::npos);
    CHECK(count(k.text, "sincos(") == 0);
    CHECK(k.plan_digest.threadgroup_elements == 0);
    CHECK(structural_check(k, plan).ok);
}

TEST_CASE("first stage reads device memory, last stage writes it") {
    auto k = emit_kernel(make_plan(64, RadixPolicy::prefer8));
    const auto s0 = k.text.find("// stage 0");
    const auto s1 = k.text.find("// stage 1");
    REQUIRE(s0 != std::string::npos);
    REQUIRE(s1 != std::string::npos);
    const auto stage0 = k.text.substr(s0, s1 - s0);
    const auto stage1 = k.text.substr(s1);
    CHECK(stage0.find("= src[") != std::string::npos);
    CHECK(stage0.find("buf[base") != std::string::npos);
    CHECK(stage0.find("dst[") == std::string::npos);
    CHECK(stage1.find("= buf[") != std::string::npos);
    CHECK(stage1.find("dst[") != std::string::npos);
}

TEST_CASE("structural check passes for synthesized plans") {
    const auto hw = m1_model();
    for (auto policy : {RadixPolicy::prefer8, RadixPolicy::prefer4, RadixPolicy::pure2}) {
        SynthesisOptions opts;
        opts.policy = policy;
        for (std::size_t n = 2; n <= 4096; n *= 2) {
            const auto dp = synthesize(n, hw, 8, opts);
            const auto* plan = dp.single();
            REQUIRE(plan);
            auto rep = structural_check(emit_kernel(*plan), *plan);
            CAPTURE(n);
            CHECK(rep.ok);
        }
    }
}

TEST_CASE("structural check catches corrupted kernels") {
    auto plan = make_plan(4096, RadixPolicy::prefer4);
    auto k = emit_kernel(plan);

    auto dropped = k;
    dropped.text.erase(dropped.text.find("    threadgroup_barrier("),
                       std::string("    threadgroup_barrier(mem_flags::mem_threadgroup);\n").size());
    auto rep = structural_check(dropped, plan);
    CHECK_FALSE(rep.ok);
    REQUIRE_FALSE(rep.failures.empty());
    CHECK(rep.failures[0].find("barrier count 9") != std::string::npos);

    CHECK_FALSE(structural_check(k, make_plan(2048, RadixPolicy::prefer4)).ok);
    CHECK_FALSE(structural_check(k, make_plan(4096, RadixPolicy::prefer8)).ok);

    auto wrong_threads = plan;
    wrong_threads.threads = 256;
    CHECK_FALSE(structural_check(k, wrong_threads).ok);

    auto extra_sincos = k;
    extra_sincos.text += "// sincos(\n";
    CHECK_FALSE(structural_check(extra_sincos, plan).ok);
}

TEST_CASE("emission is deterministic") {
    auto plan = make_plan(2048, RadixPolicy::prefer8);
    auto a = emit_kernel(plan), b = emit_kernel(plan);
    CHECK(a.text == b.text);
    CHECK(a.dispatch_json == b.dispatch_json);
}

TEST_CASE("four-step kernel sets") {
    const auto hw = m1_model();
    for (std::size_t n : {8192u, 16384u}) {
        auto dp = synthesize(n, hw, 8);
        REQUIRE(dp.four_step());
        const auto& fs = *dp.four_step();
        auto set = emit_four_step_kernels(fs);
        REQUIRE(set.kernels.size() == 3);
        CHECK(set.kernels[0].text == emit_kernel(*synthesize(4096, hw, 8).single()).text);
        CHECK(set.kernels[1].entry_point ==
              "sfft_transpose_twiddle_" + std::to_string(fs.n1) + "x" + std::to_string(fs.n2));
        CHECK(count(set.kernels[1].text, "threadgroup_barrier(") == 0);
        CHECK(set.kernels[2].plan_digest.n == fs.n1);
        CHECK(structural_check(set.kernels[0], fs.inner_plan).ok);
        CHECK(structural_check(set.kernels[2], fs.outer_plan).ok);
        CHECK(set.dispatch_json.find("\"step\": 3") != std::string::npos);
    }
    // 2^16 splits as 16 x 4096: labeled multi-level but both steps are local.
    CHECK(emit_four_step_kernels(*synthesize(1u << 16, hw, 8).four_step()).kernels.size() == 3);
    CHECK_THROWS_AS(emit_four_step_kernels(make_four_step_plan(1u << 16, 16)), std::invalid_argument);
}

TEST_CASE("golden kernels") {
    const auto hw = m1_model();
    SynthesisOptions opts;
    opts.policy = RadixPolicy::prefer4;
    for (std::size_t n = 256; n <= 4096; n *= 2) {
        const auto dp = synthesize(n, hw, 8, opts);
        REQUIRE(dp.single());
        auto k = emit_kernel(*dp.single());
        CAPTURE(n);
        CHECK(k.text == slurp(std::string(SFFT_GOLDEN_DIR "/") + k.entry_point + ".metal"));
        CHECK(k.dispatch_json == slurp(std::string(SFFT_GOLDEN_DIR "/") + k.entry_point + ".json"));
    }
    auto r8 = emit_kernel(*synthesize(4096, hw, 8).single());
    CHECK(r8.text == slurp(std::string(SFFT_GOLDEN_DIR "/") + r8.entry_point + ".metal"));
}
