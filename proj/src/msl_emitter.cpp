#include "sfft/msl_emitter.hpp"

#include <algorithm>
#include <cstdio>
#include <numbers>
#include <regex>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace sfft {
namespace {

std::string float_literal(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    std::string s(buf);
    if (s.find_first_of(".e") == std::string::npos) s += ".0";
    return s + "f";
}

std::string u(std::size_t v) { return std::to_string(v) + "u"; }

std::string entry_point_for(const FftPlan& plan) {
    std::string name = "sfft_n" + std::to_string(plan.n) + "_r";
    for (auto r : plan.radices()) name += std::to_string(r);
    return name;
}

constexpr const char* kBarrier = "threadgroup_barrier(mem_flags::mem_threadgroup);";

const char* kPrelude = R"(#include <metal_stdlib>
using namespace metal;

constant float SQRT1_2 = 0.707106781f;

struct FftStrides {
    uint in_elem;
    uint in_batch;
    uint out_elem;
    uint out_batch;
};

static inline float2 cmul(float2 a, float2 b) {
    return float2(a.x * b.x - a.y * b.y, a.x * b.y + a.y * b.x);
}

static inline float2 mul_neg_i(float2 a) {
    return float2(a.y, -a.x);
}

static inline void dft2(thread float2 *v) {
    const float2 a = v[0];
    v[0] = a + v[1];
    v[1] = a - v[1];
}

static inline void dft4(thread float2 *v) {
    const float2 t0 = v[0] + v[2];
    const float2 t1 = v[0] - v[2];
    const float2 t2 = v[1] + v[3];
    const float2 t3 = mul_neg_i(v[1] - v[3]);
    v[0] = t0 + t2;
    v[1] = t1 + t3;
    v[2] = t0 - t2;
    v[3] = t1 - t3;
}

// Split-radix DIT: DFT4 of even and odd halves, odd half scaled by W8^k.
static inline void dft8(thread float2 *v) {
    float2 e[4] = {v[0], v[2], v[4], v[6]};
    float2 o[4] = {v[1], v[3], v[5], v[7]};
    dft4(e);
    dft4(o);
    o[1] = SQRT1_2 * float2(o[1].x + o[1].y, o[1].y - o[1].x);
    o[2] = mul_neg_i(o[2]);
    o[3] = SQRT1_2 * float2(o[3].y - o[3].x, -(o[3].x + o[3].y));
    for (uint k = 0; k < 4; ++k) {
        v[k] = e[k] + o[k];
        v[k + 4] = e[k] - o[k];
    }
}
)";

nlohmann::ordered_json fft_dispatch(const FftPlan& plan, const std::string& entry) {
    nlohmann::ordered_json j;
    j["entry_point"] = entry;
    j["n"] = plan.n;
    j["threads_per_threadgroup"] = plan.threads;
    j["threadgroups_per_grid"] = "batch";
    j["threadgroup_memory_bytes"] = plan.stages.size() > 1 ? plan.n * kComplexFloatBytes : 0;
    j["buffers"] = nlohmann::ordered_json::array({
        {{"index", 0}, {"name", "in"}, {"type", "device const float2*"}},
        {{"index", 1}, {"name", "out"}, {"type", "device float2*"}},
        {{"index", 2}, {"name", "strides"}, {"type", "constant FftStrides&"}},
    });
    j["default_strides"] = {{"in_elem", 1}, {"in_batch", plan.n}, {"out_elem", 1}, {"out_batch", plan.n}};
    return j;
}

}  // namespace

KernelSource emit_kernel(const FftPlan& plan) {
    validate_plan(plan);

    const std::size_t n_stages = plan.stages.size();
    const bool shared = n_stages > 1;
    const std::size_t threads = plan.threads;

    KernelSource src;
    src.entry_point = entry_point_for(plan);
    auto& d = src.plan_digest;
    d.n = plan.n;
    d.radices = plan.radices();
    d.threads = plan.threads;
    d.threadgroup_elements = shared ? plan.n : 0;

    unsigned max_radix = 0;
    std::size_t max_per_thread = 0;
    for (const auto& s : plan.stages) {
        max_radix = std::max(max_radix, s.radix);
        const std::size_t nb = plan.n / s.radix;
        max_per_thread = std::max(max_per_thread, (nb + threads - 1) / threads);
    }

    // Count barriers first so the header can state it.
    for (std::size_t s = 0; s < n_stages; ++s) {
        if (s > 0) d.barrier_positions.push_back("stage " + std::to_string(s) + " before-read");
        if (s + 1 < n_stages) d.barrier_positions.push_back("stage " + std::to_string(s) + " before-write");
    }
    d.barrier_count = static_cast<unsigned>(d.barrier_positions.size());

    std::ostringstream os;
    os << "// sfft generated kernel\n";
    os << "// n: " << plan.n << "\n";
    os << "// radices:";
    for (auto r : d.radices) os << " " << r;
    os << "\n";
    os << "// threads_per_threadgroup: " << plan.threads << "\n";
    os << "// barriers: " << d.barrier_count << "\n";
    os << kPrelude << "\n";

    os << "kernel void " << src.entry_point << "(\n"
       << "    device const float2 *in [[buffer(0)]],\n"
       << "    device float2 *out [[buffer(1)]],\n"
       << "    constant FftStrides &strides [[buffer(2)]],\n"
       << "    uint tid [[thread_position_in_threadgroup]],\n"
       << "    uint batch [[threadgroup_position_in_grid]]) {\n";
    if (shared) os << "    threadgroup float2 buf[" << plan.n << "];\n";
    os << "    device const float2 *src = in + batch * strides.in_batch;\n"
       << "    device float2 *dst = out + batch * strides.out_batch;\n"
       << "    float2 v[" << max_per_thread << "][" << max_radix << "];\n";

    for (std::size_t s = 0; s < n_stages; ++s) {
        const auto& stage = plan.stages[s];
        const StageAddressing addr(plan.n, stage);
        const std::size_t R = addr.radix;
        const std::size_t nb = addr.butterflies();
        const std::size_t per_thread = (nb + threads - 1) / threads;
        const bool first = s == 0;
        const bool last = s + 1 == n_stages;

        os << "\n    // stage " << s << ": radix " << R << ", span " << addr.span << "\n";
        if (!first) os << "    " << kBarrier << "\n";

        // Read phase.
        os << "    for (uint i = 0; i < " << u(per_thread) << "; ++i) {\n"
           << "        const uint j = tid + i * " << u(threads) << ";\n"
           << "        if (j < " << u(nb) << ") {\n";
        for (std::size_t r = 0; r < R; ++r) {
            const std::string idx = "j + " + u(r * addr.input_stride());
            os << "            v[i][" << r << "] = ";
            if (first) os << "src[(" << idx << ") * strides.in_elem];\n";
            else os << "buf[" << idx << "];\n";
        }
        os << "        }\n    }\n";

        if (!last) os << "    " << kBarrier << "\n";

        // Twiddle, butterfly, write phase.
        os << "    for (uint i = 0; i < " << u(per_thread) << "; ++i) {\n"
           << "        const uint j = tid + i * " << u(threads) << ";\n"
           << "        if (j < " << u(nb) << ") {\n"
           << "            const uint k = j % " << u(addr.span) << ";\n";
        if (addr.span > 1) {
            const double step = -2.0 * std::numbers::pi / static_cast<double>(addr.twiddle_order());
            os << "            float c;\n"
               << "            const float sn = sincos(float(k) * " << float_literal(step) << ", c);\n"
               << "            const float2 w1 = float2(c, sn);\n"
               << "            float2 w = w1;\n";
            for (std::size_t r = 1; r < R; ++r) {
                if (r > 1) os << "            w = cmul(w, w1);\n";
                os << "            v[i][" << r << "] = cmul(v[i][" << r << "], w);\n";
            }
        }
        os << "            dft" << R << "(v[i]);\n"
           << "            const uint base = (j / " << u(addr.span) << ") * " << u(addr.span * R) << " + k;\n";
        for (std::size_t r = 0; r < R; ++r) {
            const std::string idx = r == 0 ? std::string("base") : "base + " + u(r * addr.output_stride());
            if (last) os << "            dst[(" << idx << ") * strides.out_elem] = v[i][" << r << "];\n";
            else os << "            buf[" << idx << "] = v[i][" << r << "];\n";
        }
        os << "        }\n    }\n";
    }
    os << "}\n";

    src.text = os.str();
    src.dispatch_json = fft_dispatch(plan, src.entry_point).dump(2) + "\n";
    return src;
}

KernelSource emit_transpose_kernel(std::size_t n1, std::size_t n2) {
    if (n1 == 0 || n2 == 0) throw std::invalid_argument("emit_transpose_kernel: empty dimension");
    const std::size_t n = n1 * n2;
    KernelSource src;
    src.entry_point = "sfft_transpose_twiddle_" + std::to_string(n1) + "x" + std::to_string(n2);
    src.plan_digest.n = n;
    src.plan_digest.threads = static_cast<unsigned>(std::min<std::size_t>(n, 256));

    const double step = -2.0 * std::numbers::pi / static_cast<double>(n);
    std::ostringstream os;
    os << "// sfft generated kernel\n"
       << "// n: " << n << "\n"
       << "// transpose: " << n1 << " x " << n2 << " -> " << n2 << " x " << n1 << ", twiddle W_" << n
       << "^(j*k)\n"
       << "// threads_per_threadgroup: " << src.plan_digest.threads << "\n"
       << "// barriers: 0\n"
       << "#include <metal_stdlib>\n"
       << "using namespace metal;\n\n"
       << "kernel void " << src.entry_point << "(\n"
       << "    device const float2 *in [[buffer(0)]],\n"
       << "    device float2 *out [[buffer(1)]],\n"
       << "    uint gid [[thread_position_in_grid]]) {\n"
       << "    const uint sig = gid / " << u(n) << ";\n"
       << "    const uint e = gid % " << u(n) << ";\n"
       << "    const uint j = e / " << u(n2) << ";\n"
       << "    const uint k = e % " << u(n2) << ";\n"
       << "    const uint p = (j * k) % " << u(n) << ";\n"
       << "    float c;\n"
       << "    const float sn = sincos(float(p) * " << float_literal(step) << ", c);\n"
       << "    const float2 a = in[sig * " << u(n) << " + e];\n"
       << "    out[sig * " << u(n) << " + k * " << u(n1) << " + j] =\n"
       << "        float2(a.x * c - a.y * sn, a.x * sn + a.y * c);\n"
       << "}\n";
    src.text = os.str();

    nlohmann::ordered_json j;
    j["entry_point"] = src.entry_point;
    j["n"] = n;
    j["threads_per_threadgroup"] = src.plan_digest.threads;
    j["threads_per_grid"] = "n * batch";
    j["threadgroup_memory_bytes"] = 0;
    j["buffers"] = nlohmann::ordered_json::array({
        {{"index", 0}, {"name", "in"}, {"type", "device const float2*"}},
        {{"index", 1}, {"name", "out"}, {"type", "device float2*"}},
    });
    src.dispatch_json = j.dump(2) + "\n";
    return src;
}

FourStepKernels emit_four_step_kernels(const FourStepPlan& plan) {
    if (plan.outer_four_step)
        throw std::invalid_argument("emit_four_step_kernels: multi-level plans are not emitted");
    if (plan.n1 * plan.n2 != plan.n) throw std::invalid_argument("emit_four_step_kernels: n != n1 * n2");

    FourStepKernels out;
    out.kernels.push_back(emit_kernel(plan.inner_plan));
    out.kernels.push_back(emit_transpose_kernel(plan.n1, plan.n2));
    out.kernels.push_back(emit_kernel(plan.outer_plan));

    const auto& inner = out.kernels[0];
    const auto& transpose = out.kernels[1];
    const auto& outer = out.kernels[2];

    nlohmann::ordered_json seq;
    seq["n"] = plan.n;
    seq["n1"] = plan.n1;
    seq["n2"] = plan.n2;
    seq["note"] = "one signal; offset every buffer by n elements per additional signal";
    seq["dispatches"] = nlohmann::ordered_json::array({
        {{"step", 1},
         {"kernel", inner.entry_point},
         {"threads_per_threadgroup", plan.inner_plan.threads},
         {"threadgroups_per_grid", plan.n1},
         {"in", "input"},
         {"out", "scratch0"},
         {"strides", {{"in_elem", plan.n1}, {"in_batch", 1}, {"out_elem", 1}, {"out_batch", plan.n2}}}},
        {{"step", 2},
         {"kernel", transpose.entry_point},
         {"threads_per_threadgroup", transpose.plan_digest.threads},
         {"threads_per_grid", plan.n},
         {"in", "scratch0"},
         {"out", "scratch1"}},
        {{"step", 3},
         {"kernel", outer.entry_point},
         {"threads_per_threadgroup", plan.outer_plan.threads},
         {"threadgroups_per_grid", plan.n2},
         {"in", "scratch1"},
         {"out", "output"},
         {"strides", {{"in_elem", 1}, {"in_batch", plan.n1}, {"out_elem", plan.n2}, {"out_batch", 1}}}},
    });
    out.dispatch_json = seq.dump(2) + "\n";
    return out;
}

namespace {

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
    std::size_t count = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + needle.size()))
        ++count;
    return count;
}

}  // namespace

StructuralReport structural_check(const KernelSource& src, const FftPlan& plan) {
    StructuralReport rep;
    auto fail = [&](std::string msg) {
        rep.ok = false;
        rep.failures.push_back(std::move(msg));
    };

    const auto barriers = count_occurrences(src.text, "threadgroup_barrier(");
    if (barriers != count_barriers(plan))
        fail("barrier count " + std::to_string(barriers) + ", plan expects " + std::to_string(count_barriers(plan)));

    std::size_t blocks = 0;
    std::size_t twiddled = 0;
    {
        static const std::regex stage_re(R"(^    // stage (\d+): radix (\d+), span (\d+)$)");
        std::istringstream in(src.text);
        std::string line;
        while (std::getline(in, line)) {
            std::smatch m;
            if (!std::regex_match(line, m, stage_re)) continue;
            const auto s = std::stoul(m[1]);
            if (s != blocks) fail("stage block " + m[1].str() + " out of order");
            if (s < plan.stages.size()) {
                if (std::stoul(m[2]) != plan.stages[s].radix) fail("stage " + m[1].str() + " radix mismatch");
                if (std::stoul(m[3]) != plan.stages[s].span) fail("stage " + m[1].str() + " span mismatch");
                if (plan.stages[s].span > 1) ++twiddled;
            }
            ++blocks;
        }
    }
    if (blocks != plan.stages.size())
        fail("stage blocks " + std::to_string(blocks) + ", plan has " + std::to_string(plan.stages.size()));

    const auto sincos_calls = count_occurrences(src.text, "sincos(");
    if (sincos_calls != twiddled)
        fail("sincos calls " + std::to_string(sincos_calls) + ", expected one per twiddled stage (" +
             std::to_string(twiddled) + ")");

    {
        static const std::regex buf_re(R"(threadgroup float2 buf\[(\d+)\];)");
        std::smatch m;
        const bool declared = std::regex_search(src.text, m, buf_re);
        const bool needs = plan.stages.size() > 1;
        if (needs && !declared) fail("threadgroup buffer missing");
        if (!needs && declared) fail("threadgroup buffer declared for a single-stage plan");
        if (declared && std::stoul(m[1]) != plan.n)
            fail("threadgroup buffer size " + m[1].str() + ", plan n " + std::to_string(plan.n));
    }
    {
        static const std::regex threads_re(R"(// threads_per_threadgroup: (\d+))");
        std::smatch m;
        if (!std::regex_search(src.text, m, threads_re)) fail("thread-count metadata missing");
        else if (std::stoul(m[1]) != plan.threads)
            fail("thread count " + m[1].str() + ", plan threads " + std::to_string(plan.threads));
    }
    {
        static const std::regex n_re(R"(// n: (\d+))");
        std::smatch m;
        if (!std::regex_search(src.text, m, n_re)) fail("size metadata missing");
        else if (std::stoul(m[1]) != plan.n) fail("size " + m[1].str() + ", plan n " + std::to_string(plan.n));
    }
    return rep;
}

}  // namespace sfft
