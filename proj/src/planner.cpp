#include "sfft/planner.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace sfft {

std::vector<RadixProfile> standard_radix_profiles() {
    return {
        {2, 10, 8, 12, 22},
        {4, 34, 18, 6, 10},
        {8, 94, 38, 4, 6},
        {16, 214, 78, 3, 4},
    };
}

namespace {

std::size_t floor_pow2(std::size_t v) {
    if (v == 0) return 0;
    return std::size_t{1} << log2_exact(v);
}

constexpr std::size_t kResidentThreads = 256;
constexpr std::size_t kResidentBytesPerThread = 32 * 8;  // 32 complex FP32 elements

}  // namespace

std::size_t max_local_fft(const HardwareModel& hw, std::size_t bytes_per_element, CapacityStrategy strategy) {
    if (bytes_per_element != 4 && bytes_per_element != 8 && bytes_per_element != 16)
        throw std::invalid_argument("max_local_fft: bytes_per_element must be 4, 8 or 16");

    std::size_t tiled = floor_pow2(hw.threadgroup_memory_bytes / bytes_per_element);
    if (hw.local_fft_points_override != 0)
        tiled = floor_pow2(hw.local_fft_points_override * 8 / bytes_per_element);

    switch (strategy) {
        case CapacityStrategy::register_tiled: return tiled;
        case CapacityStrategy::double_buffered: return tiled / 2;
        case CapacityStrategy::register_resident: {
            const std::size_t by_threads = kResidentThreads * (kResidentBytesPerThread / bytes_per_element);
            const std::size_t by_file = hw.register_file_bytes / bytes_per_element;
            return floor_pow2(std::min(by_threads, by_file));
        }
    }
    return tiled;
}

RadixSelection select_radix(const HardwareModel& hw, const std::vector<RadixProfile>& profiles,
                            double headroom) {
    if (profiles.empty()) throw std::invalid_argument("select_radix: no profiles");
    const double budget = headroom * static_cast<double>(hw.gprs_per_thread);

    const RadixProfile* best = nullptr;
    for (const auto& p : profiles) {
        if (static_cast<double>(p.gprs_per_thread) > budget) continue;
        if (!best || p.radix > best->radix) best = &p;
    }
    if (best) return {*best, false};

    const auto smallest = std::min_element(profiles.begin(), profiles.end(), [](const auto& a, const auto& b) {
        return a.gprs_per_thread < b.gprs_per_thread;
    });
    return {*smallest, true};
}

unsigned thread_count(std::size_t n, unsigned radix, const HardwareModel& hw) {
    if (radix == 0) throw std::invalid_argument("thread_count: radix must be positive");
    const std::size_t simd = hw.simd_width;
    std::size_t t = std::min<std::size_t>(n / radix, hw.max_threads_per_threadgroup);
    t = (t / simd) * simd;
    return static_cast<unsigned>(std::max(t, simd));
}

std::string_view to_string(DecompositionKind k) {
    switch (k) {
        case DecompositionKind::single_threadgroup: return "single_threadgroup";
        case DecompositionKind::four_step: return "four_step";
        case DecompositionKind::multi_level_four_step: return "multi_level_four_step";
    }
    return "?";
}

namespace {

RadixPolicy policy_for_radix(unsigned radix) {
    if (radix >= 8) return RadixPolicy::prefer8;
    if (radix == 4) return RadixPolicy::prefer4;
    return RadixPolicy::pure2;
}

unsigned lead_radix(RadixPolicy p) {
    switch (p) {
        case RadixPolicy::prefer8: return 8;
        case RadixPolicy::prefer4: return 4;
        case RadixPolicy::pure2: return 2;
    }
    return 2;
}

FftPlan local_plan(std::size_t n, RadixPolicy policy, const HardwareModel& hw, std::size_t precision_bytes) {
    auto plan = make_plan(n, policy, TwiddlePolicy::chained_single_sincos,
                          BufferStrategy::register_tiled_single_buffer, precision_bytes);
    plan.threads = thread_count(n, lead_radix(policy), hw);
    return plan;
}

FourStepPlan four_step_plan(std::size_t n, std::size_t b_max, RadixPolicy policy, const HardwareModel& hw,
                            std::size_t precision_bytes) {
    const auto [n1, n2] = four_step_split(n, b_max);
    FourStepPlan fs;
    fs.n = n;
    fs.n1 = n1;
    fs.n2 = n2;
    fs.inner_plan = local_plan(n2, policy, hw, precision_bytes);
    if (n1 > b_max)
        fs.outer_four_step =
            std::make_shared<const FourStepPlan>(four_step_plan(n1, b_max, policy, hw, precision_bytes));
    else
        fs.outer_plan = local_plan(n1, policy, hw, precision_bytes);
    return fs;
}

}  // namespace

DecompositionPlan synthesize(std::size_t n, const HardwareModel& hw, std::size_t precision_bytes,
                             const SynthesisOptions& options) {
    if (n < 2 || !is_power_of_two(n)) throw std::invalid_argument("synthesize: size must be a power of two >= 2");
    validate(hw);

    DecompositionPlan out;
    out.n = n;
    out.b_max = max_local_fft(hw, precision_bytes, CapacityStrategy::register_tiled);

    RadixPolicy policy;
    if (options.policy) {
        policy = *options.policy;
        out.selected_radix = lead_radix(policy);
        out.rationale.push_back("radix policy " + std::string(to_string(policy)) + " forced by caller");
    } else {
        const auto sel = select_radix(hw, standard_radix_profiles(), options.register_headroom);
        policy = policy_for_radix(sel.profile.radix);
        out.selected_radix = lead_radix(policy);
        std::ostringstream why;
        why << "radix " << sel.profile.radix << " selected: " << sel.profile.gprs_per_thread << " of "
            << hw.gprs_per_thread << " GPRs";
        if (sel.degraded) why << " (degraded: no profile within headroom)";
        if (sel.profile.radix > 8) why << "; executed with radix-8 stages";
        out.rationale.push_back(why.str());
    }

    if (n <= out.b_max) {
        out.kind = DecompositionKind::single_threadgroup;
        out.inner = local_plan(n, policy, hw, precision_bytes);
        out.rationale.push_back("single-threadgroup: n=" + std::to_string(n) + " <= B_max=" +
                                std::to_string(out.b_max));
        return out;
    }

    auto fs = four_step_plan(n, out.b_max, policy, hw, precision_bytes);
    out.rationale.push_back("four-step: n=" + std::to_string(n) + " > B_max, split n1=" + std::to_string(fs.n1) +
                            " x n2=" + std::to_string(fs.n2) + ", twiddles applied in the transpose");
    if (n <= options.four_step_max_outer * out.b_max) {
        out.kind = DecompositionKind::four_step;
    } else {
        out.kind = DecompositionKind::multi_level_four_step;
        out.rationale.push_back("multi-level: n > " + std::to_string(options.four_step_max_outer) +
                                " x B_max, " + std::to_string(fs.levels()) + " transpose level(s)");
    }
    out.inner = std::move(fs);
    return out;
}

template <typename T>
Signal<T> execute_plan(const DecompositionPlan& plan, std::span<const Complex<T>> input, bool inverse) {
    if (const auto* p = plan.single()) return inverse ? execute_inverse<T>(*p, input) : execute<T>(*p, input);
    const auto& fs = *plan.four_step();
    return inverse ? execute_four_step_inverse<T>(fs, input) : execute_four_step<T>(fs, input);
}

template Signal<float> execute_plan<float>(const DecompositionPlan&, std::span<const ComplexF>, bool);
template Signal<double> execute_plan<double>(const DecompositionPlan&, std::span<const ComplexD>, bool);

namespace {

void describe_fft(std::ostream& os, const FftPlan& p, const std::string& indent) {
    os << indent << "n: " << p.n << "\n";
    os << indent << "radices:";
    for (auto r : p.radices()) os << " " << r;
    os << "\n";
    os << indent << "stages: " << p.stages.size() << "\n";
    os << indent << "threads: " << p.threads << "\n";
    os << indent << "barriers: " << p.barrier_count << "\n";
    os << indent << "threadgroup_bytes: " << p.threadgroup_bytes << "\n";
    os << indent << "buffer_strategy: " << to_string(p.buffer_strategy) << "\n";
}

void describe_four_step(std::ostream& os, const FourStepPlan& fs, const std::string& indent) {
    os << indent << "n1: " << fs.n1 << "\n" << indent << "n2: " << fs.n2 << "\n";
    os << indent << "inner_plan:\n";
    describe_fft(os, fs.inner_plan, indent + "  ");
    if (fs.outer_four_step) {
        os << indent << "outer_four_step:\n";
        describe_four_step(os, *fs.outer_four_step, indent + "  ");
    } else {
        os << indent << "outer_plan:\n";
        describe_fft(os, fs.outer_plan, indent + "  ");
    }
}

}  // namespace

std::string describe(const DecompositionPlan& plan) {
    std::ostringstream os;
    os << "kind: " << to_string(plan.kind) << "\n";
    os << "n: " << plan.n << "\n";
    os << "b_max: " << plan.b_max << "\n";
    os << "selected_radix: " << plan.selected_radix << "\n";
    if (const auto* p = plan.single()) describe_fft(os, *p, "");
    if (const auto* fs = plan.four_step()) describe_four_step(os, *fs, "");
    os << "rationale:\n";
    for (const auto& r : plan.rationale) os << "  - " << r << "\n";
    return os.str();
}

}  // namespace sfft
