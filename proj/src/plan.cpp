#include "sfft/plan.hpp"

#include <algorithm>
#include <stdexcept>

namespace sfft {

std::string_view to_string(TwiddlePolicy p) {
    switch (p) {
        case TwiddlePolicy::chained_single_sincos: return "chained_single_sincos";
        case TwiddlePolicy::direct: return "direct";
    }
    return "?";
}

std::string_view to_string(AccessClass a) {
    switch (a) {
        case AccessClass::sequential: return "sequential";
        case AccessClass::strided: return "strided";
        case AccessClass::scattered: return "scattered";
    }
    return "?";
}

std::string_view to_string(BufferStrategy b) {
    switch (b) {
        case BufferStrategy::double_buffer: return "double_buffer";
        case BufferStrategy::register_tiled_single_buffer: return "register_tiled_single_buffer";
        case BufferStrategy::simd_shuffle_hybrid: return "simd_shuffle_hybrid";
    }
    return "?";
}

std::string_view to_string(RadixPolicy p) {
    switch (p) {
        case RadixPolicy::prefer8: return "prefer8";
        case RadixPolicy::prefer4: return "prefer4";
        case RadixPolicy::pure2: return "pure2";
    }
    return "?";
}

RadixPolicy parse_radix_policy(std::string_view s) {
    if (s == "prefer8" || s == "radix8") return RadixPolicy::prefer8;
    if (s == "prefer4" || s == "radix4") return RadixPolicy::prefer4;
    if (s == "pure2" || s == "radix2") return RadixPolicy::pure2;
    throw std::invalid_argument("unknown radix policy: " + std::string(s));
}

std::vector<unsigned> FftPlan::radices() const {
    std::vector<unsigned> out;
    out.reserve(stages.size());
    for (const auto& s : stages) out.push_back(s.radix);
    return out;
}

std::size_t threadgroup_exchanges(const FftPlan& plan) {
    const std::size_t boundaries = plan.stages.empty() ? 0 : plan.stages.size() - 1;
    if (plan.buffer_strategy == BufferStrategy::simd_shuffle_hybrid)
        return boundaries == 0 ? 0 : boundaries - 1;
    return boundaries;
}

unsigned count_barriers(const FftPlan& plan) {
    const auto stages = static_cast<unsigned>(plan.stages.size());
    if (stages <= 1) return 0;
    switch (plan.buffer_strategy) {
        case BufferStrategy::register_tiled_single_buffer:
            return 2 * stages - 2;
        case BufferStrategy::double_buffer:
            return stages - 1;
        case BufferStrategy::simd_shuffle_hybrid:
            return 2 * static_cast<unsigned>(threadgroup_exchanges(plan));
    }
    return 0;
}

void finalize_plan(FftPlan& plan, std::size_t bytes_per_element) {
    std::size_t span = 1;
    for (auto& s : plan.stages) {
        s.span = span;
        span *= s.radix;
    }
    plan.barrier_count = count_barriers(plan);
    if (plan.stages.size() <= 1) {
        plan.threadgroup_bytes = 0;
    } else {
        const std::size_t buffers = plan.buffer_strategy == BufferStrategy::double_buffer ? 2 : 1;
        plan.threadgroup_bytes = buffers * plan.n * bytes_per_element;
    }
}

FftPlan make_plan(std::size_t n, RadixPolicy policy, TwiddlePolicy twiddles,
                  BufferStrategy strategy, std::size_t bytes_per_element) {
    if (n < 2 || !is_power_of_two(n))
        throw std::invalid_argument("make_plan: size must be a power of two >= 2, got " +
                                    std::to_string(n));
    if (n > kMaxSignalLength) throw std::invalid_argument("make_plan: size exceeds 2^24");

    const unsigned bits = log2_exact(n);
    std::vector<unsigned> radices;
    unsigned lead = 2;
    switch (policy) {
        case RadixPolicy::prefer8:
            lead = 8;
            radices.assign(bits / 3, 8);
            if (bits % 3 == 2) radices.push_back(4);
            if (bits % 3 == 1) radices.push_back(2);
            break;
        case RadixPolicy::prefer4:
            lead = 4;
            radices.assign(bits / 2, 4);
            if (bits % 2 == 1) radices.push_back(2);
            break;
        case RadixPolicy::pure2:
            radices.assign(bits, 2);
            break;
    }

    FftPlan plan;
    plan.n = n;
    plan.buffer_strategy = strategy;
    for (unsigned r : radices) plan.stages.push_back({r, 1, twiddles, AccessClass::sequential});
    plan.threads = static_cast<unsigned>(std::clamp<std::size_t>(n / lead, 1, 1024));
    finalize_plan(plan, bytes_per_element);
    return plan;
}

void validate_plan(const FftPlan& plan) {
    if (plan.n < 2 || !is_power_of_two(plan.n) || plan.n > kMaxSignalLength)
        throw std::invalid_argument("plan: size must be a power of two in [2, 2^24]");
    std::size_t span = 1;
    for (const auto& s : plan.stages) {
        if (s.radix != 2 && s.radix != 4 && s.radix != 8)
            throw std::invalid_argument("plan: stage radix must be 2, 4 or 8");
        if (s.span != span) throw std::invalid_argument("plan: stage span breaks the Stockham recurrence");
        span *= s.radix;
    }
    if (span != plan.n) throw std::invalid_argument("plan: radix product does not equal size");
    if (plan.threads == 0) throw std::invalid_argument("plan: thread count must be positive");
}

}  // namespace sfft
