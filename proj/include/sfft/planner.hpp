#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sfft/executor.hpp"
#include "sfft/four_step.hpp"
#include "sfft/hardware.hpp"
#include "sfft/plan.hpp"

namespace sfft {

struct RadixProfile {
    unsigned radix = 0;
    unsigned flops_per_butterfly = 0;
    unsigned gprs_per_thread = 0;
    unsigned stages_at_4096 = 0;
    unsigned barrier_estimate = 0;

    friend bool operator==(const RadixProfile&, const RadixProfile&) = default;
};

/// Radix 2/4/8/16 register and arithmetic profile for a 128-GPR thread.
std::vector<RadixProfile> standard_radix_profiles();

enum class CapacityStrategy { register_tiled, double_buffered, register_resident };

/// Largest power-of-two FFT that fits one threadgroup.
///   register_tiled:    threadgroup memory / element size (one reused buffer)
///   double_buffered:   half of register_tiled
///   register_resident: 256 threads holding 256 bytes of elements each,
///                      bounded by the register file
std::size_t max_local_fft(const HardwareModel& hw, std::size_t bytes_per_element, CapacityStrategy strategy);

struct RadixSelection {
    RadixProfile profile;
    /// True when no profile fit the headroom and the smallest-GPR one was taken.
    bool degraded = false;
};

/// Largest radix whose GPR use is at most `headroom` of the per-thread budget.
RadixSelection select_radix(const HardwareModel& hw, const std::vector<RadixProfile>& profiles,
                            double headroom = 0.5);

/// min(n / radix, max threads), rounded down to a multiple of the SIMD width,
/// never below one SIMD group.
unsigned thread_count(std::size_t n, unsigned radix, const HardwareModel& hw);

enum class DecompositionKind { single_threadgroup, four_step, multi_level_four_step };
std::string_view to_string(DecompositionKind k);

struct DecompositionPlan {
    DecompositionKind kind = DecompositionKind::single_threadgroup;
    std::size_t n = 0;
    std::variant<FftPlan, FourStepPlan> inner;
    std::size_t b_max = 0;
    unsigned selected_radix = 0;
    std::vector<std::string> rationale;

    const FftPlan* single() const { return std::get_if<FftPlan>(&inner); }
    const FourStepPlan* four_step() const { return std::get_if<FourStepPlan>(&inner); }
};

struct SynthesisOptions {
    /// Forces a radix policy instead of the register-headroom selection.
    std::optional<RadixPolicy> policy;
    double register_headroom = 0.5;
    /// Sizes up to this multiple of B_max are plain four-step; beyond it the
    /// plan is labeled multi-level.
    std::size_t four_step_max_outer = 4;
};

DecompositionPlan synthesize(std::size_t n, const HardwareModel& hw, std::size_t precision_bytes = 8,
                             const SynthesisOptions& options = {});

/// Runs a synthesized plan (single-threadgroup or four-step) on one signal.
template <typename T>
Signal<T> execute_plan(const DecompositionPlan& plan, std::span<const Complex<T>> input, bool inverse = false);

/// Human-readable summary, one `key: value` per line.
std::string describe(const DecompositionPlan& plan);

}  // namespace sfft
