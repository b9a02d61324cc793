#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sfft/hardware.hpp"
#include "sfft/planner.hpp"

namespace sfft {

/// 5 n log2(n) per transform, times batch.
std::uint64_t fft_flops(std::size_t n, std::size_t batch);

struct CostEstimate {
    double flops = 0;
    double tier1_bytes = 0;  // SIMD-shuffle exchange
    double tier2_bytes = 0;  // threadgroup memory
    double device_bytes = 0;
    double barriers = 0;
    double barrier_cycles = 0;
    double predicted_seconds = 0;
    double gflops_predicted = 0;

    // Breakdown used to form predicted_seconds.
    double tier2_sequential_bytes = 0;
    double tier2_strided_bytes = 0;  // strided and scattered
    double compute_seconds = 0;
    double memory_seconds = 0;
    double barrier_seconds = 0;
};

/// Analytical cost of `batch` independent transforms.
///
/// Each threadgroup exchange moves n elements out of and back into
/// threadgroup memory; the first stage reads and the last stage writes device
/// memory directly. Threadgroup traffic is charged at the sequential or
/// strided bandwidth by each stage's access class (scattered counts as
/// strided). Four-step plans add two device passes and 6 FLOPs per element for
/// the twiddled transpose.
///
///   predicted = max(compute, tier1 + tier2 + device) + barrier time
CostEstimate estimate(const DecompositionPlan& plan, const HardwareModel& hw, std::size_t batch,
                      std::size_t bytes_per_element = 8);
CostEstimate estimate(const FftPlan& plan, const HardwareModel& hw, std::size_t batch,
                      std::size_t bytes_per_element = 8);

/// Named N-point design variants: "radix4", "radix8", "radix2", "shuffle".
/// Sizes beyond B_max wrap the variant in a four-step decomposition.
/// "shuffle" is the SIMD-shuffle hybrid: radix-8 stages whose first exchange
/// stays in SIMD shuffles and whose threadgroup exchanges are all scattered.
DecompositionPlan make_design(const std::string& name, std::size_t n, const HardwareModel& hw);

struct NamedDesign {
    std::string name;
    DecompositionPlan plan;
};

struct RankedDesign {
    std::string name;
    CostEstimate cost;
};

/// Ascending predicted time; ties keep input order.
std::vector<RankedDesign> rank_designs(const std::vector<NamedDesign>& designs, const HardwareModel& hw,
                                       std::size_t batch);

struct ThesisComparison {
    std::string name_a, name_b;
    std::size_t max_local_fft_a = 0;
    std::size_t max_local_fft_b = 0;
    double local_fft_ratio = 0;  // b / a
    double shared_memory_ratio = 0;
    double register_file_ratio = 0;
    double dram_bandwidth_ratio = 0;
    double simd_width_ratio = 0;
};

ThesisComparison thesis_comparison(const HardwareModel& a, const HardwareModel& b);

}  // namespace sfft
