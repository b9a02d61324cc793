#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>

namespace sfft {

/// Architectural parameters that drive planning and costing. Bandwidths are
/// aggregate bytes per second.
struct HardwareModel {
    std::string name = "unnamed";
    std::uint64_t gpu_cores = 0;
    std::uint64_t alus_per_core = 0;
    std::uint64_t fp32_flops_per_cycle_per_core = 0;
    std::uint64_t simd_width = 0;
    std::uint64_t max_threads_per_threadgroup = 0;
    std::uint64_t gprs_per_thread = 0;  // 32-bit registers
    std::uint64_t register_file_bytes = 0;
    std::uint64_t threadgroup_memory_bytes = 0;
    double dram_bandwidth_bytes_per_sec = 0;
    double clock_hz = 0;
    double tg_bw_sequential = 0;
    double tg_bw_strided = 0;
    double shuffle_bw = 0;
    /// Stored for completeness; no modeled kernel uses it.
    double register_tg_copy_bw = 0;
    double barrier_cost_cycles = 0;
    /// Published local-FFT limit in points, overriding the capacity formula
    /// for register-tiled planning. 0 means derive it from threadgroup memory.
    std::uint64_t local_fft_points_override = 0;

    double peak_flops_per_sec() const {
        return static_cast<double>(gpu_cores * fp32_flops_per_cycle_per_core) * clock_hz;
    }
};

/// Apple M1 GPU: 8 cores at 1278 MHz, 32 KiB threadgroup memory, 208 KiB
/// register file, measured threadgroup/shuffle bandwidths, ~2-cycle barriers.
HardwareModel m1_model();

/// Intel IvyBridge EU as used by the earlier Intel-GPU decomposition work.
HardwareModel intel_eu_model();

/// Throws std::invalid_argument on a non-positive field or when threadgroup
/// memory exceeds the register file.
void validate(const HardwareModel& hw);

/// Flat `key = value` text, one field per line, `#` comments. Unknown keys and
/// missing required keys are errors; `base = m1` / `base = intel_eu` starts
/// from a preset.
HardwareModel parse_hardware_model(std::istream& in);
HardwareModel load_hardware_model(const std::string& path);

/// "m1", "intel_eu" (or "intel-eu"), or a path to a model file.
HardwareModel resolve_hardware_model(std::string_view name_or_path);

std::string to_config_text(const HardwareModel& hw);

}  // namespace sfft
