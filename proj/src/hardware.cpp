#include "sfft/hardware.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sfft {

HardwareModel m1_model() {
    HardwareModel hw;
    hw.name = "m1";
    hw.gpu_cores = 8;
    hw.alus_per_core = 128;
    hw.fp32_flops_per_cycle_per_core = 256;
    hw.simd_width = 32;
    hw.max_threads_per_threadgroup = 1024;
    hw.gprs_per_thread = 128;
    hw.register_file_bytes = 208 * 1024;
    hw.threadgroup_memory_bytes = 32 * 1024;
    hw.dram_bandwidth_bytes_per_sec = 68e9;
    hw.clock_hz = 1278e6;
    hw.tg_bw_sequential = 688e9;
    hw.tg_bw_strided = 217e9;
    hw.shuffle_bw = 262e9;
    hw.register_tg_copy_bw = 407e9;
    hw.barrier_cost_cycles = 2;
    return hw;
}

HardwareModel intel_eu_model() {
    HardwareModel hw;
    hw.name = "intel_eu";
    hw.gpu_cores = 16;
    hw.alus_per_core = 8;
    hw.fp32_flops_per_cycle_per_core = 16;
    hw.simd_width = 8;
    hw.max_threads_per_threadgroup = 512;
    hw.gprs_per_thread = 128;
    hw.register_file_bytes = 2 * 1024;
    hw.threadgroup_memory_bytes = 2 * 1024;
    hw.dram_bandwidth_bytes_per_sec = 25.6e9;
    hw.clock_hz = 1150e6;
    // No measured local-memory figures exist for this part; these scale the
    // M1 sequential/strided/shuffle ratios to the DRAM bandwidth.
    hw.tg_bw_sequential = 102.4e9;
    hw.tg_bw_strided = 32.3e9;
    hw.shuffle_bw = 39.0e9;
    hw.register_tg_copy_bw = 61.0e9;
    hw.barrier_cost_cycles = 2;
    // Published local FFT limit (2^10 points).
    hw.local_fft_points_override = 1024;
    return hw;
}

void validate(const HardwareModel& hw) {
    auto require = [&](bool ok, const char* field) {
        if (!ok) throw std::invalid_argument(std::string("hardware model '") + hw.name + "': " + field +
                                             " must be positive");
    };
    require(hw.gpu_cores > 0, "gpu_cores");
    require(hw.alus_per_core > 0, "alus_per_core");
    require(hw.fp32_flops_per_cycle_per_core > 0, "fp32_flops_per_cycle_per_core");
    require(hw.simd_width > 0, "simd_width");
    require(hw.max_threads_per_threadgroup > 0, "max_threads_per_threadgroup");
    require(hw.gprs_per_thread > 0, "gprs_per_thread");
    require(hw.register_file_bytes > 0, "register_file_bytes");
    require(hw.threadgroup_memory_bytes > 0, "threadgroup_memory_bytes");
    require(hw.dram_bandwidth_bytes_per_sec > 0, "dram_bandwidth_bytes_per_sec");
    require(hw.clock_hz > 0, "clock_hz");
    require(hw.tg_bw_sequential > 0, "tg_bw_sequential");
    require(hw.tg_bw_strided > 0, "tg_bw_strided");
    require(hw.shuffle_bw > 0, "shuffle_bw");
    require(hw.barrier_cost_cycles > 0, "barrier_cost_cycles");
    if (hw.threadgroup_memory_bytes > hw.register_file_bytes)
        throw std::invalid_argument("hardware model '" + hw.name +
                                    "': threadgroup memory exceeds the register file");
}

namespace {

using Setter = std::function<void(HardwareModel&, const std::string&)>;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::uint64_t parse_uint(const std::string& v) {
    std::uint64_t out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size()) throw std::invalid_argument("not an integer: " + v);
    return out;
}

double parse_real(const std::string& v) {
    std::size_t used = 0;
    double out = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument("not a number: " + v);
    return out;
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = [] {
        std::map<std::string, Setter> t;
        auto u = [&](const char* key, std::uint64_t HardwareModel::*field) {
            t[key] = [field](HardwareModel& hw, const std::string& v) { hw.*field = parse_uint(v); };
        };
        auto r = [&](const char* key, double HardwareModel::*field) {
            t[key] = [field](HardwareModel& hw, const std::string& v) { hw.*field = parse_real(v); };
        };
        t["name"] = [](HardwareModel& hw, const std::string& v) { hw.name = v; };
        u("gpu_cores", &HardwareModel::gpu_cores);
        u("alus_per_core", &HardwareModel::alus_per_core);
        u("fp32_flops_per_cycle_per_core", &HardwareModel::fp32_flops_per_cycle_per_core);
        u("simd_width", &HardwareModel::simd_width);
        u("max_threads_per_threadgroup", &HardwareModel::max_threads_per_threadgroup);
        u("gprs_per_thread", &HardwareModel::gprs_per_thread);
        u("register_file_bytes", &HardwareModel::register_file_bytes);
        u("threadgroup_memory_bytes", &HardwareModel::threadgroup_memory_bytes);
        r("dram_bandwidth_bytes_per_sec", &HardwareModel::dram_bandwidth_bytes_per_sec);
        r("clock_hz", &HardwareModel::clock_hz);
        r("tg_bw_sequential_bytes_per_sec", &HardwareModel::tg_bw_sequential);
        r("tg_bw_strided_bytes_per_sec", &HardwareModel::tg_bw_strided);
        r("shuffle_bw_bytes_per_sec", &HardwareModel::shuffle_bw);
        r("register_tg_copy_bw_bytes_per_sec", &HardwareModel::register_tg_copy_bw);
        r("barrier_cost_cycles", &HardwareModel::barrier_cost_cycles);
        u("local_fft_points_override", &HardwareModel::local_fft_points_override);
        return t;
    }();
    return table;
}

}  // namespace

HardwareModel parse_hardware_model(std::istream& in) {
    HardwareModel hw;
    std::set<std::string> seen;
    std::string line;
    int lineno = 0;
    bool has_base = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("hardware model line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "base") {
            if (!seen.empty()) throw std::invalid_argument("hardware model: 'base' must come first");
            hw = resolve_hardware_model(value);
            has_base = true;
            continue;
        }
        const auto it = setters().find(key);
        if (it == setters().end())
            throw std::invalid_argument("hardware model line " + std::to_string(lineno) + ": unknown key '" +
                                        key + "'");
        try {
            it->second(hw, value);
        } catch (const std::exception& e) {
            throw std::invalid_argument("hardware model line " + std::to_string(lineno) + ": " + e.what());
        }
        seen.insert(key);
    }
    if (!has_base) {
        for (const auto& [key, _] : setters()) {
            if (key == "name" || key == "local_fft_points_override" || key == "register_tg_copy_bw_bytes_per_sec")
                continue;
            if (!seen.count(key)) throw std::invalid_argument("hardware model: missing key '" + key + "'");
        }
    }
    validate(hw);
    return hw;
}

HardwareModel load_hardware_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open hardware model file: " + path);
    return parse_hardware_model(in);
}

HardwareModel resolve_hardware_model(std::string_view name_or_path) {
    if (name_or_path == "m1") return m1_model();
    if (name_or_path == "intel_eu" || name_or_path == "intel-eu") return intel_eu_model();
    return load_hardware_model(std::string(name_or_path));
}

std::string to_config_text(const HardwareModel& hw) {
    std::ostringstream os;
    os.precision(17);
    os << "name = " << hw.name << "\n"
       << "gpu_cores = " << hw.gpu_cores << "\n"
       << "alus_per_core = " << hw.alus_per_core << "\n"
       << "fp32_flops_per_cycle_per_core = " << hw.fp32_flops_per_cycle_per_core << "\n"
       << "simd_width = " << hw.simd_width << "\n"
       << "max_threads_per_threadgroup = " << hw.max_threads_per_threadgroup << "\n"
       << "gprs_per_thread = " << hw.gprs_per_thread << "\n"
       << "register_file_bytes = " << hw.register_file_bytes << "\n"
       << "threadgroup_memory_bytes = " << hw.threadgroup_memory_bytes << "\n"
       << "dram_bandwidth_bytes_per_sec = " << hw.dram_bandwidth_bytes_per_sec << "\n"
       << "clock_hz = " << hw.clock_hz << "\n"
       << "tg_bw_sequential_bytes_per_sec = " << hw.tg_bw_sequential << "\n"
       << "tg_bw_strided_bytes_per_sec = " << hw.tg_bw_strided << "\n"
       << "shuffle_bw_bytes_per_sec = " << hw.shuffle_bw << "\n"
       << "register_tg_copy_bw_bytes_per_sec = " << hw.register_tg_copy_bw << "\n"
       << "barrier_cost_cycles = " << hw.barrier_cost_cycles << "\n"
       << "local_fft_points_override = " << hw.local_fft_points_override << "\n";
    return os.str();
}

}  // namespace sfft
