#include "sfft/cost_model.hpp"

#include <algorithm>
#include <stdexcept>

namespace sfft {

std::uint64_t fft_flops(std::size_t n, std::size_t batch) {
    if (!is_power_of_two(n)) throw std::invalid_argument("fft_flops: size must be a power of two");
    return 5ull * n * log2_exact(n) * batch;
}

namespace {

struct Traffic {
    double flops = 0;
    double tier1 = 0;
    double tier2_seq = 0;
    double tier2_strided = 0;
    double device = 0;
    double barriers = 0;

    Traffic& operator+=(const Traffic& o) {
        flops += o.flops;
        tier1 += o.tier1;
        tier2_seq += o.tier2_seq;
        tier2_strided += o.tier2_strided;
        device += o.device;
        barriers += o.barriers;
        return *this;
    }
    Traffic scaled(double k) const {
        return {flops * k, tier1 * k, tier2_seq * k, tier2_strided * k, device * k, barriers * k};
    }
};

// One transform.
Traffic traffic(const FftPlan& plan, std::size_t bpe) {
    Traffic t;
    const double pass = static_cast<double>(plan.n) * static_cast<double>(bpe);
    t.flops = static_cast<double>(fft_flops(plan.n, 1));
    t.device = 2 * pass;
    t.barriers = plan.barrier_count;

    const std::size_t stages = plan.stages.size();
    const bool shuffled_first = plan.buffer_strategy == BufferStrategy::simd_shuffle_hybrid && stages > 1;
    auto charge = [&](AccessClass c) {
        if (c == AccessClass::sequential) t.tier2_seq += pass;
        else t.tier2_strided += pass;
    };
    // Boundary b sits between stage b (writer) and stage b + 1 (reader).
    for (std::size_t b = 0; b + 1 < stages; ++b) {
        if (shuffled_first && b == 0) {
            t.tier1 += 2 * pass;
            continue;
        }
        charge(plan.stages[b].access_class);
        charge(plan.stages[b + 1].access_class);
    }
    return t;
}

Traffic traffic(const FourStepPlan& fs, std::size_t bpe) {
    Traffic t = traffic(fs.inner_plan, bpe).scaled(static_cast<double>(fs.n1));
    t += (fs.outer_four_step ? traffic(*fs.outer_four_step, bpe) : traffic(fs.outer_plan, bpe))
             .scaled(static_cast<double>(fs.n2));
    const double pass = static_cast<double>(fs.n) * static_cast<double>(bpe);
    t.device += 2 * pass;
    t.flops += 6.0 * static_cast<double>(fs.n);
    return t;
}

CostEstimate finish(const Traffic& per_fft, const HardwareModel& hw, std::size_t batch) {
    validate(hw);
    const Traffic t = per_fft.scaled(static_cast<double>(batch));
    CostEstimate c;
    c.flops = t.flops;
    c.tier1_bytes = t.tier1;
    c.tier2_sequential_bytes = t.tier2_seq;
    c.tier2_strided_bytes = t.tier2_strided;
    c.tier2_bytes = t.tier2_seq + t.tier2_strided;
    c.device_bytes = t.device;
    c.barriers = t.barriers;
    c.barrier_cycles = t.barriers * hw.barrier_cost_cycles;

    c.compute_seconds = t.flops / hw.peak_flops_per_sec();
    c.memory_seconds = t.tier1 / hw.shuffle_bw + t.tier2_seq / hw.tg_bw_sequential +
                       t.tier2_strided / hw.tg_bw_strided + t.device / hw.dram_bandwidth_bytes_per_sec;
    // Threadgroups run concurrently, one per core.
    c.barrier_seconds = c.barrier_cycles / (hw.clock_hz * static_cast<double>(hw.gpu_cores));
    c.predicted_seconds = std::max(c.compute_seconds, c.memory_seconds) + c.barrier_seconds;
    if (c.predicted_seconds <= 0) throw std::logic_error("estimate: non-positive predicted time");
    c.gflops_predicted = c.flops / c.predicted_seconds / 1e9;
    return c;
}

}  // namespace

CostEstimate estimate(const FftPlan& plan, const HardwareModel& hw, std::size_t batch, std::size_t bpe) {
    if (batch == 0) throw std::invalid_argument("estimate: batch must be positive");
    return finish(traffic(plan, bpe), hw, batch);
}

CostEstimate estimate(const DecompositionPlan& plan, const HardwareModel& hw, std::size_t batch,
                      std::size_t bpe) {
    if (batch == 0) throw std::invalid_argument("estimate: batch must be positive");
    if (const auto* p = plan.single()) return finish(traffic(*p, bpe), hw, batch);
    return finish(traffic(*plan.four_step(), bpe), hw, batch);
}

namespace {

void make_shuffle_hybrid(FftPlan& p) {
    p.buffer_strategy = BufferStrategy::simd_shuffle_hybrid;
    for (auto& s : p.stages) s.access_class = AccessClass::scattered;
    finalize_plan(p);
}

void make_shuffle_hybrid(FourStepPlan& fs) {
    make_shuffle_hybrid(fs.inner_plan);
    if (fs.outer_four_step) {
        auto outer = *fs.outer_four_step;
        make_shuffle_hybrid(outer);
        fs.outer_four_step = std::make_shared<const FourStepPlan>(std::move(outer));
    } else {
        make_shuffle_hybrid(fs.outer_plan);
    }
}

}  // namespace

DecompositionPlan make_design(const std::string& name, std::size_t n, const HardwareModel& hw) {
    SynthesisOptions opts;
    bool shuffle = false;
    if (name == "radix8") opts.policy = RadixPolicy::prefer8;
    else if (name == "radix4") opts.policy = RadixPolicy::prefer4;
    else if (name == "radix2") opts.policy = RadixPolicy::pure2;
    else if (name == "shuffle" || name == "shuffle-hybrid") {
        opts.policy = RadixPolicy::prefer8;
        shuffle = true;
    } else {
        throw std::invalid_argument("unknown design '" + name + "' (expected radix2, radix4, radix8, shuffle)");
    }
    auto plan = synthesize(n, hw, 8, opts);
    if (shuffle) {
        if (auto* p = std::get_if<FftPlan>(&plan.inner)) make_shuffle_hybrid(*p);
        else make_shuffle_hybrid(std::get<FourStepPlan>(plan.inner));
        plan.rationale.push_back("SIMD-shuffle hybrid: first exchange in SIMD shuffles, scattered threadgroup access");
    }
    return plan;
}

std::vector<RankedDesign> rank_designs(const std::vector<NamedDesign>& designs, const HardwareModel& hw,
                                       std::size_t batch) {
    if (designs.empty()) throw std::invalid_argument("rank_designs: empty design list");
    std::vector<RankedDesign> out;
    out.reserve(designs.size());
    for (const auto& d : designs) out.push_back({d.name, estimate(d.plan, hw, batch)});
    std::stable_sort(out.begin(), out.end(), [](const RankedDesign& a, const RankedDesign& b) {
        return a.cost.predicted_seconds < b.cost.predicted_seconds;
    });
    return out;
}

ThesisComparison thesis_comparison(const HardwareModel& a, const HardwareModel& b) {
    validate(a);
    validate(b);
    ThesisComparison r;
    r.name_a = a.name;
    r.name_b = b.name;
    r.max_local_fft_a = max_local_fft(a, 8, CapacityStrategy::register_tiled);
    r.max_local_fft_b = max_local_fft(b, 8, CapacityStrategy::register_tiled);
    auto ratio = [](double x, double y) { return y / x; };
    r.local_fft_ratio = ratio(static_cast<double>(r.max_local_fft_a), static_cast<double>(r.max_local_fft_b));
    r.shared_memory_ratio = ratio(static_cast<double>(a.threadgroup_memory_bytes),
                                  static_cast<double>(b.threadgroup_memory_bytes));
    r.register_file_ratio =
        ratio(static_cast<double>(a.register_file_bytes), static_cast<double>(b.register_file_bytes));
    r.dram_bandwidth_ratio = ratio(a.dram_bandwidth_bytes_per_sec, b.dram_bandwidth_bytes_per_sec);
    r.simd_width_ratio = ratio(static_cast<double>(a.simd_width), static_cast<double>(b.simd_width));
    return r;
}

}  // namespace sfft
