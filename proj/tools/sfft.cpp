#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sfft/cost_model.hpp"
#include "sfft/hardware.hpp"
#include "sfft/msl_emitter.hpp"
#include "sfft/oracle.hpp"
#include "sfft/planner.hpp"
#include "sfft/signal_file.hpp"

using namespace sfft;
using json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kToleranceFailure = 1;
constexpr int kUsageError = 2;

// Bad input detected after option parsing; maps to the usage exit code.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::size_t checked_size(std::size_t n) {
    if (!is_power_of_two(n) || n < 2 || n > kMaxSignalLength)
        throw UsageError("size must be a power of two in [2, 2^24], got " + std::to_string(n));
    return n;
}

std::size_t precision_bytes(const std::string& p) {
    if (p == "single" || p == "float" || p == "f32") return 4;
    if (p == "double" || p == "f64") return 8;
    throw UsageError("unknown precision '" + p + "' (single or double)");
}

SynthesisOptions synthesis_options(const std::string& policy) {
    SynthesisOptions o;
    if (!policy.empty()) {
        try {
            o.policy = parse_radix_policy(policy);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    return o;
}

HardwareModel hardware(const std::string& name) {
    try {
        return resolve_hardware_model(name);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) out.push_back(item);
    return out;
}

json stages_json(const FftPlan& p) {
    json stages = json::array();
    for (const auto& s : p.stages)
        stages.push_back({{"radix", s.radix},
                          {"span", s.span},
                          {"twiddle_policy", to_string(s.twiddle_policy)},
                          {"access_class", to_string(s.access_class)}});
    return stages;
}

json fft_plan_json(const FftPlan& p) {
    return {{"n", p.n},
            {"stages", stages_json(p)},
            {"threads", p.threads},
            {"buffer_strategy", to_string(p.buffer_strategy)},
            {"threadgroup_bytes", p.threadgroup_bytes},
            {"barrier_count", p.barrier_count}};
}

json four_step_json(const FourStepPlan& p) {
    json j{{"n", p.n}, {"n1", p.n1}, {"n2", p.n2}, {"inner_plan", fft_plan_json(p.inner_plan)}};
    if (p.outer_four_step) j["outer_four_step"] = four_step_json(*p.outer_four_step);
    else j["outer_plan"] = fft_plan_json(p.outer_plan);
    return j;
}

json decomposition_json(const DecompositionPlan& d) {
    json j{{"kind", to_string(d.kind)}, {"n", d.n}, {"b_max", d.b_max}, {"selected_radix", d.selected_radix}};
    if (d.single()) j["plan"] = fft_plan_json(*d.single());
    else j["four_step"] = four_step_json(*d.four_step());
    j["rationale"] = d.rationale;
    return j;
}

json cost_json(const CostEstimate& c) {
    return {{"flops", c.flops},
            {"tier1_bytes", c.tier1_bytes},
            {"tier2_bytes", c.tier2_bytes},
            {"device_bytes", c.device_bytes},
            {"barriers", c.barriers},
            {"barrier_cycles", c.barrier_cycles},
            {"predicted_seconds", c.predicted_seconds},
            {"gflops_predicted", c.gflops_predicted},
            {"compute_seconds", c.compute_seconds},
            {"memory_seconds", c.memory_seconds},
            {"barrier_seconds", c.barrier_seconds}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

// ---- plan

struct PlanArgs {
    std::size_t size = 0;
    std::string policy, hw = "m1", precision = "single";
    bool json = false;
};

int cmd_plan(const PlanArgs& a) {
    const auto plan = synthesize(checked_size(a.size), hardware(a.hw), 2 * precision_bytes(a.precision),
                                 synthesis_options(a.policy));
    if (a.json) std::cout << decomposition_json(plan).dump(2) << "\n";
    else std::cout << describe(plan);
    return kOk;
}

// ---- run

struct RunArgs {
    std::string in, out, policy, hw = "m1";
    std::size_t size = 0, batch = 1;
    bool inverse = false;
};

template <typename T>
Signal<T> run_batch(const DecompositionPlan& plan, const Signal<T>& data, std::size_t n, bool inverse) {
    Signal<T> out(data.size());
    for (std::size_t b = 0; b * n < data.size(); ++b) {
        const auto y = execute_plan<T>(plan, std::span<const Complex<T>>(data.data() + b * n, n), inverse);
        std::copy(y.begin(), y.end(), out.begin() + static_cast<std::ptrdiff_t>(b * n));
    }
    return out;
}

int cmd_run(const RunArgs& a) {
    const auto n = checked_size(a.size);
    if (a.batch == 0) throw UsageError("batch must be positive");
    SignalData data;
    try {
        data = read_signal_file(a.in);
    } catch (const std::runtime_error& e) {
        throw UsageError(e.what());
    }
    if (element_count(data) != n * a.batch)
        throw UsageError("input holds " + std::to_string(element_count(data)) + " elements, expected size*batch = " +
                         std::to_string(n * a.batch));
    const auto bytes = std::holds_alternative<Signal<float>>(data) ? 8 : 16;
    const auto plan = synthesize(n, hardware(a.hw), bytes, synthesis_options(a.policy));
    SignalData result = std::visit(
        [&](const auto& s) -> SignalData { return run_batch(plan, s, n, a.inverse); }, data);
    write_signal_file(a.out, result);
    return kOk;
}

// ---- validate

struct ValidateArgs {
    std::string sizes, precision = "single", hw = "m1";
    std::size_t min = 256, max = 16384, trials = 3;
    std::uint64_t seed = 1;
    bool json = false;
};

int cmd_validate(const ValidateArgs& a) {
    std::vector<std::size_t> sizes;
    if (!a.sizes.empty()) {
        for (const auto& s : split_list(a.sizes)) {
            std::size_t v = 0;
            try {
                v = std::stoull(s);
            } catch (const std::exception&) {
                throw UsageError("bad size '" + s + "'");
            }
            sizes.push_back(checked_size(v));
        }
    } else {
        checked_size(a.min);
        checked_size(a.max);
        for (std::size_t n = a.min; n <= a.max; n *= 2) sizes.push_back(n);
    }
    if (sizes.empty()) throw UsageError("no sizes to validate");
    if (a.trials == 0) throw UsageError("trials must be positive");
    const std::size_t pb = precision_bytes(a.precision);
    const double tol = pb == 4 ? 1e-5 : 1e-12;
    const auto hw = hardware(a.hw);

    bool all_ok = true;
    ErrorReport worst;
    json rows = json::array();
    for (auto n : sizes) {
        for (std::size_t t = 0; t < a.trials; ++t) {
            const auto x = random_signal(n, a.seed * 1000003 + n * 131 + t);
            const auto ref = naive_dft(x);
            for (auto policy : {RadixPolicy::prefer8, RadixPolicy::prefer4, RadixPolicy::pure2}) {
                SynthesisOptions o;
                o.policy = policy;
                const auto plan = synthesize(n, hw, 2 * pb, o);
                const ErrorReport e = pb == 4 ? compare(execute_plan<float>(plan, convert<float>(x)), ref)
                                              : compare(execute_plan<double>(plan, x), ref);
                const bool ok = e.relative_l2 < tol;
                all_ok = all_ok && ok;
                if (e.relative_l2 >= worst.relative_l2) worst = e;
                rows.push_back({{"n", n},
                                {"policy", to_string(policy)},
                                {"trial", t},
                                {"relative_l2", e.relative_l2},
                                {"max_abs_componentwise", e.max_abs_componentwise},
                                {"pass", ok}});
                if (!a.json)
                    std::cout << (ok ? "ok   " : "FAIL ") << "n=" << n << " policy=" << to_string(policy)
                              << " trial=" << t << " relative_l2=" << e.relative_l2 << "\n";
            }
        }
    }
    if (a.json) {
        std::cout << json{{"precision", pb == 4 ? "single" : "double"},
                          {"tolerance", tol},
                          {"pass", all_ok},
                          {"worst",
                           {{"n", worst.n},
                            {"relative_l2", worst.relative_l2},
                            {"max_abs_componentwise", worst.max_abs_componentwise}}},
                          {"results", rows}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << (all_ok ? "PASS" : "FAIL") << ": worst relative_l2=" << worst.relative_l2 << " (n=" << worst.n
                  << ", max_abs_componentwise=" << worst.max_abs_componentwise << ", tolerance " << tol << ")\n";
    }
    return all_ok ? kOk : kToleranceFailure;
}

// ---- cost

struct CostArgs {
    std::size_t size = 4096, batch = 256;
    std::string designs = "radix4,radix8,shuffle", hw = "m1";
    bool json = false;
};

int cmd_cost(const CostArgs& a) {
    const auto n = checked_size(a.size);
    if (a.batch == 0) throw UsageError("batch must be positive");
    const auto hw = hardware(a.hw);
    std::vector<NamedDesign> designs;
    for (const auto& name : split_list(a.designs)) {
        try {
            designs.push_back({name, make_design(name, n, hw)});
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    if (designs.empty()) throw UsageError("no designs given");
    const auto ranked = rank_designs(designs, hw, a.batch);

    if (a.json) {
        json rows = json::array();
        for (std::size_t i = 0; i < ranked.size(); ++i) {
            const auto& d = *std::find_if(designs.begin(), designs.end(),
                                          [&](const NamedDesign& nd) { return nd.name == ranked[i].name; });
            rows.push_back({{"rank", i + 1},
                            {"name", ranked[i].name},
                            {"kind", to_string(d.plan.kind)},
                            {"cost", cost_json(ranked[i].cost)}});
        }
        std::cout << json{{"n", n}, {"batch", a.batch}, {"hardware", hw.name}, {"ranking", rows}}.dump(2) << "\n";
        return kOk;
    }
    std::cout << "n=" << n << " batch=" << a.batch << " hardware=" << hw.name << "\n";
    std::printf("%-4s %-16s %-22s %12s %10s %12s %12s %12s %10s\n", "rank", "design", "kind", "time_us", "gflops",
                "tier1_MB", "tier2_MB", "device_MB", "barriers");
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        const auto& c = ranked[i].cost;
        const auto& d = *std::find_if(designs.begin(), designs.end(),
                                      [&](const NamedDesign& nd) { return nd.name == ranked[i].name; });
        std::printf("%-4zu %-16s %-22s %12.2f %10.1f %12.2f %12.2f %12.2f %10.0f\n", i + 1, ranked[i].name.c_str(),
                    std::string(to_string(d.plan.kind)).c_str(), c.predicted_seconds * 1e6, c.gflops_predicted,
                    c.tier1_bytes / 1e6, c.tier2_bytes / 1e6, c.device_bytes / 1e6, c.barriers);
    }
    std::cout << std::flush;
    return kOk;
}

// ---- emit

struct EmitArgs {
    std::size_t size = 0;
    std::string out_dir = ".", policy, hw = "m1";
};

int cmd_emit(const EmitArgs& a) {
    const auto plan = synthesize(checked_size(a.size), hardware(a.hw), 8, synthesis_options(a.policy));
    std::error_code ec;
    std::filesystem::create_directories(a.out_dir, ec);
    if (ec) throw UsageError("cannot create " + a.out_dir + ": " + ec.message());
    const std::filesystem::path dir(a.out_dir);

    auto check = [](const KernelSource& k, const FftPlan& p) {
        const auto rep = structural_check(k, p);
        if (!rep.ok) {
            for (const auto& f : rep.failures) std::cerr << k.entry_point << ": " << f << "\n";
            return false;
        }
        return true;
    };

    bool ok = true;
    if (const auto* single = plan.single()) {
        const auto k = emit_kernel(*single);
        ok = check(k, *single);
        write_text(dir / (k.entry_point + ".metal"), k.text);
        write_text(dir / (k.entry_point + ".json"), k.dispatch_json);
        std::cout << (dir / (k.entry_point + ".metal")).string() << "\n";
    } else {
        const auto* fs = plan.four_step();
        if (fs->outer_four_step) throw UsageError("emit: multi-level four-step plans are not supported");
        const auto set = emit_four_step_kernels(*fs);
        ok = check(set.kernels[0], fs->inner_plan) && check(set.kernels[2], fs->outer_plan);
        for (const auto& k : set.kernels) {
            write_text(dir / (k.entry_point + ".metal"), k.text);
            std::cout << (dir / (k.entry_point + ".metal")).string() << "\n";
        }
        write_text(dir / "dispatch.json", set.dispatch_json);
    }
    return ok ? kOk : kToleranceFailure;
}

// ---- bench

struct BenchArgs {
    std::size_t size = 4096, batch = 1, iterations = 1000, warmup = 100;
    std::string precision = "single", hw = "m1";
    bool json = false;
};

template <typename T>
int bench_typed(const BenchArgs& a, const DecompositionPlan& plan) {
    const std::size_t n = a.size;
    Signal<T> data = convert<T>(random_signal(n * a.batch, 42));
    auto once = [&] {
        for (std::size_t b = 0; b < a.batch; ++b) {
            const auto y = execute_plan<T>(plan, std::span<const Complex<T>>(data.data() + b * n, n));
            data[b * n] = y[0];
            data[b * n].re *= static_cast<T>(1e-3);
        }
    };
    for (std::size_t i = 0; i < a.warmup; ++i) once();
    std::vector<double> samples;
    samples.reserve(a.iterations);
    for (std::size_t i = 0; i < a.iterations; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        once();
        samples.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    std::sort(samples.begin(), samples.end());
    const std::size_t m = samples.size();
    const double median = m % 2 ? samples[m / 2] : 0.5 * (samples[m / 2 - 1] + samples[m / 2]);
    const double per_fft = median / static_cast<double>(a.batch);
    const double gflops = static_cast<double>(fft_flops(n, a.batch)) / median / 1e9;
    if (a.json) {
        std::cout << json{{"device", "host-cpu"},
                          {"n", n},
                          {"batch", a.batch},
                          {"precision", sizeof(T) == 4 ? "single" : "double"},
                          {"warmup", a.warmup},
                          {"iterations", a.iterations},
                          {"median_seconds", median},
                          {"median_seconds_per_fft", per_fft},
                          {"gflops", gflops}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "host CPU benchmark (not GPU numbers)\n"
                  << "n=" << n << " batch=" << a.batch << " precision=" << (sizeof(T) == 4 ? "single" : "double")
                  << " warmup=" << a.warmup << " iterations=" << a.iterations << "\n"
                  << "median_seconds=" << median << "\n"
                  << "median_seconds_per_fft=" << per_fft << "\n"
                  << "gflops=" << gflops << "\n";
    }
    return kOk;
}

int cmd_bench(const BenchArgs& a) {
    const auto n = checked_size(a.size);
    if (a.batch == 0 || a.iterations == 0) throw UsageError("batch and iterations must be positive");
    const auto pb = precision_bytes(a.precision);
    const auto plan = synthesize(n, hardware(a.hw), 2 * pb);
    return pb == 4 ? bench_typed<float>(a, plan) : bench_typed<double>(a, plan);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sfft: Stockham FFT planner, executor, cost model and Metal kernel emitter"};
    app.require_subcommand(1);

    PlanArgs plan_args;
    auto* plan = app.add_subcommand("plan", "Synthesize and print a decomposition plan");
    plan->add_option("-n,--size", plan_args.size, "Transform size (power of two)")->required();
    plan->add_option("--policy", plan_args.policy, "Force radix policy: prefer8, prefer4, pure2");
    plan->add_option("--precision", plan_args.precision, "single or double")->capture_default_str();
    plan->add_option("--hw", plan_args.hw, "Hardware model preset or file")->capture_default_str();
    plan->add_flag("--json", plan_args.json, "Machine-readable output");

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "Transform a signal file");
    run->add_option("-i,--input", run_args.in, "Input signal file")->required();
    run->add_option("-o,--output", run_args.out, "Output signal file")->required();
    run->add_option("-n,--size", run_args.size, "Transform size")->required();
    run->add_option("-b,--batch", run_args.batch, "Signals in the file")->capture_default_str();
    run->add_flag("--inverse", run_args.inverse, "Inverse transform (scaled by 1/n)");
    run->add_option("--policy", run_args.policy, "Force radix policy");
    run->add_option("--hw", run_args.hw, "Hardware model preset or file")->capture_default_str();

    ValidateArgs val_args;
    auto* validate_cmd = app.add_subcommand("validate", "Compare the executor against the naive DFT");
    validate_cmd->add_option("--sizes", val_args.sizes, "Comma-separated sizes (overrides --min/--max)");
    validate_cmd->add_option("--min", val_args.min, "Smallest size")->capture_default_str();
    validate_cmd->add_option("--max", val_args.max, "Largest size")->capture_default_str();
    validate_cmd->add_option("--trials", val_args.trials, "Random signals per size")->capture_default_str();
    validate_cmd->add_option("--precision", val_args.precision, "single or double")->capture_default_str();
    validate_cmd->add_option("--seed", val_args.seed, "Base seed")->capture_default_str();
    validate_cmd->add_option("--hw", val_args.hw, "Hardware model preset or file")->capture_default_str();
    validate_cmd->add_flag("--json", val_args.json, "Machine-readable output");

    CostArgs cost_args;
    auto* cost = app.add_subcommand("cost", "Rank design variants with the analytical cost model");
    cost->add_option("-n,--size", cost_args.size, "Transform size")->capture_default_str();
    cost->add_option("-b,--batch", cost_args.batch, "Batch size")->capture_default_str();
    cost->add_option("--designs", cost_args.designs, "radix2, radix4, radix8, shuffle")->capture_default_str();
    cost->add_option("--hw", cost_args.hw, "Hardware model preset or file")->capture_default_str();
    cost->add_flag("--json", cost_args.json, "Machine-readable output");

    EmitArgs emit_args;
    auto* emit = app.add_subcommand("emit", "Write Metal kernels and dispatch metadata");
    emit->add_option("-n,--size", emit_args.size, "Transform size")->required();
    emit->add_option("-o,--out-dir", emit_args.out_dir, "Output directory")->capture_default_str();
    emit->add_option("--policy", emit_args.policy, "Force radix policy");
    emit->add_option("--hw", emit_args.hw, "Hardware model preset or file")->capture_default_str();

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "Time the CPU executor (host numbers only)");
    bench->add_option("-n,--size", bench_args.size, "Transform size")->capture_default_str();
    bench->add_option("-b,--batch", bench_args.batch, "Signals per iteration")->capture_default_str();
    bench->add_option("--iterations", bench_args.iterations, "Timed iterations")->capture_default_str();
    bench->add_option("--warmup", bench_args.warmup, "Untimed warmup iterations")->capture_default_str();
    bench->add_option("--precision", bench_args.precision, "single or double")->capture_default_str();
    bench->add_option("--hw", bench_args.hw, "Hardware model preset or file")->capture_default_str();
    bench->add_flag("--json", bench_args.json, "Machine-readable output");

    std::string hw_name = "m1";
    auto* hw_cmd = app.add_subcommand("hw", "Print a hardware model as a model file");
    hw_cmd->add_option("name", hw_name, "Preset or file")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }

    try {
        if (*plan) return cmd_plan(plan_args);
        if (*run) return cmd_run(run_args);
        if (*validate_cmd) return cmd_validate(val_args);
        if (*cost) return cmd_cost(cost_args);
        if (*emit) return cmd_emit(emit_args);
        if (*bench) return cmd_bench(bench_args);
        if (*hw_cmd) {
            std::cout << to_config_text(hardware(hw_name));
            return kOk;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    }
    return kUsageError;
}
