#include <complex>
#include <stdexcept>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sfft/butterflies.hpp"
#include "sfft/cost_model.hpp"
#include "sfft/msl_emitter.hpp"
#include "sfft/oracle.hpp"
#include "sfft/planner.hpp"

namespace py = pybind11;
using namespace sfft;

namespace {

template <typename T>
using CArray = py::array_t<std::complex<T>, py::array::c_style | py::array::forcecast>;

SynthesisOptions options(const std::string& policy) {
    SynthesisOptions o;
    if (!policy.empty()) o.policy = parse_radix_policy(policy);
    return o;
}

template <typename T>
py::array_t<std::complex<T>> transform(CArray<T> x, bool inverse, const std::string& policy, const std::string& hw) {
    if (x.ndim() != 1 && x.ndim() != 2) throw std::invalid_argument("expected a 1-D signal or a 2-D batch");
    const std::size_t n = static_cast<std::size_t>(x.shape(x.ndim() - 1));
    const std::size_t batch = x.ndim() == 2 ? static_cast<std::size_t>(x.shape(0)) : 1;
    const auto plan = synthesize(n, resolve_hardware_model(hw), 2 * sizeof(T), options(policy));
    py::array_t<std::complex<T>> out(std::vector<py::ssize_t>(x.shape(), x.shape() + x.ndim()));
    const auto* src = reinterpret_cast<const Complex<T>*>(x.data());
    auto* dst = reinterpret_cast<Complex<T>*>(out.mutable_data());
    {
        py::gil_scoped_release release;
        for (std::size_t b = 0; b < batch; ++b) {
            const auto y = execute_plan<T>(plan, std::span<const Complex<T>>(src + b * n, n), inverse);
            std::copy(y.begin(), y.end(), dst + b * n);
        }
    }
    return out;
}

py::dict plan_dict(const FftPlan& p) {
    py::dict d;
    d["n"] = p.n;
    d["radices"] = p.radices();
    d["threads"] = p.threads;
    d["barrier_count"] = p.barrier_count;
    d["threadgroup_bytes"] = p.threadgroup_bytes;
    d["buffer_strategy"] = std::string(to_string(p.buffer_strategy));
    return d;
}

py::dict cost_dict(const CostEstimate& c) {
    py::dict d;
    d["flops"] = c.flops;
    d["tier1_bytes"] = c.tier1_bytes;
    d["tier2_bytes"] = c.tier2_bytes;
    d["device_bytes"] = c.device_bytes;
    d["barriers"] = c.barriers;
    d["predicted_seconds"] = c.predicted_seconds;
    d["gflops_predicted"] = c.gflops_predicted;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Stockham FFT planner, executor, cost model and Metal kernel emitter";

    m.def("fft", &transform<float>, py::arg("x"), py::arg("inverse") = false, py::arg("policy") = "",
          py::arg("hw") = "m1");
    m.def("fft", &transform<double>, py::arg("x"), py::arg("inverse") = false, py::arg("policy") = "",
          py::arg("hw") = "m1");

    m.def(
        "naive_dft",
        [](CArray<double> x) {
            const auto* p = reinterpret_cast<const ComplexD*>(x.data());
            const auto y = naive_dft(std::span<const ComplexD>(p, static_cast<std::size_t>(x.size())));
            py::array_t<std::complex<double>> out(static_cast<py::ssize_t>(y.size()));
            std::copy(y.begin(), y.end(), reinterpret_cast<ComplexD*>(out.mutable_data()));
            return out;
        },
        py::arg("x"));

    m.def(
        "plan",
        [](std::size_t n, const std::string& policy, const std::string& hw) {
            const auto p = synthesize(n, resolve_hardware_model(hw), 8, options(policy));
            py::dict d;
            d["kind"] = std::string(to_string(p.kind));
            d["n"] = p.n;
            d["b_max"] = p.b_max;
            d["selected_radix"] = p.selected_radix;
            d["rationale"] = p.rationale;
            if (const auto* s = p.single()) {
                d["plan"] = plan_dict(*s);
            } else {
                const auto* fs = p.four_step();
                d["n1"] = fs->n1;
                d["n2"] = fs->n2;
                d["inner_plan"] = plan_dict(fs->inner_plan);
                if (!fs->outer_four_step) d["outer_plan"] = plan_dict(fs->outer_plan);
            }
            return d;
        },
        py::arg("n"), py::arg("policy") = "", py::arg("hw") = "m1");

    m.def(
        "max_local_fft",
        [](std::size_t bytes, const std::string& strategy, const std::string& hw) {
            CapacityStrategy s;
            if (strategy == "register_tiled") s = CapacityStrategy::register_tiled;
            else if (strategy == "double_buffered") s = CapacityStrategy::double_buffered;
            else if (strategy == "register_resident") s = CapacityStrategy::register_resident;
            else throw std::invalid_argument("unknown capacity strategy '" + strategy + "'");
            return max_local_fft(resolve_hardware_model(hw), bytes, s);
        },
        py::arg("bytes_per_element") = 8, py::arg("strategy") = "register_tiled", py::arg("hw") = "m1");

    m.def(
        "rank_designs",
        [](std::size_t n, std::size_t batch, const std::vector<std::string>& names, const std::string& hw_name) {
            const auto hw = resolve_hardware_model(hw_name);
            std::vector<NamedDesign> designs;
            for (const auto& name : names) designs.push_back({name, make_design(name, n, hw)});
            py::list out;
            for (const auto& r : rank_designs(designs, hw, batch)) out.append(py::make_tuple(r.name, cost_dict(r.cost)));
            return out;
        },
        py::arg("n"), py::arg("batch"), py::arg("designs"), py::arg("hw") = "m1");

    m.def(
        "emit_kernel",
        [](std::size_t n, const std::string& policy) {
            const auto p = synthesize(n, m1_model(), 8, options(policy));
            if (!p.single()) throw std::invalid_argument("emit_kernel: size needs a four-step plan");
            const auto k = emit_kernel(*p.single());
            return py::make_tuple(k.entry_point, k.text, structural_check(k, *p.single()).ok);
        },
        py::arg("n"), py::arg("policy") = "");

    m.def("fft_flops", &fft_flops, py::arg("n"), py::arg("batch") = 1);
    m.def("mma_flop_ratio", &mma_flop_ratio);
}
