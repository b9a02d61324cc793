#include "sfft/executor.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

#include "sfft/butterflies.hpp"

namespace sfft {
namespace detail {
namespace {

template <typename T, std::size_t R>
void stage_kernel(const StageAddressing& addr, TwiddlePolicy policy,
                  std::span<const Complex<T>> src, std::span<Complex<T>> dst) {
    const std::size_t butterflies = addr.butterflies();
    const std::size_t order = addr.twiddle_order();
    std::array<Complex<T>, R - 1> w;

    for (std::size_t j = 0; j < butterflies; ++j) {
        ButterflyVector<T, R> v;
        for (std::size_t r = 0; r < R; ++r) v[r] = src[addr.input_index(j, r)];

        const std::size_t k = addr.twiddle_index(j);
        if (k != 0) {
            if (policy == TwiddlePolicy::chained_single_sincos) {
                twiddle_chain(twiddle<T>(static_cast<std::int64_t>(order), static_cast<std::int64_t>(k)),
                              std::span<Complex<T>>(w));
            } else {
                for (std::size_t r = 1; r < R; ++r)
                    w[r - 1] = twiddle<T>(static_cast<std::int64_t>(order), static_cast<std::int64_t>(r * k));
            }
            for (std::size_t r = 1; r < R; ++r) v[r] = cmul(v[r], w[r - 1]);
        }

        ButterflyVector<T, R> y;
        if constexpr (R == 2) y = butterfly_radix2(v);
        else if constexpr (R == 4) y = butterfly_radix4(v);
        else y = butterfly_radix8_splitradix(v);

        for (std::size_t r = 0; r < R; ++r) dst[addr.output_index(j, r)] = y[r];
    }
}

}  // namespace

template <typename T>
void run_stage(const StageAddressing& addr, TwiddlePolicy policy, std::span<const Complex<T>> src,
               std::span<Complex<T>> dst) {
    switch (addr.radix) {
        case 2: stage_kernel<T, 2>(addr, policy, src, dst); break;
        case 4: stage_kernel<T, 4>(addr, policy, src, dst); break;
        case 8: stage_kernel<T, 8>(addr, policy, src, dst); break;
        default: throw std::invalid_argument("unsupported radix " + std::to_string(addr.radix));
    }
}

template void run_stage<float>(const StageAddressing&, TwiddlePolicy, std::span<const ComplexF>,
                               std::span<ComplexF>);
template void run_stage<double>(const StageAddressing&, TwiddlePolicy, std::span<const ComplexD>,
                                std::span<ComplexD>);

}  // namespace detail

namespace {

void check_size(const FftPlan& plan, std::size_t length) {
    if (length != plan.n)
        throw std::invalid_argument("execute: input length " + std::to_string(length) +
                                    " does not match plan size " + std::to_string(plan.n));
}

}  // namespace

template <typename T>
Signal<T> execute(const FftPlan& plan, std::span<const Complex<T>> input) {
    check_size(plan, input.size());
    validate_plan(plan);

    Signal<T> a(input.begin(), input.end());
    Signal<T> b(plan.n);
    for (const auto& stage : plan.stages) {
        detail::run_stage<T>(StageAddressing(plan.n, stage), stage.twiddle_policy, a, b);
        a.swap(b);
    }
    return a;
}

template <typename T>
Signal<T> execute_inverse(const FftPlan& plan, std::span<const Complex<T>> input) {
    check_size(plan, input.size());
    Signal<T> tmp(input.size());
    for (std::size_t i = 0; i < input.size(); ++i) tmp[i] = conj(input[i]);
    auto out = execute<T>(plan, std::span<const Complex<T>>(tmp));
    const T scale = T(1) / static_cast<T>(plan.n);
    for (auto& v : out) v = {v.re * scale, -v.im * scale};
    return out;
}

template <typename T>
Signal<T> execute_batch(const FftPlan& plan, std::span<const Complex<T>> input, bool inverse) {
    if (plan.n == 0 || input.size() % plan.n != 0)
        throw std::invalid_argument("execute_batch: input length is not a multiple of the plan size");
    Signal<T> out(input.size());
    for (std::size_t off = 0; off < input.size(); off += plan.n) {
        auto one = input.subspan(off, plan.n);
        auto y = inverse ? execute_inverse<T>(plan, one) : execute<T>(plan, one);
        std::copy(y.begin(), y.end(), out.begin() + static_cast<std::ptrdiff_t>(off));
    }
    return out;
}

template Signal<float> execute<float>(const FftPlan&, std::span<const ComplexF>);
template Signal<double> execute<double>(const FftPlan&, std::span<const ComplexD>);
template Signal<float> execute_inverse<float>(const FftPlan&, std::span<const ComplexF>);
template Signal<double> execute_inverse<double>(const FftPlan&, std::span<const ComplexD>);
template Signal<float> execute_batch<float>(const FftPlan&, std::span<const ComplexF>, bool);
template Signal<double> execute_batch<double>(const FftPlan&, std::span<const ComplexD>, bool);

}  // namespace sfft
