#include "sfft/four_step.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "sfft/executor.hpp"

namespace sfft {

std::pair<std::size_t, std::size_t> four_step_split(std::size_t n, std::size_t b_max) {
    if (!is_power_of_two(n)) throw std::invalid_argument("four_step_split: size must be a power of two");
    if (b_max < 2) throw std::invalid_argument("four_step_split: b_max must be >= 2");
    if (n <= b_max)
        throw std::invalid_argument("four_step_split: size " + std::to_string(n) +
                                    " fits in one local transform (b_max " + std::to_string(b_max) + ")");
    std::size_t n2 = std::size_t{1} << log2_exact(b_max);
    return {n / n2, n2};
}

FourStepPlan make_four_step_plan(std::size_t n, std::size_t b_max, RadixPolicy policy) {
    const auto [n1, n2] = four_step_split(n, b_max);
    FourStepPlan plan;
    plan.n = n;
    plan.n1 = n1;
    plan.n2 = n2;
    plan.inner_plan = make_plan(n2, policy);
    if (n1 > b_max) {
        plan.outer_four_step = std::make_shared<const FourStepPlan>(make_four_step_plan(n1, b_max, policy));
    } else {
        plan.outer_plan = make_plan(n1, policy);
    }
    return plan;
}

template <typename T>
Signal<T> transpose_with_twiddle(std::span<const Complex<T>> matrix, std::size_t n1, std::size_t n2,
                                 std::size_t n, bool conjugate) {
    if (matrix.size() != n1 * n2 || n != n1 * n2)
        throw std::invalid_argument("transpose_with_twiddle: dimensions do not match");
    Signal<T> out(matrix.size());
    const auto order = static_cast<std::int64_t>(n);
    for (std::size_t j = 0; j < n1; ++j) {
        for (std::size_t k = 0; k < n2; ++k) {
            auto e = static_cast<std::int64_t>(j * k);
            auto w = twiddle<T>(order, conjugate ? -e : e);
            out[k * n1 + j] = cmul(matrix[j * n2 + k], w);
        }
    }
    return out;
}

namespace {

template <typename T>
Signal<T> transform_rows(const FftPlan& plan, std::span<const Complex<T>> rows) {
    return execute_batch<T>(plan, rows);
}

template <typename T>
Signal<T> transform_rows(const FourStepPlan& plan, std::span<const Complex<T>> rows) {
    Signal<T> out(rows.size());
    for (std::size_t off = 0; off < rows.size(); off += plan.n) {
        auto y = execute_four_step<T>(plan, rows.subspan(off, plan.n));
        std::copy(y.begin(), y.end(), out.begin() + static_cast<std::ptrdiff_t>(off));
    }
    return out;
}

}  // namespace

template <typename T>
Signal<T> execute_four_step(const FourStepPlan& plan, std::span<const Complex<T>> input) {
    if (input.size() != plan.n)
        throw std::invalid_argument("execute_four_step: input length " + std::to_string(input.size()) +
                                    " does not match plan size " + std::to_string(plan.n));
    if (plan.n1 * plan.n2 != plan.n) throw std::invalid_argument("execute_four_step: n != n1 * n2");
    const std::size_t n1 = plan.n1, n2 = plan.n2;

    Signal<T> rows(plan.n);
    for (std::size_t j = 0; j < n1; ++j)
        for (std::size_t k = 0; k < n2; ++k) rows[j * n2 + k] = input[j + n1 * k];

    auto y = transform_rows<T>(plan.inner_plan, rows);
    auto z = transpose_with_twiddle<T>(y, n1, n2, plan.n);
    auto spectra = plan.outer_four_step ? transform_rows<T>(*plan.outer_four_step, z)
                                        : transform_rows<T>(plan.outer_plan, z);

    Signal<T> out(plan.n);
    for (std::size_t k2 = 0; k2 < n2; ++k2)
        for (std::size_t k1 = 0; k1 < n1; ++k1) out[k2 + n2 * k1] = spectra[k2 * n1 + k1];
    return out;
}

template <typename T>
Signal<T> execute_four_step_inverse(const FourStepPlan& plan, std::span<const Complex<T>> input) {
    Signal<T> tmp(input.size());
    for (std::size_t i = 0; i < input.size(); ++i) tmp[i] = conj(input[i]);
    auto out = execute_four_step<T>(plan, std::span<const Complex<T>>(tmp));
    const T scale = T(1) / static_cast<T>(plan.n);
    for (auto& v : out) v = {v.re * scale, -v.im * scale};
    return out;
}

template Signal<float> transpose_with_twiddle<float>(std::span<const ComplexF>, std::size_t, std::size_t,
                                                     std::size_t, bool);
template Signal<double> transpose_with_twiddle<double>(std::span<const ComplexD>, std::size_t, std::size_t,
                                                       std::size_t, bool);
template Signal<float> execute_four_step<float>(const FourStepPlan&, std::span<const ComplexF>);
template Signal<double> execute_four_step<double>(const FourStepPlan&, std::span<const ComplexD>);
template Signal<float> execute_four_step_inverse<float>(const FourStepPlan&, std::span<const ComplexF>);
template Signal<double> execute_four_step_inverse<double>(const FourStepPlan&, std::span<const ComplexD>);

}  // namespace sfft
