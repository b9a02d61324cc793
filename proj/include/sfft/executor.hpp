#pragma once

#include <span>

#include "sfft/complex.hpp"
#include "sfft/plan.hpp"

namespace sfft {

/// Forward DFT of `input` in natural order, computed as double-buffered
/// Stockham stages. Throws std::invalid_argument on a size mismatch.
///
/// Arithmetic is the same for every buffer strategy; the strategy only
/// affects the plan's barrier and threadgroup-memory accounting.
template <typename T>
Signal<T> execute(const FftPlan& plan, std::span<const Complex<T>> input);

/// Inverse DFT scaled by 1/n: conjugate, forward, conjugate, scale.
template <typename T>
Signal<T> execute_inverse(const FftPlan& plan, std::span<const Complex<T>> input);

/// Transforms `batch` contiguous signals of length plan.n independently.
template <typename T>
Signal<T> execute_batch(const FftPlan& plan, std::span<const Complex<T>> input, bool inverse = false);

template <typename T>
Signal<T> execute(const FftPlan& plan, const Signal<T>& input) {
    return execute<T>(plan, std::span<const Complex<T>>(input));
}

template <typename T>
Signal<T> execute_inverse(const FftPlan& plan, const Signal<T>& input) {
    return execute_inverse<T>(plan, std::span<const Complex<T>>(input));
}

namespace detail {

/// One Stockham stage, src -> dst. Exposed for the four-step path and tests.
template <typename T>
void run_stage(const StageAddressing& addr, TwiddlePolicy policy, std::span<const Complex<T>> src,
               std::span<Complex<T>> dst);

}  // namespace detail

}  // namespace sfft
