#pragma once

#include <memory>
#include <span>
#include <utility>

#include "sfft/complex.hpp"
#include "sfft/plan.hpp"

namespace sfft {

/// n = n1 * n2 with n2 <= b_max. The n2-point transforms run with
/// `inner_plan`; the n1-point transforms run with `outer_plan`, or
/// recursively with `outer_four_step` when n1 itself exceeds b_max.
struct FourStepPlan {
    std::size_t n = 0;
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    FftPlan inner_plan;
    FftPlan outer_plan;
    std::shared_ptr<const FourStepPlan> outer_four_step;

    /// Nesting depth: 1 for a plain four-step, +1 per recursive level.
    unsigned levels() const { return outer_four_step ? 1 + outer_four_step->levels() : 1; }
};

/// Largest n2 <= b_max (power of two) and n1 = n / n2.
/// Rejects n <= b_max: no split is needed there.
std::pair<std::size_t, std::size_t> four_step_split(std::size_t n, std::size_t b_max);

/// Builds a (possibly multi-level) four-step plan. Sub-plans use `policy`.
FourStepPlan make_four_step_plan(std::size_t n, std::size_t b_max,
                                 RadixPolicy policy = RadixPolicy::prefer8);

/// Treats `matrix` as n1 x n2 row-major and returns the n2 x n1 transpose with
/// out(k, j) = in(j, k) * W_n^(j*k). Pass `conjugate` to use W_n^(-j*k).
template <typename T>
Signal<T> transpose_with_twiddle(std::span<const Complex<T>> matrix, std::size_t n1, std::size_t n2,
                                 std::size_t n, bool conjugate = false);

/// N-point DFT in natural order:
///   1. gather x[j + n1*k] into row j of an n1 x n2 matrix (stride permutation),
///   2. n2-point FFT of each row,
///   3. transpose to n2 x n1 while scaling (j, k) by W_n^(j*k),
///   4. n1-point FFT of each row,
///   5. read the final n2 x n1 matrix transposed: X[k2 + n2*k1] = Z(k2, k1).
template <typename T>
Signal<T> execute_four_step(const FourStepPlan& plan, std::span<const Complex<T>> input);

template <typename T>
Signal<T> execute_four_step_inverse(const FourStepPlan& plan, std::span<const Complex<T>> input);

template <typename T>
Signal<T> execute_four_step(const FourStepPlan& plan, const Signal<T>& input) {
    return execute_four_step<T>(plan, std::span<const Complex<T>>(input));
}

}  // namespace sfft
