#pragma once

#include <string>
#include <vector>

#include "sfft/four_step.hpp"
#include "sfft/plan.hpp"

namespace sfft {

struct PlanDigest {
    std::size_t n = 0;
    std::vector<unsigned> radices;
    unsigned threads = 0;
    unsigned barrier_count = 0;
    /// "stage <s> <phase>" for every emitted barrier, phase being
    /// "before-read" or "before-write".
    std::vector<std::string> barrier_positions;
    /// Elements in the shared buffer; 0 when the kernel declares none.
    std::size_t threadgroup_elements = 0;
};

/// Metal Shading Language compute kernel text plus what generated it.
struct KernelSource {
    std::string text;
    std::string entry_point;
    PlanDigest plan_digest;
    /// Dispatch metadata (JSON): threads per threadgroup, threadgroups per
    /// grid, buffer bindings by index.
    std::string dispatch_json;
};

/// One single-threadgroup kernel for `plan`:
/// - one unrolled block per stage with constant strides,
/// - stage 0 reads the device input, the last stage writes the device output,
/// - a barrier before each shared-buffer read and each shared-buffer write
///   (count_barriers of a register-tiled plan),
/// - one sincos per butterfly, remaining stage twiddles by chained complex
///   multiplies.
/// Index arithmetic is printed from StageAddressing, the executor's address
/// generator. Throws std::invalid_argument for an invalid plan.
KernelSource emit_kernel(const FftPlan& plan);

/// Twiddled transpose between the two four-step dispatches:
/// out[k*n1 + j] = in[j*n2 + k] * W_n^(jk).
KernelSource emit_transpose_kernel(std::size_t n1, std::size_t n2);

struct FourStepKernels {
    /// inner FFT (n2), twiddled transpose (n1 x n2), outer FFT (n1).
    std::vector<KernelSource> kernels;
    /// The three-dispatch sequence for one signal, JSON.
    std::string dispatch_json;
};

/// Throws std::invalid_argument for multi-level plans (outer step not local).
FourStepKernels emit_four_step_kernels(const FourStepPlan& plan);

struct StructuralReport {
    bool ok = true;
    std::vector<std::string> failures;
};

/// Re-derives barrier count, stage blocks, shared buffer size, sincos count
/// and thread-count metadata from the source text and checks them against
/// `plan`.
StructuralReport structural_check(const KernelSource& src, const FftPlan& plan);

}  // namespace sfft
