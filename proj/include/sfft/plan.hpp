#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sfft {

enum class TwiddlePolicy { chained_single_sincos, direct };
enum class AccessClass { sequential, strided, scattered };
enum class BufferStrategy { double_buffer, register_tiled_single_buffer, simd_shuffle_hybrid };
enum class RadixPolicy { prefer8, prefer4, pure2 };

std::string_view to_string(TwiddlePolicy p);
std::string_view to_string(AccessClass a);
std::string_view to_string(BufferStrategy b);
std::string_view to_string(RadixPolicy p);
RadixPolicy parse_radix_policy(std::string_view s);

constexpr std::size_t kMaxSignalLength = std::size_t{1} << 24;
constexpr std::size_t kComplexFloatBytes = 8;

constexpr bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

constexpr unsigned log2_exact(std::size_t n) {
    unsigned r = 0;
    while (n > 1) {
        n >>= 1;
        ++r;
    }
    return r;
}

struct StageDescriptor {
    unsigned radix = 2;
    /// Product of the radices of all earlier stages.
    std::size_t span = 1;
    TwiddlePolicy twiddle_policy = TwiddlePolicy::chained_single_sincos;
    AccessClass access_class = AccessClass::sequential;

    friend bool operator==(const StageDescriptor&, const StageDescriptor&) = default;
};

struct FftPlan {
    std::size_t n = 0;
    std::vector<StageDescriptor> stages;
    unsigned threads = 1;
    BufferStrategy buffer_strategy = BufferStrategy::register_tiled_single_buffer;
    std::size_t threadgroup_bytes = 0;
    unsigned barrier_count = 0;

    friend bool operator==(const FftPlan&, const FftPlan&) = default;

    std::vector<unsigned> radices() const;
};

/// Stockham stage addressing, shared by the CPU executor and the shader
/// emitter.
///
/// Butterfly j of a stage with radix R and span S (j < n/R) reads
/// in[j + r*(n/R)], applies W_{S*R}^{r*(j mod S)}, and writes element r to
/// out[(j / S)*S*R + (j mod S) + r*S].
struct StageAddressing {
    std::size_t n;
    std::size_t radix;
    std::size_t span;

    StageAddressing(std::size_t n_, const StageDescriptor& s) : n(n_), radix(s.radix), span(s.span) {}

    std::size_t butterflies() const { return n / radix; }
    std::size_t input_stride() const { return n / radix; }
    std::size_t input_index(std::size_t j, std::size_t r) const { return j + r * input_stride(); }
    std::size_t twiddle_index(std::size_t j) const { return j % span; }
    std::size_t twiddle_order() const { return span * radix; }
    std::size_t output_base(std::size_t j) const { return (j / span) * span * radix + j % span; }
    std::size_t output_stride() const { return span; }
    std::size_t output_index(std::size_t j, std::size_t r) const {
        return output_base(j) + r * output_stride();
    }
};

/// Decomposes n into Stockham stages.
///
/// prefer8 emits radix-8 stages then one radix-4 or radix-2 stage for the
/// remainder; prefer4 emits radix-4 stages then at most one radix-2; pure2
/// emits only radix-2 stages. threads = n / (leading radix), capped at 1024.
FftPlan make_plan(std::size_t n, RadixPolicy policy,
                  TwiddlePolicy twiddles = TwiddlePolicy::chained_single_sincos,
                  BufferStrategy strategy = BufferStrategy::register_tiled_single_buffer,
                  std::size_t bytes_per_element = kComplexFloatBytes);

/// Modeled threadgroup barrier count.
///
/// register_tiled_single_buffer: one barrier pair per stage (before reading
/// the shared buffer, before overwriting it); the first stage reads from
/// device memory and the last writes to device memory, which removes two.
/// double_buffer: one barrier per stage boundary.
/// simd_shuffle_hybrid: as register-tiled, but one stage boundary is
/// exchanged by SIMD shuffles and needs no barrier pair.
unsigned count_barriers(const FftPlan& plan);

/// Number of stage boundaries whose exchange goes through threadgroup memory.
std::size_t threadgroup_exchanges(const FftPlan& plan);

/// Recomputes spans, barrier count and buffer size after stages change.
void finalize_plan(FftPlan& plan, std::size_t bytes_per_element = kComplexFloatBytes);

/// Throws std::invalid_argument if the plan violates its invariants.
void validate_plan(const FftPlan& plan);

}  // namespace sfft
