#include "sfft/butterflies.hpp"

namespace sfft {
namespace {

struct OpTally {
    std::size_t adds = 0;
    std::size_t muls = 0;
};

// Scalar that records every real add/subtract and multiply applied to it.
// Negation is a sign flip and is not counted.
struct CountingReal {
    double v = 0.0;
    OpTally* tally = nullptr;

    CountingReal() = default;
    CountingReal(double value, OpTally* t = nullptr) : v(value), tally(t) {}
    explicit CountingReal(long double value) : v(static_cast<double>(value)) {}

    static OpTally* pick(const CountingReal& a, const CountingReal& b) {
        return a.tally ? a.tally : b.tally;
    }
    friend CountingReal operator+(const CountingReal& a, const CountingReal& b) {
        auto* t = pick(a, b);
        if (t) ++t->adds;
        return {a.v + b.v, t};
    }
    friend CountingReal operator-(const CountingReal& a, const CountingReal& b) {
        auto* t = pick(a, b);
        if (t) ++t->adds;
        return {a.v - b.v, t};
    }
    friend CountingReal operator*(const CountingReal& a, const CountingReal& b) {
        auto* t = pick(a, b);
        if (t) ++t->muls;
        return {a.v * b.v, t};
    }
    CountingReal operator-() const { return {-v, tally}; }
};

}  // namespace

RadixEightFlopCounts count_radix8_flops() {
    using C = Complex<CountingReal>;
    RadixEightFlopCounts counts;

    {
        OpTally tally;
        ButterflyVector<CountingReal, 8> x;
        for (std::size_t i = 0; i < 8; ++i) x[i] = C{{1.0 + i, &tally}, {0.5 * i, &tally}};
        (void)butterfly_radix8_splitradix(x);
        counts.core_adds = tally.adds;
        counts.core_muls = tally.muls;
    }
    {
        OpTally tally;
        const C w1{{0.9, &tally}, {-0.4, &tally}};
        std::array<C, 7> w;
        twiddle_chain(w1, std::span<C>(w));
        ButterflyVector<CountingReal, 8> x;
        for (std::size_t i = 0; i < 8; ++i) x[i] = C{{1.0, &tally}, {0.0, &tally}};
        for (std::size_t r = 1; r < 8; ++r) x[r] = cmul(x[r], w[r - 1]);
        counts.twiddle_adds = tally.adds;
        counts.twiddle_muls = tally.muls;
    }
    {
        OpTally tally;
        RealMatrix8<CountingReal> a, b, c, d;
        for (auto* m : {&a, &b, &c, &d})
            for (auto& row : *m)
                for (auto& e : row) e = CountingReal{1.0, &tally};
        (void)mma_complex_multiply(a, b, c, d);
        counts.mma_adds = tally.adds;
        counts.mma_muls = tally.muls;
    }
    return counts;
}

double mma_flop_ratio() {
    const auto c = count_radix8_flops();
    return c.mma_per_column() / static_cast<double>(c.split_radix_butterfly());
}

}  // namespace sfft
