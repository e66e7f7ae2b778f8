#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace specshrink {

// Neumaier-compensated accumulator.
struct CompensatedSum {
    double hi = 0.0;
    double lo = 0.0;

    void add(double x) noexcept {
        const double t = hi + x;
        if (std::isinf(t)) {
            hi = t;
            lo = 0.0;
            return;
        }
        if (std::fabs(hi) >= std::fabs(x))
            lo += (hi - t) + x;
        else
            lo += (x - t) + hi;
        hi = t;
    }
    double value() const noexcept { return hi + lo; }
};

// Error-free merge of two partial sums (TwoSum on the leading parts).
inline CompensatedSum merge(const CompensatedSum& a, const CompensatedSum& b) noexcept {
    const double s = a.hi + b.hi;
    if (!std::isfinite(s)) return {s, 0.0};
    const double bb = s - a.hi;
    const double err = (a.hi - (s - bb)) + (b.hi - bb);
    return {s, (a.lo + b.lo) + err};
}

// Pairwise merge over [first, last) in a fixed tree.
inline CompensatedSum merge_tree(const CompensatedSum* parts, std::size_t count) noexcept {
    if (count == 0) return {};
    if (count == 1) return parts[0];
    const std::size_t half = count / 2;
    return merge(merge_tree(parts, half), merge_tree(parts + half, count - half));
}

inline constexpr std::size_t kSumBlock = 4096;

}  // namespace specshrink
