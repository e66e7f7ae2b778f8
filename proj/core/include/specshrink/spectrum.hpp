#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "specshrink/errors.hpp"
#include "specshrink/parallel.hpp"

namespace specshrink {

enum class SpectrumKind { Explicit, PowerLaw, ExpDecay, Orthogonal };

// Non-zero eigenvalues s_1 >= ... >= s_r of X^T X / n in ambient dimension d.
// The induced measure puts mass 1/d on each s_i and 1 - r/d at zero.
class Spectrum {
public:
    static Spectrum explicit_values(std::vector<double> values, std::int64_t d);
    static Spectrum power_law(double alpha, std::int64_t r, std::int64_t d);
    static Spectrum exp_decay(double rho, std::int64_t r, std::int64_t d);
    static Spectrum orthogonal(double s, std::int64_t r, std::int64_t d);

    SpectrumKind kind() const noexcept { return kind_; }
    std::int64_t rank() const noexcept { return r_; }
    std::int64_t dim() const noexcept { return d_; }
    double parameter() const noexcept { return param_; }
    const std::vector<double>& explicit_data() const noexcept { return values_; }

    // s_{i+1}, zero-based.
    double value(std::int64_t i) const noexcept {
        switch (kind_) {
            case SpectrumKind::Explicit: return values_[static_cast<std::size_t>(i)];
            case SpectrumKind::PowerLaw: return std::pow(static_cast<double>(i + 1), -param_);
            case SpectrumKind::ExpDecay: return std::exp(-param_ * static_cast<double>(i));
            case SpectrumKind::Orthogonal: return param_;
        }
        return 0.0;
    }
    double s1() const noexcept { return value(0); }
    double zero_mass() const noexcept {
        return static_cast<double>(d_ - r_) / static_cast<double>(d_);
    }

    std::vector<double> materialize() const;
    std::string describe() const;

    // Zero-based index range [first, last) of eigenvalues with lo < s <= hi.
    std::pair<std::int64_t, std::int64_t> index_range(double lo, double hi) const;

private:
    Spectrum(SpectrumKind kind, double param, std::int64_t r, std::int64_t d,
             std::vector<double> values);

    SpectrumKind kind_;
    double param_;
    std::int64_t r_;
    std::int64_t d_;
    std::vector<double> values_;
};

namespace detail {
[[noreturn]] void throw_non_finite(std::int64_t index, double s, double g);
}

// Sum of g(s_i) over zero-based indices [first, last), compensated and
// independent of the thread count.
template <class G>
double sum_over(const Spectrum& spec, std::int64_t first, std::int64_t last, G&& g) {
    if (last <= first) return 0.0;
    const auto n = static_cast<std::size_t>(last - first);
    return deterministic_sum(n, [&](std::size_t k) {
               const std::int64_t i = first + static_cast<std::int64_t>(k);
               const double s = spec.value(i);
               const double v = g(s);
               if (!std::isfinite(v)) detail::throw_non_finite(i, s, v);
               return v;
           }).value();
}

// Integral of g against the spectral measure; the zero atom contributes
// (1 - r/d) * g0 when requested.
template <class G>
double integrate(const Spectrum& spec, G&& g, bool include_zero_atom = false, double g0 = 0.0) {
    const double sum = sum_over(spec, 0, spec.rank(), g);
    double out = sum / static_cast<double>(spec.dim());
    if (include_zero_atom) out += spec.zero_mass() * g0;
    return out;
}

// Integral of g over (lo, hi]. The zero atom contributes g0 when lo < 0 <= hi.
template <class G>
double integrate_range(const Spectrum& spec, G&& g, double lo, double hi, double g0 = 0.0) {
    if (!(lo < hi)) throw ArgumentError("integrate_range requires lo < hi");
    const auto [first, last] = spec.index_range(lo, hi);
    double out = sum_over(spec, first, last, g) / static_cast<double>(spec.dim());
    if (lo < 0.0 && 0.0 <= hi) out += spec.zero_mass() * g0;
    return out;
}

struct PartialSums {
    double sum_inv_sq_above;  // sum of s^-2 over s > lambda_star
    double sum_below;         // sum of s over s <= lambda_star
    double sum_cubed_mid;     // sum of s^3 over lambda_star^2/(k lambda_min) < s <= lambda_star
};

PartialSums partial_sums(const Spectrum& spec, double lambda_star, std::int64_t k, double lambda_min);

}  // namespace specshrink
