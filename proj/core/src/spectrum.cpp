#include "specshrink/spectrum.hpp"

#include <limits>
#include <sstream>

namespace specshrink {

namespace detail {
void throw_non_finite(std::int64_t index, double s, double g) {
    std::ostringstream os;
    os << "non-finite integrand at eigenvalue index " << index << " (s=" << s << ", g=" << g << ")";
    throw EvaluationError(os.str(), index);
}
}  // namespace detail

namespace {
void check_dims(std::int64_t r, std::int64_t d) {
    if (r < 1) throw ArgumentError("spectrum rank must be positive");
    if (d < r) throw ArgumentError("spectrum requires r <= d");
}
}  // namespace

Spectrum::Spectrum(SpectrumKind kind, double param, std::int64_t r, std::int64_t d,
                   std::vector<double> values)
    : kind_(kind), param_(param), r_(r), d_(d), values_(std::move(values)) {}

Spectrum Spectrum::explicit_values(std::vector<double> values, std::int64_t d) {
    const auto r = static_cast<std::int64_t>(values.size());
    check_dims(r, d);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0.0) || !std::isfinite(values[i]))
            throw ArgumentError("explicit eigenvalues must be finite and positive");
        if (i > 0 && values[i] > values[i - 1])
            throw ArgumentError("explicit eigenvalues must be sorted non-increasing");
    }
    return Spectrum(SpectrumKind::Explicit, 0.0, r, d, std::move(values));
}

Spectrum Spectrum::power_law(double alpha, std::int64_t r, std::int64_t d) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ArgumentError("power-law alpha must be positive");
    check_dims(r, d);
    return Spectrum(SpectrumKind::PowerLaw, alpha, r, d, {});
}

Spectrum Spectrum::exp_decay(double rho, std::int64_t r, std::int64_t d) {
    if (!(rho > 0.0) || !std::isfinite(rho)) throw ArgumentError("exponential rate rho must be positive");
    check_dims(r, d);
    return Spectrum(SpectrumKind::ExpDecay, rho, r, d, {});
}

Spectrum Spectrum::orthogonal(double s, std::int64_t r, std::int64_t d) {
    if (!(s > 0.0) || !std::isfinite(s)) throw ArgumentError("orthogonal eigenvalue must be positive");
    check_dims(r, d);
    return Spectrum(SpectrumKind::Orthogonal, s, r, d, {});
}

std::vector<double> Spectrum::materialize() const {
    if (kind_ == SpectrumKind::Explicit) return values_;
    std::vector<double> out(static_cast<std::size_t>(r_));
    for (std::int64_t i = 0; i < r_; ++i) out[static_cast<std::size_t>(i)] = value(i);
    return out;
}

std::string Spectrum::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case SpectrumKind::Explicit: os << "explicit(r=" << r_; break;
        case SpectrumKind::PowerLaw: os << "power_law(alpha=" << param_ << ", r=" << r_; break;
        case SpectrumKind::ExpDecay: os << "exp_decay(rho=" << param_ << ", r=" << r_; break;
        case SpectrumKind::Orthogonal: os << "orthogonal(s=" << param_ << ", r=" << r_; break;
    }
    os << ", d=" << d_ << ")";
    return os.str();
}

std::pair<std::int64_t, std::int64_t> Spectrum::index_range(double lo, double hi) const {
    // First index whose value is <= bound; values are non-increasing.
    auto first_at_most = [this](double bound) {
        std::int64_t a = 0, b = r_;
        while (a < b) {
            const std::int64_t m = a + (b - a) / 2;
            if (value(m) > bound)
                a = m + 1;
            else
                b = m;
        }
        return a;
    };
    const std::int64_t first = first_at_most(hi);
    const std::int64_t last = first_at_most(lo);
    return {first, std::max(first, last)};
}

PartialSums partial_sums(const Spectrum& spec, double lambda_star, std::int64_t k, double lambda_min) {
    if (spec.kind() != SpectrumKind::PowerLaw) throw ArgumentError("partial_sums requires a power-law spectrum");
    if (!(lambda_star > 0.0 && lambda_star <= 1.0)) throw ArgumentError("partial_sums requires 0 < lambda_star <= 1");
    if (k < 1 || !(lambda_min > 0.0)) throw ArgumentError("partial_sums requires k >= 1 and lambda_min > 0");
    const std::int64_t r = spec.rank();
    const std::int64_t split = spec.index_range(lambda_star, std::numeric_limits<double>::infinity()).second;
    PartialSums out{};
    out.sum_inv_sq_above = sum_over(spec, 0, split, [](double s) { return 1.0 / (s * s); });
    out.sum_below = sum_over(spec, split, r, [](double s) { return s; });
    const double lo = lambda_star * lambda_star / (static_cast<double>(k) * lambda_min);
    if (lo < lambda_star) {
        const auto [a, b] = spec.index_range(lo, lambda_star);
        out.sum_cubed_mid = sum_over(spec, a, b, [](double s) { return s * s * s; });
    }
    return out;
}

}  // namespace specshrink
