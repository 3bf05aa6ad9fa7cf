#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace taut {

/// Truncated power series h(z) = a₁z + a₂z² + … + a_N z^N with a₁ ≠ 0:
/// the germ of a holomorphic map between punctured discs fixing the
/// puncture.  Coefficients are complex; everything here is floating
/// point — the content is asymptotic, checked against tolerances.
class GermSeries {
public:
    explicit GermSeries(std::vector<std::complex<double>> coeffs)
        : a_(std::move(coeffs)) {
        if (a_.empty()) throw std::invalid_argument("GermSeries: needs a leading coefficient");
        while (a_.size() > 1 && std::abs(a_.back()) == 0.0) a_.pop_back();
        if (std::abs(a_[0]) == 0.0)
            throw std::invalid_argument("GermSeries: a1 must be nonzero");
    }

    static GermSeries linear(std::complex<double> a1) { return GermSeries({a1}); }

    int top_index() const { return static_cast<int>(a_.size()); }  // N
    const std::vector<std::complex<double>>& coefficients() const { return a_; }
    std::complex<double> leading() const { return a_[0]; }

    std::complex<double> eval(std::complex<double> z) const {
        std::complex<double> acc = 0.0;
        for (std::size_t k = a_.size(); k-- > 0;) acc = acc * z + a_[k];
        return acc * z;
    }

    std::complex<double> derivative(std::complex<double> z) const {
        std::complex<double> acc = 0.0;
        for (std::size_t k = a_.size(); k-- > 0;)
            acc = acc * z + a_[k] * static_cast<double>(k + 1);
        return acc;
    }

private:
    std::vector<std::complex<double>> a_;  // a_[k] is the coefficient of z^{k+1}
};

/// Relative size the last retained series term may reach before an
/// evaluation point is refused as unreliable (the truncated tail could
/// then affect results at the tolerances we verify).
inline constexpr double kGermTruncationTolerance = 1e-2;

inline bool within_truncation_radius(const GermSeries& h, std::complex<double> z) {
    double lead = std::abs(h.leading()) * std::abs(z);
    const auto& a = h.coefficients();
    for (std::size_t k = 1; k < a.size(); ++k) {
        double term = std::abs(a[k]) * std::pow(std::abs(z), static_cast<double>(k + 1));
        if (term >= kGermTruncationTolerance * lead) return false;
    }
    return true;
}

/// Length of the closed horocycle |z| = c about the puncture:
/// ℓ = -2π / log c.
inline double horocycle_length(double c) {
    if (!(c > 0.0 && c < 1.0))
        throw std::domain_error("horocycle_length: need 0 < c < 1");
    return -2.0 * std::numbers::pi / std::log(c);
}

/// Density of the complete hyperbolic metric of the punctured unit disc,
/// ds = |dz| / (|z|·(-log|z|)).
inline double cusp_density(std::complex<double> z) {
    double r = std::abs(z);
    if (!(r > 0.0 && r < 1.0)) throw std::domain_error("cusp_density: need 0 < |z| < 1");
    return 1.0 / (r * (-std::log(r)));
}

/// Canonical norm of the differential of a germ between punctures:
/// ‖dh‖_can = |h'(0)| = |a₁|.
inline double germ_norm(const GermSeries& h) { return std::abs(h.leading()); }

/// Ratio of the pulled-back cusp metric to the base cusp metric,
///   (h*ds₂²)(ds₁²)⁻¹ = ( |z·h'(z)|·log|z| / (|h(z)|·log|h(z)|) )² ,
/// valid for 0 < |z| < 1 with 0 < |h(z)| < 1 inside the truncation
/// radius of the series.
inline double metric_ratio(const GermSeries& h, std::complex<double> z) {
    double r = std::abs(z);
    if (!(r > 0.0 && r < 1.0)) throw std::domain_error("metric_ratio: need 0 < |z| < 1");
    if (!within_truncation_radius(h, z))
        throw std::domain_error("metric_ratio: |z| outside the series' reliable radius");
    std::complex<double> hz = h.eval(z);
    double hr = std::abs(hz);
    if (!(hr > 0.0 && hr < 1.0))
        throw std::domain_error("metric_ratio: need 0 < |h(z)| < 1");
    double num = r * std::abs(h.derivative(z)) * std::log(r);
    double den = hr * std::log(hr);
    double q = num / den;
    return q * q;
}

/// Deviation of the ratio from its first-order expansion
///   ratio = 1 - 2·log|h'(0)|/log|z| + O(1/log²|z|):
/// returns ratio - 1 + 2·log|a₁|/log|z|, which should be O(1/log²|z|)
/// with a germ-dependent constant.
inline double ratio_expansion_residual(const GermSeries& h, std::complex<double> z) {
    double ratio = metric_ratio(h, z);
    return ratio - 1.0 + 2.0 * std::log(germ_norm(h)) / std::log(std::abs(z));
}

struct LimitSample {
    double abs_z;
    double value;  // (-log|z|) · log(metric ratio)
};

/// Result of chasing  log‖dh‖²_can = lim (2π/ℓ)·log((h*ds₂²)(ds₁²)⁻¹)
/// down a sequence of points approaching the puncture.
struct LimitReport {
    std::vector<LimitSample> samples;
    double raw_final = 0.0;    // last sample value, no extrapolation
    double estimate = 0.0;     // Richardson-extrapolated limit
    double target = 0.0;       // 2·log|a₁|, what the limit must equal
    bool converged = false;    // extrapolation stabilized within tolerance
};

/// Evaluates (2π/ℓ)·log(ratio) = (-log|z|)·log(ratio) along a strictly
/// shrinking sequence of points and extrapolates the ℓ → 0 limit.
///
/// The raw sample at |z| has error O(1/log|z|) with a germ-dependent
/// constant, far above the verification tolerances at |z| = 1e-8, so the
/// limit is extracted by polynomial (Neville) extrapolation in the
/// variable 1/(-log|z|) over the trailing samples.
inline LimitReport limit_norm_estimate(const GermSeries& h,
                                       const std::vector<std::complex<double>>& z_sequence,
                                       double tolerance = 1e-3) {
    if (z_sequence.empty())
        throw std::invalid_argument("limit_norm_estimate: empty sequence");
    LimitReport report;
    double prev = 2.0;
    for (auto z : z_sequence) {
        double r = std::abs(z);
        if (!(r < prev))
            throw std::invalid_argument("limit_norm_estimate: |z| must strictly decrease");
        prev = r;
        report.samples.push_back({r, -std::log(r) * std::log(metric_ratio(h, z))});
    }
    report.raw_final = report.samples.back().value;
    report.target = 2.0 * std::log(germ_norm(h));

    auto extrapolate = [&](std::size_t count) {
        // Neville tableau at x = 0 for points (x_i = -1/log|z_i|, E_i)
        std::size_t first = report.samples.size() - count;
        std::vector<double> x(count), f(count);
        for (std::size_t i = 0; i < count; ++i) {
            x[i] = -1.0 / std::log(report.samples[first + i].abs_z);
            f[i] = report.samples[first + i].value;
        }
        for (std::size_t m = 1; m < count; ++m)
            for (std::size_t i = 0; i + m < count; ++i)
                f[i] = ((0.0 - x[i + m]) * f[i] + x[i] * f[i + 1]) / (x[i] - x[i + m]);
        return f[0];
    };

    std::size_t width = std::min<std::size_t>(report.samples.size(), 4);
    report.estimate = extrapolate(width);
    if (width >= 2) {
        double shorter = extrapolate(width - 1);
        report.converged = std::abs(report.estimate - shorter) <= tolerance;
    }
    return report;
}

/// Convenience: samples |z| = start·(step)^k down to stop along a fixed
/// angle (log-spaced radii).
inline std::vector<std::complex<double>> radial_sequence(double start, double stop,
                                                         int count, double angle = 0.0) {
    if (!(start > stop && stop > 0.0 && count >= 2))
        throw std::invalid_argument("radial_sequence: need start > stop > 0, count >= 2");
    std::vector<std::complex<double>> zs;
    double ratio = std::pow(stop / start, 1.0 / (count - 1));
    double r = start;
    for (int k = 0; k < count; ++k, r *= ratio)
        zs.push_back(std::polar(r, angle));
    zs.back() = std::polar(stop, angle);
    return zs;
}

enum class SequenceShape { constant_unity, strictly_increasing, strictly_decreasing, mixed };

inline const char* to_string(SequenceShape s) {
    switch (s) {
        case SequenceShape::constant_unity: return "constant ≡ 1";
        case SequenceShape::strictly_increasing: return "strictly increasing";
        case SequenceShape::strictly_decreasing: return "strictly decreasing";
        case SequenceShape::mixed: return "mixed";
    }
    return "mixed";
}

/// Horocycle-by-horocycle extremes of the pullback ratio.  The maximum
/// principle for the curvature equation forces the max sequence to be
/// constant at 1 or strictly increasing in ℓ (and the min sequence
/// constant at 1 or strictly decreasing) — this report lets tests verify
/// the observed shape against that dichotomy.
struct MonotonicityReport {
    std::vector<double> lengths;
    std::vector<double> max_ratio;
    std::vector<double> min_ratio;
    SequenceShape max_shape = SequenceShape::mixed;
    SequenceShape min_shape = SequenceShape::mixed;
};

inline SequenceShape classify_sequence(const std::vector<double>& v, double unity_tol) {
    bool unity = true, inc = true, dec = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (std::abs(v[i] - 1.0) > unity_tol) unity = false;
        if (i > 0) {
            if (!(v[i] > v[i - 1])) inc = false;
            if (!(v[i] < v[i - 1])) dec = false;
        }
    }
    if (unity) return SequenceShape::constant_unity;
    if (inc) return SequenceShape::strictly_increasing;
    if (dec) return SequenceShape::strictly_decreasing;
    return SequenceShape::mixed;
}

/// Samples the pullback ratio on the horocycle |z| = e^{-2π/ℓ} for each ℓ
/// in an increasing grid and classifies the max/min sequences.
inline MonotonicityReport schwarz_monotonicity_check(const GermSeries& h,
                                                     const std::vector<double>& l_grid,
                                                     int samples_per_circle = 256,
                                                     double unity_tol = 1e-9) {
    if (l_grid.size() < 2)
        throw std::invalid_argument("schwarz_monotonicity_check: need at least two lengths");
    if (samples_per_circle < 8)
        throw std::invalid_argument("schwarz_monotonicity_check: too few circle samples");
    MonotonicityReport report;
    double prev = 0.0;
    for (double l : l_grid) {
        if (!(l > prev))
            throw std::invalid_argument("schwarz_monotonicity_check: grid must increase");
        prev = l;
        double r = std::exp(-2.0 * std::numbers::pi / l);
        double lo = 0.0, hi = 0.0;
        for (int k = 0; k < samples_per_circle; ++k) {
            double theta = 2.0 * std::numbers::pi * k / samples_per_circle;
            double ratio = metric_ratio(h, std::polar(r, theta));
            if (k == 0) {
                lo = hi = ratio;
            } else {
                lo = std::min(lo, ratio);
                hi = std::max(hi, ratio);
            }
        }
        report.lengths.push_back(l);
        report.max_ratio.push_back(hi);
        report.min_ratio.push_back(lo);
    }
    report.max_shape = classify_sequence(report.max_ratio, unity_tol);
    report.min_shape = classify_sequence(report.min_ratio, unity_tol);
    return report;
}

}  // namespace taut
