#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace holab {

enum class Tristate { holds, fails, inconclusive };

inline const char* to_string(Tristate t) {
    switch (t) {
        case Tristate::holds: return "holds";
        case Tristate::fails: return "fails";
        default: return "inconclusive";
    }
}

enum class Trend { increasing, decreasing, flat, mixed };

inline const char* to_string(Trend t) {
    switch (t) {
        case Trend::increasing: return "increasing";
        case Trend::decreasing: return "decreasing";
        case Trend::flat: return "flat";
        default: return "mixed";
    }
}

// Classify the tail (last half) of an exactly-evaluated sequence.
// `margin` is the minimum total change that counts as a real trend,
// `noise` the per-step slack allowed before monotonicity is rejected.
inline Trend tail_trend(std::span<const double> r, double margin, double noise = 1e-12) {
    if (r.size() < 4) throw std::invalid_argument("tail_trend: need at least 4 samples");
    const std::size_t m = r.size() / 2;
    bool nondec = true, noninc = true;
    double lo = r[m], hi = r[m];
    for (std::size_t i = m + 1; i < r.size(); ++i) {
        if (r[i] < r[i - 1] - noise) nondec = false;
        if (r[i] > r[i - 1] + noise) noninc = false;
        lo = std::min(lo, r[i]);
        hi = std::max(hi, r[i]);
    }
    const double total = r.back() - r[m];
    const double floor = std::max(margin, 2.0 * noise);
    if (hi - lo <= floor) return Trend::flat;  // no signal above the noise
    if (nondec && total > floor) return Trend::increasing;
    if (noninc && total < -floor) return Trend::decreasing;
    return Trend::mixed;
}

// limsup-style classification of noisy empirical traces (criteria module):
// decaying toward the end of the span, bounded below, or undecidable.
enum class Envelope { decaying, nondecaying, inconclusive };

// Least-squares slope of y against x; r2 fit quality.
struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

inline SlopeFit ls_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("ls_slope: need matching arrays, size >= 2");
    const double n = double(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) { sx += x[i]; sy += y[i]; }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw std::invalid_argument("ls_slope: degenerate x range");
    SlopeFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r2 = (syy == 0.0) ? 1.0 : (sxy * sxy) / (sxx * syy);
    return f;
}

}  // namespace holab
