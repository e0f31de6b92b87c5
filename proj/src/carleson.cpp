#include "holab/carleson.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "holab/profile.hpp"
#include "holab/rng.hpp"
#include "holab/trend.hpp"

namespace holab {

namespace {
constexpr double kPi = 3.14159265358979323846;

double wrap_2pi(double a) {
    double w = std::remainder(a, 2.0 * kPi);
    if (w < 0.0) w += 2.0 * kPi;
    return w;
}
}  // namespace

double BoundarySample::near_boundary_fraction() const {
    std::size_t k = 0;
    for (double d : deficit)
        if (d <= 1e-12) ++k;
    return double(k) / double(deficit.size());
}

std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2) throw std::invalid_argument("log_spaced: bad range");
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = lo * std::pow(hi / lo, double(i) / double(n - 1));
    return g;
}

BoundarySample sample_boundary(const Symbol& symbol, std::size_t n_points, std::uint64_t seed) {
    if (n_points < 10000) throw std::invalid_argument("sample_boundary: need n_points >= 1e4");
    BoundarySample out;
    out.arg.resize(n_points);
    out.deficit.resize(n_points);
    out.seed = seed;
    out.ae_strict = symbol.ae_strict();
    out.symbol_spec = symbol.spec_string();

    const bool grid = (seed == 0);
    const bool pow2 = (n_points & (n_points - 1)) == 0;

    if (grid && symbol.kind() == Symbol::Kind::general && pow2 &&
        n_points >= 2 * symbol.coefficients().a.size()) {
        // batch path: one FFT for the conjugate series on the midpoint grid
        const auto hf = conjugate_on_grid(symbol.coefficients().a, n_points);
        const ProfileFunction& prof = *symbol.profile();
        for (std::size_t i = 0; i < n_points; ++i) {
            const double t = 2.0 * kPi * (double(i) + 0.5) / double(n_points);
            const double cot = 1.0 / std::tan(0.5 * std::remainder(t, 2.0 * kPi));
            out.deficit[i] = -std::expm1(-prof.f(t));
            out.arg[i] = wrap_2pi(-cot - hf[i]);
        }
        return out;
    }

    Rng rng(seed);
    const double guard = symbol.singular_guard();
    for (std::size_t i = 0; i < n_points; ++i) {
        double t;
        if (grid) {
            t = 2.0 * kPi * (double(i) + 0.5) / double(n_points);  // never hits t = 0
        } else {
            do {
                t = 2.0 * kPi * rng.next_double();
            } while (std::fabs(std::remainder(t, 2.0 * kPi)) < guard);
        }
        const BoundaryValue bv = symbol.boundary_polar(t);
        out.deficit[i] = bv.deficit;
        out.arg[i] = wrap_2pi(bv.arg);
    }
    return out;
}

namespace {

struct SortedSample {
    std::vector<double> arg;      // ascending
    std::vector<double> deficit;  // matching
};

SortedSample sort_by_arg(const BoundarySample& s) {
    std::vector<std::size_t> idx(s.size());
    std::iota(idx.begin(), idx.end(), std::size_t(0));
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return s.arg[a] < s.arg[b]; });
    SortedSample out;
    out.arg.resize(s.size());
    out.deficit.resize(s.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        out.arg[i] = s.arg[idx[i]];
        out.deficit[i] = s.deficit[idx[i]];
    }
    return out;
}

// max count over circular windows [a_i, a_i + width] with data-driven left edges
std::int64_t sliding_window_max(const std::vector<double>& a, double width) {
    const std::size_t m = a.size();
    if (m == 0) return 0;
    if (width >= 2.0 * kPi) return std::int64_t(m);
    std::int64_t best = 0;
    std::size_t j = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (j < i) j = i;
        while (j < i + m) {
            const double aj = (j < m) ? a[j] : a[j - m] + 2.0 * kPi;
            if (aj <= a[i] + width) ++j;
            else break;
        }
        best = std::max(best, std::int64_t(j - i));
    }
    return best;
}

// weighted variant for bootstrap replicates
double sliding_window_max_weighted(const std::vector<double>& a, const std::vector<double>& w,
                                   double width) {
    const std::size_t m = a.size();
    if (m == 0) return 0.0;
    double total = 0.0;
    for (double x : w) total += x;
    if (width >= 2.0 * kPi) return total;
    double best = 0.0, cur = 0.0;
    std::size_t j = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (j < i) { j = i; cur = 0.0; }
        while (j < i + m) {
            const double aj = (j < m) ? a[j] : a[j - m] + 2.0 * kPi;
            if (aj <= a[i] + width) { cur += (j < m) ? w[j] : w[j - m]; ++j; }
            else break;
        }
        best = std::max(best, cur);
        cur -= w[i];
    }
    return best;
}

}  // namespace

CarlesonProfile rho_profile(const BoundarySample& sample, std::span<const double> h_grid,
                            double width_factor) {
    const double floor = 10.0 / double(sample.size());
    for (double h : h_grid)
        if (!(h >= floor) || !(h < 1.0))
            throw std::invalid_argument("rho_profile: h must lie in [10/n_points, 1)");
    const SortedSample ss = sort_by_arg(sample);
    CarlesonProfile p;
    p.h.assign(h_grid.begin(), h_grid.end());
    p.n_points = sample.size();
    p.width_factor = width_factor;
    p.symbol_spec = sample.symbol_spec;
    std::vector<double> active;
    for (double h : h_grid) {
        active.clear();
        for (std::size_t i = 0; i < ss.arg.size(); ++i)
            if (ss.deficit[i] <= h) active.push_back(ss.arg[i]);
        const std::int64_t c = sliding_window_max(active, 2.0 * h * width_factor);
        p.rho.push_back(double(c) / double(sample.size()));
        p.stderr_.push_back(std::sqrt(double(c)) / double(sample.size()));
        p.n_centers.push_back(std::int64_t(active.size()));
    }
    return p;
}

std::vector<double> bootstrap_stderr(const BoundarySample& sample,
                                     std::span<const double> h_grid, int n_boot,
                                     std::uint64_t seed, double width_factor) {
    if (n_boot < 2) throw std::invalid_argument("bootstrap_stderr: need n_boot >= 2");
    const SortedSample ss = sort_by_arg(sample);
    const std::size_t n = ss.arg.size();
    std::vector<std::vector<double>> rep(h_grid.size());
    Rng rng(seed ^ 0x626f6f74ULL);
    std::vector<double> w(n);
    std::vector<double> active_a, active_w;
    for (int b = 0; b < n_boot; ++b) {
        std::fill(w.begin(), w.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) w[rng.next_below(n)] += 1.0;
        for (std::size_t gi = 0; gi < h_grid.size(); ++gi) {
            active_a.clear();
            active_w.clear();
            for (std::size_t i = 0; i < n; ++i)
                if (ss.deficit[i] <= h_grid[gi]) {
                    active_a.push_back(ss.arg[i]);
                    active_w.push_back(w[i]);
                }
            rep[gi].push_back(
                sliding_window_max_weighted(active_a, active_w, 2.0 * h_grid[gi] * width_factor) /
                double(n));
        }
    }
    std::vector<double> out(h_grid.size());
    for (std::size_t gi = 0; gi < h_grid.size(); ++gi) {
        double mean = 0.0;
        for (double v : rep[gi]) mean += v;
        mean /= double(n_boot);
        double var = 0.0;
        for (double v : rep[gi]) var += (v - mean) * (v - mean);
        out[gi] = std::sqrt(var / double(n_boot - 1));
    }
    return out;
}

CarlesonProfile synthetic_profile(std::span<const double> h_grid,
                                  const std::function<double(double)>& law,
                                  std::uint64_t n_points) {
    CarlesonProfile p;
    p.n_points = n_points;
    p.symbol_spec = "synthetic";
    for (double h : h_grid) {
        const double r = std::clamp(law(h), 0.0, 1.0);
        p.h.push_back(h);
        p.rho.push_back(r);
        p.stderr_.push_back(std::sqrt(std::max(r, 0.0) / double(n_points)));
        p.n_centers.push_back(std::int64_t(double(n_points) * r));
    }
    return p;
}

double profile_log_rho(const CarlesonProfile& p, double log_h) {
    std::vector<double> lh, lr;
    for (std::size_t i = 0; i < p.h.size(); ++i)
        if (p.rho[i] > 0.0) {
            lh.push_back(std::log(p.h[i]));
            lr.push_back(std::log(p.rho[i]));
        }
    if (lh.size() < 2) throw std::runtime_error("profile_log_rho: too few positive rho values");
    if (log_h >= lh.back()) return lr.back();
    if (log_h <= lh.front()) {
        // power-law extension fitted on the lowest decade of usable points
        std::size_t k = 2;
        while (k < lh.size() && lh[k] - lh.front() < 2.303) ++k;
        const auto fit = ls_slope(std::span(lh).subspan(0, k), std::span(lr).subspan(0, k));
        return lr.front() + fit.slope * (log_h - lh.front());
    }
    const auto it = std::lower_bound(lh.begin(), lh.end(), log_h);
    const std::size_t i = std::size_t(it - lh.begin());
    const double t = (log_h - lh[i - 1]) / (lh[i] - lh[i - 1]);
    return lr[i - 1] + t * (lr[i] - lr[i - 1]);
}

ExponentFit fit_exponent(const CarlesonProfile& profile, double log_correction_theta) {
    const double floor = 10.0 * (10.0 / double(profile.n_points));
    std::vector<double> x, y;
    for (std::size_t i = 0; i < profile.h.size(); ++i) {
        if (profile.rho[i] <= floor) continue;
        x.push_back(std::log(profile.h[i]));
        y.push_back(std::log(profile.rho[i]) +
                    log_correction_theta * std::log(std::log(1.0 / profile.h[i])));
    }
    if (x.size() < 8) throw std::runtime_error("fit_exponent: fewer than 8 usable grid points");
    const auto fit = ls_slope(x, y);
    return {fit.slope, fit.r2, x.size()};
}

std::int64_t DyadicMeasure::annulus_count(int n) const {
    std::int64_t s = 0;
    for (std::int64_t c : counts[std::size_t(n - 1)]) s += c;
    return s;
}

DyadicMeasure dyadic_measures(const BoundarySample& sample, int depth) {
    if (depth < 1) throw std::invalid_argument("dyadic_measures: depth >= 1");
    if ((std::uint64_t(1) << depth) > sample.size() / 100)
        throw std::invalid_argument("dyadic_measures: depth too deep for the sample (need 2^depth <= n/100)");
    DyadicMeasure dm;
    dm.depth = depth;
    dm.n_points = sample.size();
    dm.counts.resize(std::size_t(depth));
    for (int n = 1; n <= depth; ++n)
        dm.counts[std::size_t(n - 1)].assign(std::size_t(1) << n, 0);
    const double inv2pi = 1.0 / (2.0 * kPi);
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double d = std::max(sample.deficit[i], 0.0);
        const double frac = sample.arg[i] * inv2pi;  // in [0, 1)
        double lvl = 0.5;
        for (int n = 1; n <= depth; ++n) {
            if (d > lvl) break;  // window W_{n,j} requires |z| >= 1 - 2^{-n}
            auto& row = dm.counts[std::size_t(n - 1)];
            std::size_t j = std::size_t(frac * double(std::size_t(1) << n));
            if (j >= row.size()) j = row.size() - 1;
            ++row[j];
            lvl *= 0.5;
        }
    }
    return dm;
}

LueckingSums luecking_partial_sums(const DyadicMeasure& dm, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("luecking_partial_sums: need p > 0");
    LueckingSums out;
    out.p = p;
    double running = 0.0;
    for (int n = 1; n <= dm.depth; ++n) {
        const double w = std::pow(2.0, double(n) * p / 2.0);
        double term = 0.0;
        for (std::int64_t c : dm.counts[std::size_t(n - 1)])
            if (c > 0) term += w * std::pow(double(c) / double(dm.n_points), p / 2.0);
        running += term;
        out.level_terms.push_back(term);
        out.partial_sums.push_back(running);
        if (n >= 2) {
            const double prev = out.level_terms[std::size_t(n - 2)];
            out.tail_ratios.push_back(prev > 0.0 ? term / prev : (term > 0.0 ? 1e9 : 0.0));
        }
    }
    // verdict from the last three level ratios
    if (out.tail_ratios.size() >= 3) {
        bool conv = true, div = true;
        for (std::size_t i = out.tail_ratios.size() - 3; i < out.tail_ratios.size(); ++i) {
            conv = conv && out.tail_ratios[i] < 0.95;
            div = div && out.tail_ratios[i] > 1.05;
        }
        out.verdict = conv ? "converging" : div ? "diverging" : "inconclusive";
    } else {
        out.verdict = "inconclusive";
    }
    return out;
}

}  // namespace holab
