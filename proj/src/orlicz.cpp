#include "holab/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "holab/carleson.hpp"

namespace holab {

namespace {

constexpr double kLn2 = 0.6931471805599453;
constexpr double kPi = 3.14159265358979323846;
constexpr double kMargin = 1e-3;    // log-ratio margin for trend verdicts
constexpr double kLCap = 1e12;      // |L| kept below this on default grids
constexpr double kNegInf = -1e300;

// log(e^u - 1), stable for all u > 0
double log_expm1(double u) {
    if (u <= 0.0) throw std::domain_error("log_expm1: argument must be positive");
    if (u > 35.0) return u + std::log1p(-std::exp(-u));
    return std::log(std::expm1(u));
}

// log(1 + e^s)
double softplus(double s) {
    if (s > 35.0) return s + std::log1p(std::exp(-s));
    return std::log1p(std::exp(s));
}

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= double(k);
    return f;
}

}  // namespace

// ---------------------------------------------------------------------------
// OrliczFunction

OrliczFunction OrliczFunction::power(double p) {
    if (p < 1.0) throw std::invalid_argument("power: need p >= 1");
    OrliczFunction f;
    f.kind_ = Kind::power;
    f.param_ = p;
    return f;
}

OrliczFunction OrliczFunction::exp_power(double alpha) {
    if (alpha < 1.0) throw std::invalid_argument("exp_power: need alpha >= 1");
    OrliczFunction f;
    f.kind_ = Kind::exp_power;
    f.param_ = alpha;
    return f;
}

OrliczFunction OrliczFunction::exp_log_power(double alpha) {
    if (alpha <= 1.0) throw std::invalid_argument("exp_log_power: need alpha > 1");
    OrliczFunction f;
    f.kind_ = Kind::exp_log_power;
    f.param_ = alpha;
    return f;
}

OrliczFunction OrliczFunction::exp_x() {
    OrliczFunction f;
    f.kind_ = Kind::exp_x;
    return f;
}

OrliczFunction OrliczFunction::loglog() {
    OrliczFunction f;
    f.kind_ = Kind::log_exp_loglog;
    f.floor_s_ = 1.0;  // below x = e the exponent log log x turns negative
    f.floor_x_ = std::exp(1.0);
    return f;
}

OrliczFunction OrliczFunction::logloglog() {
    OrliczFunction f;
    f.kind_ = Kind::log_exp_lll;
    f.floor_s_ = std::exp(1.0);  // need log log s >= 0, i.e. s >= e
    f.floor_x_ = std::exp(f.floor_s_);
    return f;
}

OrliczFunction OrliczFunction::explicit_product() {
    OrliczFunction f = logloglog();
    f.kind_ = Kind::explicit_product;
    return f;
}

OrliczFunction OrliczFunction::piecewise(std::vector<std::pair<double, double>> knots,
                                         Interp interp) {
    if (knots.size() < 2) throw std::invalid_argument("piecewise: need >= 2 knots");
    OrliczFunction f;
    f.kind_ = Kind::piecewise;
    f.interp_ = interp;
    f.knots_lin_ = knots;
    f.knots_.reserve(knots.size());
    double px = 0.0, py = 0.0;
    for (auto& [x, y] : knots) {
        if (x <= px || y <= py)
            throw std::invalid_argument("piecewise: knots must be strictly increasing and positive");
        px = x;
        py = y;
        f.knots_.emplace_back(std::log(x), std::log(y));
    }
    // convexity checks
    if (interp == Interp::loglog_linear) {
        double prev = 1.0;
        for (std::size_t i = 0; i + 1 < f.knots_.size(); ++i) {
            const double m = (f.knots_[i + 1].second - f.knots_[i].second) /
                             (f.knots_[i + 1].first - f.knots_[i].first);
            if (m < prev - 1e-12)
                throw std::invalid_argument("piecewise: log-log slopes must be >= 1 and nondecreasing");
            prev = m;
        }
        f.post_slope_ = prev;
    } else {
        double prev = knots[0].second / knots[0].first;  // chord from the origin
        for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
            const double a = (knots[i + 1].second - knots[i].second) /
                             (knots[i + 1].first - knots[i].first);
            if (a < prev * (1.0 - 1e-12))
                throw std::invalid_argument("piecewise: affine slopes must be nondecreasing");
            prev = a;
        }
        const auto& kl = f.knots_;
        f.post_slope_ = (kl.back().second - kl[kl.size() - 2].second) /
                        (kl.back().first - kl[kl.size() - 2].first);
    }
    f.floor_s_ = f.knots_.front().first;
    f.floor_x_ = knots.front().first;
    return f;
}

double OrliczFunction::raw_log(double s) const {
    switch (kind_) {
        case Kind::power:
            return param_ * s;
        case Kind::exp_x: {
            if (s > 709.0) throw std::domain_error("exp_x: log-argument too large");
            return log_expm1(std::exp(s));
        }
        case Kind::exp_power: {
            const double us = param_ * s;
            if (us > 708.0) throw std::domain_error("exp_power: log-argument too large");
            return log_expm1(std::exp(us));
        }
        case Kind::exp_log_power: {
            const double w = softplus(s);  // log(x + 1)
            const double u = std::pow(w, param_);
            if (u > 1e300) throw std::domain_error("exp_log_power: log-argument too large");
            return u < 1e-300 ? std::log(u) : log_expm1(u);
        }
        case Kind::log_exp_loglog:
            return s * std::log(s);
        case Kind::log_exp_lll:
        case Kind::explicit_product:
            return s * std::log(std::log(s));
        case Kind::piecewise: {
            const auto& kn = knots_;
            if (s >= kn.back().first)
                return kn.back().second + post_slope_ * (s - kn.back().first);
            auto it = std::upper_bound(kn.begin(), kn.end(), s,
                                       [](double v, const auto& k) { return v < k.first; });
            const std::size_t i = std::size_t(it - kn.begin()) - 1;
            if (interp_ == Interp::loglog_linear) {
                const double m = (kn[i + 1].second - kn[i].second) /
                                 (kn[i + 1].first - kn[i].first);
                return kn[i].second + m * (s - kn[i].first);
            }
            const auto& [x0, y0] = knots_lin_[i];
            const double a = (knots_lin_[i + 1].second - y0) / (knots_lin_[i + 1].first - x0);
            // y0 + a (e^s - x0), with the difference kept stable near the knot
            return std::log(y0 + a * x0 * std::expm1(s - kn[i].first));
        }
    }
    throw std::logic_error("raw_log: bad kind");
}

double OrliczFunction::eval_log(double s) const {
    if (!std::isfinite(s)) throw std::domain_error("eval_log: s must be finite");
    if (floor_s_ > kNegInf && s < floor_s_) {
        // linear interpolation of Psi to (0, 0): slope 1 in log-log
        return raw_log(floor_s_) + (s - floor_s_);
    }
    return raw_log(s);
}

double OrliczFunction::operator()(double x) const {
    if (x < 0.0) throw std::domain_error("Psi: x must be >= 0");
    if (x == 0.0) return 0.0;
    return std::exp(eval_log(std::log(x)));
}

namespace {
// eval_log with overflow mapped to +inf, for bracketing searches
double eval_log_clamped(const OrliczFunction& f, double s) {
    try {
        return f.eval_log(s);
    } catch (const std::domain_error&) {
        return std::numeric_limits<double>::infinity();
    }
}
}  // namespace

double OrliczFunction::inverse_log(double log_y) const {
    if (!std::isfinite(log_y)) throw std::domain_error("inverse_log: target must be finite");
    double lo = -1.0, hi = 1.0;
    while (eval_log_clamped(*this, lo) > log_y) {
        hi = lo;
        lo *= 2.0;
        if (lo < -1e6) throw std::runtime_error("inverse_log: failed to bracket below");
    }
    while (eval_log_clamped(*this, hi) < log_y) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e6) throw std::runtime_error("inverse_log: failed to bracket above");
    }
    const double tol = 1e-12 + 1e-13 * std::fabs(log_y);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double v = eval_log_clamped(*this, mid);
        if (std::fabs(v - log_y) <= tol) return mid;
        (v < log_y ? lo : hi) = mid;
        if (hi - lo < 1e-16 * (1.0 + std::fabs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

double OrliczFunction::inverse(double y) const {
    if (y <= 0.0) throw std::domain_error("inverse: y must be positive");
    return std::exp(inverse_log(std::log(y)));
}

std::string OrliczFunction::spec() const {
    if (!spec_override_.empty()) return spec_override_;
    char buf[64];
    switch (kind_) {
        case Kind::power: std::snprintf(buf, sizeof buf, "power:%g", param_); return buf;
        case Kind::exp_power: std::snprintf(buf, sizeof buf, "exp_power:%g", param_); return buf;
        case Kind::exp_log_power:
            std::snprintf(buf, sizeof buf, "exp_log_power:%g", param_);
            return buf;
        case Kind::exp_x: return "exp_x";
        case Kind::log_exp_loglog: return "loglog";
        case Kind::log_exp_lll: return "logloglog";
        case Kind::explicit_product: return "product";
        case Kind::piecewise: return "piecewise";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// condition checks

std::string ConditionSpec::name() const {
    char buf[80];
    switch (kind) {
        case Condition::delta2: return "Delta2";
        case Condition::delta_sup2: std::snprintf(buf, sizeof buf, "DeltaSup2(A=%g)", A); return buf;
        case Condition::delta_sup1: return "DeltaSup1";
        case Condition::nabla0: return "Nabla0";
        case Condition::slow_growth:
            std::snprintf(buf, sizeof buf, "SlowGrowth(eps=%g)", eps);
            return buf;
        case Condition::theta_condition:
            std::snprintf(buf, sizeof buf, "ThetaCondition(A=%g,theta=%g)", A, theta);
            return buf;
        case Condition::dominated_by: return "DominatedBy(profile)";
    }
    return "?";
}

std::vector<double> default_condition_grid(const OrliczFunction& psi, int n_points) {
    if (n_points < 32) n_points = 32;
    double s_min;
    double s_max = 700.0;
    if (psi.kind() == OrliczFunction::Kind::piecewise) {
        const auto& kn = psi.knots_log();
        s_min = kn.front().first + 0.5;
        s_max = std::min(700.0, kn.back().first + 2.0);
        if (s_max - s_min < 4.6) s_max = s_min + 4.6;
    } else {
        s_min = (psi.domain_floor() > 0.0) ? std::log(psi.domain_floor()) + 0.5 : 0.5;
    }
    // keep |L| inside double precision for the ratio arithmetic
    if (eval_log_clamped(psi, s_max) > kLCap) {
        double lo = s_min, hi = s_max;
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            (eval_log_clamped(psi, mid) > kLCap ? hi : lo) = mid;
        }
        s_max = lo;
    }
    if (s_max - s_min < 4.6)
        throw std::runtime_error("default_condition_grid: family leaves double range too fast");
    std::vector<double> grid(static_cast<std::size_t>(n_points), 0.0);
    for (int i = 0; i < n_points; ++i)
        grid[std::size_t(i)] = s_min + (s_max - s_min) * double(i) / double(n_points - 1);
    return grid;
}

namespace {

struct RatioTrace {
    std::vector<std::pair<double, double>> fitted;
    Trend trend = Trend::mixed;
    double scale = 1.0;
};

// r_i = L(s_i + shift) - k_self * L(s_i) - lin * s_i - logl * log(L(s_i))
RatioTrace ratio_trace(const OrliczFunction& psi, std::span<const double> grid,
                       double shift, double k_self, double lin, double logl) {
    RatioTrace t;
    t.fitted.reserve(grid.size());
    double scale = 1.0;
    for (double s : grid) {
        const double l0 = psi.eval_log(s);
        const double l1 = psi.eval_log(s + shift);
        if (logl != 0.0 && l0 < 1e-6) continue;  // log L undefined this far down
        const double r = l1 - k_self * l0 - lin * s - (logl != 0.0 ? logl * std::log(l0) : 0.0);
        scale = std::max({scale, std::fabs(l0), std::fabs(l1)});
        t.fitted.emplace_back(s, r);
    }
    if (t.fitted.size() >= 8) {
        std::vector<double> r(t.fitted.size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = t.fitted[i].second;
        t.trend = tail_trend(r, kMargin, 1e-13 * scale);
    }
    t.scale = scale;
    return t;
}

void require_grid(std::span<const double> grid) {
    if (grid.size() < 32) throw std::invalid_argument("check_condition: grid needs >= 32 points");
    if (grid.back() - grid.front() < 4.6)
        throw std::invalid_argument("check_condition: grid must span >= 2 decades");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1])
            throw std::invalid_argument("check_condition: grid must be strictly increasing");
}

}  // namespace

GrowthVerdict check_condition(const OrliczFunction& psi, const ConditionSpec& cond,
                              std::span<const double> s_grid) {
    require_grid(s_grid);
    GrowthVerdict v;
    v.condition = cond;
    v.grid_lo = std::exp(s_grid.front());
    v.grid_hi = std::exp(s_grid.back());

    switch (cond.kind) {
        case Condition::delta2: {
            auto t = ratio_trace(psi, s_grid, kLn2, 1.0, 0.0, 0.0);
            v.fitted = std::move(t.fitted);
            v.holds = (t.trend == Trend::increasing) ? Tristate::fails
                      : (t.trend == Trend::flat || t.trend == Trend::decreasing)
                          ? Tristate::holds
                          : Tristate::inconclusive;
            break;
        }
        case Condition::delta_sup2: {
            if (cond.A <= 1.0) throw std::invalid_argument("DeltaSup2: need A > 1");
            auto t = ratio_trace(psi, s_grid, std::log(cond.A), 2.0, 0.0, 0.0);
            v.fitted = std::move(t.fitted);
            v.holds = (t.trend == Trend::decreasing) ? Tristate::fails
                      : (t.trend == Trend::flat || t.trend == Trend::increasing)
                          ? Tristate::holds
                          : Tristate::inconclusive;
            break;
        }
        case Condition::delta_sup1: {
            // exists A: x Psi(x) <= Psi(Ax) eventually; try A, A^2, A^3
            bool any_inconclusive = false;
            v.holds = Tristate::fails;
            for (int k = 1; k <= 3; ++k) {
                const double a = k * std::log(cond.A);
                auto t = ratio_trace(psi, s_grid, a, 1.0, 1.0, 0.0);
                const bool up = t.trend == Trend::increasing || t.trend == Trend::flat;
                const bool positive = !t.fitted.empty() && t.fitted.back().second > -1e-13 * t.scale;
                if (up && positive) {
                    v.holds = Tristate::holds;
                    v.witness_param = std::exp(a);
                    v.fitted = std::move(t.fitted);
                    break;
                }
                if (t.trend != Trend::decreasing) any_inconclusive = true;
                if (k == 1) v.fitted = std::move(t.fitted);
            }
            if (v.holds == Tristate::fails && any_inconclusive) v.holds = Tristate::inconclusive;
            break;
        }
        case Condition::nabla0: {
            // chord slopes of kappa must be nondecreasing
            std::vector<std::pair<double, double>> slopes;
            double scale = 1.0;
            for (std::size_t i = 0; i + 1 < s_grid.size(); ++i) {
                const double l0 = psi.eval_log(s_grid[i]);
                const double l1 = psi.eval_log(s_grid[i + 1]);
                scale = std::max({scale, std::fabs(l0), std::fabs(l1)});
                slopes.emplace_back(s_grid[i], (l1 - l0) / (s_grid[i + 1] - s_grid[i]));
            }
            v.fitted = slopes;
            const std::size_t m = slopes.size() / 2;
            double worst = 0.0;
            for (std::size_t i = m + 1; i < slopes.size(); ++i)
                worst = std::max(worst, slopes[i - 1].second - slopes[i].second);
            const double noise = 1e-12 * scale;
            v.holds = (worst <= noise) ? Tristate::holds
                      : (worst > kMargin) ? Tristate::fails
                                          : Tristate::inconclusive;
            break;
        }
        case Condition::slow_growth: {
            // design decision: a single A = 2 suffices, the condition propagates
            auto t = ratio_trace(psi, s_grid, kLn2, 1.0, 0.0, cond.eps);
            v.fitted = std::move(t.fitted);
            v.witness_param = 2.0;
            v.holds = (t.trend == Trend::increasing) ? Tristate::fails
                      : (t.trend == Trend::flat || t.trend == Trend::decreasing)
                          ? Tristate::holds
                          : Tristate::inconclusive;
            break;
        }
        case Condition::theta_condition: {
            // "for every A": failure at any A of the grid {A, A^2, A^3} decides
            if (cond.A <= 1.0) throw std::invalid_argument("ThetaCondition: need A > 1");
            bool all_hold = true, any_inconclusive = false;
            v.holds = Tristate::inconclusive;
            for (int k = 1; k <= 3; ++k) {
                const double a = k * std::log(cond.A);
                auto t = ratio_trace(psi, s_grid, a, 1.0, 0.0, cond.theta);
                if (k == 1) v.fitted = t.fitted;
                if (t.trend == Trend::increasing || t.trend == Trend::flat) {
                    v.holds = Tristate::fails;
                    v.witness_param = std::exp(a);
                    v.fitted = std::move(t.fitted);
                    return v;
                }
                if (t.trend != Trend::decreasing) {
                    all_hold = false;
                    any_inconclusive = true;
                }
            }
            if (all_hold) v.holds = Tristate::holds;
            else if (any_inconclusive) v.holds = Tristate::inconclusive;
            break;
        }
        case Condition::dominated_by: {
            if (cond.profile == nullptr)
                throw std::invalid_argument("DominatedBy: profile required");
            // Psi(2^{n+1}) >= 1/rho(1/Psi(2^n)) on the dyadic knots
            double worst = std::numeric_limits<double>::infinity();
            for (int n = 1; n <= 400; ++n) {
                const double ln = psi.eval_log(n * kLn2);
                if (ln > 700.0) break;  // h below anything representable/meaningful
                const double lnext = psi.eval_log((n + 1) * kLn2);
                const double r = lnext + profile_log_rho(*cond.profile, -ln);
                v.fitted.emplace_back(n * kLn2, r);
                worst = std::min(worst, r);
            }
            if (v.fitted.empty()) throw std::runtime_error("DominatedBy: no evaluable knots");
            v.holds = (worst >= -kMargin) ? Tristate::holds
                      : (worst < -0.1) ? Tristate::fails
                                       : Tristate::inconclusive;
            break;
        }
    }
    if (v.holds != Tristate::inconclusive && v.fitted.empty())
        v.holds = Tristate::inconclusive;  // never emit a verdict without evidence
    return v;
}

GrowthVerdict check_condition(const OrliczFunction& psi, const ConditionSpec& cond) {
    const auto grid = default_condition_grid(psi);
    return check_condition(psi, cond, grid);
}

// ---------------------------------------------------------------------------
// witness extraction

WitnessSequence delta2_witness(const OrliczFunction& psi, int n_max, double h_floor,
                               double accept_step) {
    if (n_max < 3) throw std::invalid_argument("delta2_witness: need n_max >= 3");
    const double l_floor = -std::log(h_floor);
    const double scan_step = 0.02;
    // start where h = 1/Psi(x) drops below pi (the profile construction
    // prepends h_0 = pi and needs h_1 < h_0)
    double s = psi.inverse_log(std::log(1.0 / kPi)) + 1e-6;
    const double s_budget = 700.0;
    WitnessSequence w;
    double d_last = -std::numeric_limits<double>::infinity();
    bool floor_reached = false;
    while (s <= s_budget && int(w.size()) < n_max) {
        double l0, l1;
        try {
            l0 = psi.eval_log(s);
            l1 = psi.eval_log(s + kLn2);
        } catch (const std::domain_error&) {
            break;
        }
        if (l0 > l_floor) {
            floor_reached = true;
            break;
        }
        const double d = l1 - l0;
        if (d >= d_last + accept_step) {
            w.x.push_back(std::exp(s));
            w.h.push_back(std::exp(-l0));
            w.c.push_back(std::exp(l0 - l1));
            d_last = d;
        }
        s += scan_step;
    }
    if (w.size() < 3 || (int(w.size()) < n_max && !floor_reached))
        throw std::runtime_error(
            "delta2_witness: scan exhausted; Psi(2x)/Psi(x) does not increase (Psi likely in Delta_2)");
    return w;
}

// ---------------------------------------------------------------------------
// constructions

OrliczFunction build_critere_orlicz(int n_max) {
    if (n_max < 3) throw std::invalid_argument("build_critere_orlicz: need n_max >= 3");
    if (n_max > 55) throw std::invalid_argument("build_critere_orlicz: n_max too large for doubles");
    std::vector<std::pair<double, double>> knots;
    knots.reserve(std::size_t(n_max));
    for (int k = 1; k <= n_max; ++k) {
        const double fk = factorial(k);
        knots.emplace_back(fk, fk * fk * fk);
    }
    OrliczFunction psi =
        OrliczFunction::piecewise(std::move(knots), OrliczFunction::Interp::affine_x);
    char buf[32];
    std::snprintf(buf, sizeof buf, "critere:%d", n_max);
    psi.spec_override_ = buf;

    // the Corollary's constraints; infeasibility here is a construction bug
    for (int k = 1; k < n_max; ++k) {
        const double fk = factorial(k);
        if (psi(3.0 * fk) < double(k) * fk * fk * fk * (1.0 - 1e-12))
            throw std::runtime_error("build_critere_orlicz: bump constraint violated");
    }
    for (double x = 1e-2; x <= 2.0 * factorial(n_max); x *= 1.5)
        if (psi(x) < x * x * x / 3.0 * (1.0 - 1e-12))
            throw std::runtime_error("build_critere_orlicz: cubic floor violated");
    return psi;
}

OrliczFunction build_dominating_orlicz(const CarlesonProfile& rho, int n_max) {
    if (n_max < 3) throw std::invalid_argument("build_dominating_orlicz: need n_max >= 3");
    for (double r : rho.rho)
        if (!(r > 0.0))
            throw std::runtime_error(
                "build_dominating_orlicz: rho vanishes on the grid (symbol has sup norm < 1)");
    std::vector<std::pair<double, double>> kn;  // (s, L)
    kn.emplace_back(kLn2, std::log(4.0));       // Psi(2) = 4 seed
    double prev_slope = 1.0;
    for (int n = 1; n < n_max; ++n) {
        const double l_n = kn.back().second;
        const double target = -profile_log_rho(rho, -l_n);  // log 1/rho(1/Psi(2^n))
        const double slope_floor = kn.back().second + (prev_slope + 0.05) * kLn2;
        const double l_next = std::max(target, slope_floor);
        kn.emplace_back(double(n + 1) * kLn2, l_next);
        prev_slope = (l_next - l_n) / kLn2;
    }
    OrliczFunction psi;
    psi.kind_ = OrliczFunction::Kind::piecewise;
    psi.interp_ = OrliczFunction::Interp::loglog_linear;
    psi.knots_ = kn;
    psi.floor_s_ = kn.front().first;
    psi.floor_x_ = 2.0;
    psi.post_slope_ = prev_slope;
    for (auto& [s, l] : kn)
        psi.knots_lin_.emplace_back(std::exp(s), l < 700.0 ? std::exp(l)
                                                           : std::numeric_limits<double>::infinity());
    char buf[32];
    std::snprintf(buf, sizeof buf, "dominating:%d", n_max);
    psi.spec_override_ = buf;
    // strict convexity in log-log
    double prev = 0.0;
    for (std::size_t i = 0; i + 1 < kn.size(); ++i) {
        const double m = (kn[i + 1].second - kn[i].second) / (kn[i + 1].first - kn[i].first);
        if (m <= prev) throw std::runtime_error("build_dominating_orlicz: slopes not strictly increasing");
        prev = m;
    }
    return psi;
}

}  // namespace holab
