#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "holab/trend.hpp"

namespace holab {

struct CarlesonProfile;  // carleson.hpp

// Evaluable convex growth function.  All real work happens in log-domain:
// L(s) = log Psi(e^s), which stays finite for every family up to s ~ 700
// while Psi itself leaves double range almost immediately.
class OrliczFunction {
  public:
    enum class Kind {
        power,            // x^p
        exp_power,        // e^{x^a} - 1
        exp_log_power,    // e^{(log(x+1))^a} - 1
        exp_x,            // e^x - 1
        log_exp_loglog,   // x^{log log x}
        log_exp_lll,      // x^{log log log x}
        explicit_product, // exp(log x * log log log x)  (same values as log_exp_lll)
        piecewise,        // knot-interpolated convex function
    };

    // How piecewise knots are joined.  loglog_linear gives power segments
    // (slopes nondecreasing in log-log, i.e. kappa convex); affine_x gives
    // straight chords in x-space, convex in x but with oscillating kappa.
    enum class Interp { loglog_linear, affine_x };

    static OrliczFunction power(double p);
    static OrliczFunction exp_power(double alpha);
    static OrliczFunction exp_log_power(double alpha);
    static OrliczFunction exp_x();
    static OrliczFunction loglog();
    static OrliczFunction logloglog();
    static OrliczFunction explicit_product();
    // knots: strictly increasing (x, Psi(x)) pairs, all positive
    static OrliczFunction piecewise(std::vector<std::pair<double, double>> knots,
                                    Interp interp = Interp::loglog_linear);

    // L(s) = log Psi(e^s); defined for all finite s (piecewise families extend
    // below the first knot linearly through the origin, above the last knot by
    // the final log-log chord slope).
    double eval_log(double s) const;

    // Psi(x); may overflow to +inf for large x, by design.
    double operator()(double x) const;

    // s with L(s) = log_y, by monotone bisection.  |L(s) - log_y| <= 1e-12.
    double inverse_log(double log_y) const;
    // x with Psi(x) = y
    double inverse(double y) const;

    // x below which Psi is the linear/chord extension (0 when the family is
    // globally defined).
    double domain_floor() const { return floor_x_; }

    Kind kind() const { return kind_; }
    const std::vector<std::pair<double, double>>& knots_log() const { return knots_; }

    // mini-grammar spec string, round-trips through parse_orlicz_spec
    std::string spec() const;

  private:
    friend OrliczFunction build_critere_orlicz(int n_max);
    friend OrliczFunction build_dominating_orlicz(const CarlesonProfile& rho, int n_max);
    OrliczFunction() = default;
    double raw_log(double s) const;  // L above the floor

    Kind kind_ = Kind::power;
    double param_ = 2.0;
    double floor_s_ = -1e300;  // log(domain_floor), -inf marker
    double floor_x_ = 0.0;
    Interp interp_ = Interp::loglog_linear;
    std::vector<std::pair<double, double>> knots_;       // (s_i, L_i)
    std::vector<std::pair<double, double>> knots_lin_;   // (x_i, y_i), affine mode
    double post_slope_ = 1.0;                            // log-log slope past last knot
    std::string spec_override_;
};

enum class Condition {
    delta2,           // Psi(2x) <= C Psi(x) for large x
    delta_sup2,       // [Psi(x)]^2 <= Psi(Ax) for large x   (liminf restatement)
    delta_sup1,       // x Psi(x) <= Psi(Ax) for large x, some A
    nabla0,           // kappa(s) = log Psi(e^s) convex for large s
    slow_growth,      // Psi(Ax) = O(Psi(x) (log Psi(x))^eps)
    theta_condition,  // Psi(Au) = o(Psi(u) [log Psi(u)]^theta) for every A
    dominated_by,     // Psi(2^{n+1}) * rho(1/Psi(2^n)) >= 1 on dyadic knots
};

struct ConditionSpec {
    Condition kind = Condition::delta2;
    double A = 2.0;        // delta_sup2 / delta_sup1 grid base / theta_condition grid base
    double eps = 0.5;      // slow_growth exponent
    double theta = 1.0;    // theta_condition exponent
    const CarlesonProfile* profile = nullptr;  // dominated_by

    std::string name() const;
};

struct WitnessSequence {
    std::vector<double> x;  // increasing
    std::vector<double> h;  // h_n = 1/Psi(x_n), decreasing
    std::vector<double> c;  // c_n = Psi(x_n)/Psi(2x_n), decreasing
    std::size_t size() const { return x.size(); }
};

struct GrowthVerdict {
    ConditionSpec condition;
    Tristate holds = Tristate::inconclusive;
    // (s, ratio) samples in log-domain backing the verdict
    std::vector<std::pair<double, double>> fitted;
    std::optional<WitnessSequence> witness;
    double grid_lo = 0.0, grid_hi = 0.0;  // x-range the verdict was decided on;
                                          // no "x large enough" threshold is
                                          // asserted beyond it
    double witness_param = 0.0;           // A that decided the verdict, if any
    std::string note;
};

// Log-spaced evaluation grid adapted to the family: capped so |L| stays well
// inside double precision for the condition ratios.
std::vector<double> default_condition_grid(const OrliczFunction& psi, int n_points = 64);

// Decide a growth condition on the given grid of s = log x values.
GrowthVerdict check_condition(const OrliczFunction& psi, const ConditionSpec& cond,
                              std::span<const double> s_grid);

GrowthVerdict check_condition(const OrliczFunction& psi, const ConditionSpec& cond);

// Greedy witness extraction for Psi outside Delta_2: x_n increasing with
// Psi(2x_n)/Psi(x_n) strictly increasing; stops at n_max witnesses or once
// h_n would drop below h_floor.
WitnessSequence delta2_witness(const OrliczFunction& psi, int n_max,
                               double h_floor = 1e-9, double accept_step = 0.35);

// Piecewise convex function through (n!, (n!)^3) with straight chords in
// x-space; x^3 tails on both sides.  Satisfies Psi >= x^3/3 everywhere,
// Psi(n!) = (n!)^3 at the knots and Psi(3 k!) >= k (k!)^3 for k < n_max.
OrliczFunction build_critere_orlicz(int n_max);

// Piecewise convex function with knots at x = 2^n driven by the recurrence
// Psi(2^{n+1}) >= 1 / rho(1 / Psi(2^n)); rho extended below its grid by the
// fitted power law.
OrliczFunction build_dominating_orlicz(const CarlesonProfile& rho, int n_max);

}  // namespace holab
