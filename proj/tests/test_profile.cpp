#include <doctest.h>

#include <cmath>
#include <vector>

#include "holab/orlicz.hpp"
#include "holab/profile.hpp"

using namespace holab;

namespace {
constexpr double kPi = 3.14159265358979323846;

ProfileFunction sample_profile() {
    // geometric sequences standing in for witness data
    std::vector<double> h, c;
    double hv = 1.1, cv = 1.4;
    for (int n = 0; n < 12; ++n) {
        hv *= 0.42;
        cv *= 0.55;
        h.push_back(hv);
        c.push_back(cv);
    }
    return ProfileFunction(h, c);
}
}  // namespace

TEST_CASE("step integral reproduces h_n at every c_n exactly") {
    const auto p = sample_profile();
    const auto& c = p.c_knots();
    const auto& h = p.h_targets();
    for (std::size_t j = 1; j < c.size(); ++j)
        CHECK(p.step_integral(c[j]) == doctest::Approx(h[j]).epsilon(1e-13));
}

TEST_CASE("f(c_n) <= h_n and f vanishes to second order at 0") {
    const auto p = sample_profile();
    const auto& c = p.c_knots();
    const auto& h = p.h_targets();
    for (std::size_t j = 1; j < c.size(); ++j) CHECK(p.f(c[j]) <= h[j]);
    CHECK(p.f(0.0) == 0.0);
    CHECK(p.f_prime(0.0) == 0.0);
    CHECK(p.f_second(0.0) == 0.0);
}

TEST_CASE("f is strictly increasing on (0, pi]") {
    const auto p = sample_profile();
    double prev = 0.0;
    for (int i = 1; i <= 400; ++i) {
        const double t = kPi * double(i) / 400.0;
        const double v = p.f(t);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("f is C^2: finite differences agree with the closed-form f'' across knots") {
    const auto p = sample_profile();
    const auto& c = p.c_knots();
    for (std::size_t j = 1; j < c.size(); ++j) {
        const double t = c[j];
        const double d = 1e-5;
        const double fd2 = (p.f(t + d) - 2.0 * p.f(t) + p.f(t - d)) / (d * d);
        CHECK(std::fabs(fd2 - p.f_second(t)) <= 1e-6 * (1.0 + std::fabs(fd2)));
        // continuity of f'' across the knot
        CHECK(std::fabs(p.f_second(t + 1e-9) - p.f_second(t - 1e-9)) <= 1e-6);
    }
}

TEST_CASE("f_inverse inverts f on [0, f(pi)]") {
    const auto p = sample_profile();
    for (double y : {1e-8, 1e-5, 1e-3, 0.05, p.f(kPi) * 0.99})
        CHECK(p.f(p.f_inverse(y)) == doctest::Approx(y).epsilon(1e-10));
}

TEST_CASE("profile construction rejects non-monotone input") {
    std::vector<double> h{0.5, 0.6}, c{0.5, 0.2};
    CHECK_THROWS(ProfileFunction(h, c));
}

TEST_CASE("cosine analysis recovers a pure mode") {
    const auto fc = fourier_coefficients([](double t) { return std::cos(3.0 * t); }, 256);
    CHECK(fc.a[3] == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t k = 0; k < fc.a.size(); ++k)
        if (k != 3) CHECK(std::fabs(fc.a[k]) <= 1e-10);
}

TEST_CASE("Parseval on the profile coefficients") {
    const auto p = sample_profile();
    const std::size_t K = 512, N = 8 * K;
    const auto fc = fourier_coefficients(p, K);
    double lhs = fc.a[0] * fc.a[0];
    for (std::size_t k = 1; k <= K; ++k) lhs += 0.5 * fc.a[k] * fc.a[k];
    double rhs = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double v = p.f(2.0 * kPi * double(i) / double(N));
        rhs += v * v / double(N);
    }
    CHECK(std::fabs(lhs - rhs) <= 1e-8);
}

TEST_CASE("C^2 decay constant is stable across K = 512 and 1024") {
    const auto p = sample_profile();
    const double c1 = fourier_coefficients(p, 512).decay_constant;
    const double c2 = fourier_coefficients(p, 1024).decay_constant;
    CHECK(c1 / c2 > 0.25);
    CHECK(c1 / c2 < 4.0);
}

TEST_CASE("conjugate of cos(kt) is sin(kt)") {
    const auto fc = fourier_coefficients([](double t) { return std::cos(5.0 * t); }, 256);
    for (double t : {0.3, 1.1, 2.9, 4.0})
        CHECK(conjugate_series(fc.a, t) == doctest::Approx(std::sin(5.0 * t)).epsilon(1e-9));
}

TEST_CASE("conjugate of a constant vanishes") {
    const auto fc = fourier_coefficients([](double) { return 0.7; }, 256);
    for (double t : {0.1, 1.0, 3.0}) CHECK(std::fabs(conjugate_series(fc.a, t)) <= 1e-10);
}

TEST_CASE("conjugate involution: H(Hf) = -(f - a0) as a series identity") {
    const auto p = sample_profile();
    const std::size_t K = 512, N = 8 * K;
    const auto fc = fourier_coefficients(p, K);
    // sine-analyze Hf sampled on the analysis grid
    std::vector<double> hf(N);
    for (std::size_t i = 0; i < N; ++i)
        hf[i] = conjugate_series(fc.a, 2.0 * kPi * double(i) / double(N));
    std::vector<double> b(K + 1, 0.0);
    for (std::size_t k = 1; k <= K; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < N; ++i) s += hf[i] * std::sin(double(k) * 2.0 * kPi * double(i) / double(N));
        b[k] = 2.0 * s / double(N);
    }
    // H(Hf)(t) = -sum b_k cos(kt) must equal -(f_K(t) - a0)
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double t = 2.0 * kPi * double(i) / 1000.0;
        double hh = 0.0;
        for (std::size_t k = 1; k <= K; ++k) hh -= b[k] * std::cos(double(k) * t);
        const double target = -(cosine_series(fc.a, t) - fc.a[0]);
        worst = std::max(worst, std::fabs(hh - target));
    }
    CHECK(worst <= 2.0 * fc.tail_bound + 1e-9);
    CHECK(worst <= 1e-6);  // series identity: exact up to roundoff
}

TEST_CASE("conjugate_on_grid agrees with direct summation") {
    const auto p = sample_profile();
    const auto fc = fourier_coefficients(p, 256);
    const std::size_t n = 2048;
    const auto grid = conjugate_on_grid(fc.a, n);
    for (std::size_t i = 0; i < n; i += 173) {
        const double t = 2.0 * kPi * (double(i) + 0.5) / double(n);
        CHECK(grid[i] == doctest::Approx(conjugate_series(fc.a, t)).epsilon(1e-9));
    }
}

TEST_CASE("(Hf)' diagnostic near zero is finite and small for profiles") {
    const auto p = sample_profile();
    const auto fc = fourier_coefficients(p, 512);
    const double d = conjugate_derivative_diagnostic(fc.a);
    CHECK(std::isfinite(d));
    CHECK(d < 10.0);  // t^2 (Hf)'(t) stays bounded near the origin
}
