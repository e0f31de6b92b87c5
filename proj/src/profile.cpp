#include "holab/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "holab/fft.hpp"

namespace holab {

namespace {
constexpr double kPi = 3.14159265358979323846;
const double kPi3 = kPi * kPi * kPi;
}  // namespace

ProfileFunction::ProfileFunction(std::span<const double> h, std::span<const double> c) {
    if (h.size() != c.size() || h.empty())
        throw std::invalid_argument("ProfileFunction: need matching nonempty sequences");
    c_.push_back(kPi);
    h_.push_back(kPi);
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (!(h[i] > 0.0) || !(c[i] > 0.0) || h[i] >= h_.back() || c[i] >= c_.back())
            throw std::invalid_argument("ProfileFunction: sequences must decrease strictly in (0, pi)");
        c_.push_back(c[i]);
        h_.push_back(h[i]);
    }
    // segments, ascending: (0, c_N] gets the constant h_N/c_N so that
    // int_0^{c_n} phi = h_n keeps telescoping exactly
    lo_.push_back(0.0);
    hi_.push_back(c_.back());
    v_.push_back(h_.back() / c_.back());
    for (std::size_t j = c_.size() - 1; j-- > 0;) {
        lo_.push_back(c_[j + 1]);
        hi_.push_back(c_[j]);
        v_.push_back((h_[j] - h_[j + 1]) / (c_[j] - c_[j + 1]));
    }
}

double ProfileFunction::fold(double t) const {
    return std::fabs(std::remainder(t, 2.0 * kPi));
}

double ProfileFunction::f(double t) const {
    const double x = fold(t);
    double acc = 0.0;
    for (std::size_t i = 0; i < v_.size() && lo_[i] < x; ++i) {
        const double d1 = x - lo_[i];
        const double d0 = x - std::min(hi_[i], x);
        const double q1 = d1 * d1 * d1 * d1;
        const double q0 = d0 * d0 * d0 * d0;
        acc += v_[i] * (q1 - q0);
    }
    return acc / (4.0 * kPi3);
}

double ProfileFunction::f_prime(double t) const {
    const double x = fold(t);
    double acc = 0.0;
    for (std::size_t i = 0; i < v_.size() && lo_[i] < x; ++i) {
        const double d1 = x - lo_[i];
        const double d0 = x - std::min(hi_[i], x);
        acc += v_[i] * (d1 * d1 * d1 - d0 * d0 * d0);
    }
    return acc / kPi3;
}

double ProfileFunction::f_second(double t) const {
    const double x = fold(t);
    double acc = 0.0;
    for (std::size_t i = 0; i < v_.size() && lo_[i] < x; ++i) {
        const double d1 = x - lo_[i];
        const double d0 = x - std::min(hi_[i], x);
        acc += v_[i] * (d1 * d1 - d0 * d0);
    }
    return 3.0 * acc / kPi3;
}

double ProfileFunction::step(double u) const {
    if (!(u > 0.0) || u > kPi) throw std::domain_error("step: u must be in (0, pi]");
    auto it = std::lower_bound(hi_.begin(), hi_.end(), u);
    return v_[std::size_t(it - hi_.begin())];
}

double ProfileFunction::step_integral(double t) const {
    const double x = fold(t);
    double acc = 0.0;
    for (std::size_t i = 0; i < v_.size() && lo_[i] < x; ++i)
        acc += v_[i] * (std::min(hi_[i], x) - lo_[i]);
    return acc;
}

double ProfileFunction::f_inverse(double y) const {
    if (y < 0.0 || y > f(kPi)) throw std::domain_error("f_inverse: out of range");
    double lo = 0.0, hi = kPi;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < y ? lo : hi) = mid;
        if (hi - lo < 1e-17) break;
    }
    return 0.5 * (lo + hi);
}

FourierCoefficients fourier_coefficients(const ProfileFunction& f, std::size_t K) {
    return fourier_coefficients([&f](double t) { return f.f(t); }, K);
}

FourierCoefficients fourier_coefficients(const std::function<double(double)>& f, std::size_t K) {
    if (K < 256 || (K & (K - 1)) != 0)
        throw std::invalid_argument("fourier_coefficients: K must be a power of two >= 256");
    const std::size_t N = 8 * K;
    std::vector<cplx> buf(N);
    for (std::size_t i = 0; i < N; ++i)
        buf[i] = cplx(f(2.0 * kPi * double(i) / double(N)), 0.0);
    fft(buf, -1);
    FourierCoefficients out;
    out.a.resize(K + 1);
    out.a[0] = buf[0].real() / double(N);
    for (std::size_t k = 1; k <= K; ++k) out.a[k] = 2.0 * buf[k].real() / double(N);

    // C^2 decay: fit C with |a_k| <= C k^2 over the top octave
    double c_fit = 0.0;
    for (std::size_t k = K / 2 + 1; k <= K; ++k)
        c_fit = std::max(c_fit, std::fabs(out.a[k]) * double(k) * double(k));
    out.decay_constant = c_fit;
    out.tail_bound = c_fit / double(K);

    // two-resolution estimate of the conjugate truncation away from the seam:
    // the top-octave contribution to Hf on (0, 1]
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double t = 1e-4 * std::pow(1e4, double(i) / 199.0);
        double s = 0.0;
        for (std::size_t k = K / 2 + 1; k <= K; ++k) s += out.a[k] * std::sin(double(k) * t);
        worst = std::max(worst, std::fabs(s));
    }
    out.near_origin_tail = worst;
    return out;
}

double conjugate_series(std::span<const double> a, double t) {
    double s = 0.0;
    for (std::size_t k = 1; k < a.size(); ++k) s += a[k] * std::sin(double(k) * t);
    return s;
}

double cosine_series(std::span<const double> a, double t) {
    double s = a.empty() ? 0.0 : a[0];
    for (std::size_t k = 1; k < a.size(); ++k) s += a[k] * std::cos(double(k) * t);
    return s;
}

std::vector<double> conjugate_on_grid(std::span<const double> a, std::size_t n) {
    if (n == 0 || (n & (n - 1)) != 0 || n < 2 * a.size())
        throw std::invalid_argument("conjugate_on_grid: n must be a power of two >= 2(K+1)");
    std::vector<cplx> buf(n, cplx(0.0, 0.0));
    for (std::size_t k = 1; k < a.size(); ++k) {
        const double ph = kPi * double(k) / double(n);  // midpoint-grid twist
        buf[k] = a[k] * cplx(std::cos(ph), std::sin(ph));
    }
    fft(buf, +1);
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = buf[j].imag();
    return out;
}

double conjugate_derivative_diagnostic(std::span<const double> a, double t_max) {
    double worst = 0.0;
    for (int i = 0; i < 160; ++i) {
        const double t = 1e-3 * std::pow(t_max / 1e-3, double(i) / 159.0);
        double d = 0.0;
        for (std::size_t k = 1; k < a.size(); ++k) d += double(k) * a[k] * std::cos(double(k) * t);
        worst = std::max(worst, std::fabs(t * t * d));
    }
    return worst;
}

}  // namespace holab
