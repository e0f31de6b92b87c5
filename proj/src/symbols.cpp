#include "holab/symbols.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "holab/fft.hpp"

namespace holab {

namespace {

constexpr double kPi = 3.14159265358979323846;
using cd = std::complex<double>;

double wrap_pi(double a) {  // into (-pi, pi]
    double w = std::remainder(a, 2.0 * kPi);
    if (w <= -kPi) w += 2.0 * kPi;
    return w;
}

// z (-log z)^theta on {Re z > 0, |z| < 1}, principal branches
cd f_theta_map(cd v, double theta) {
    if (v == cd(0.0, 0.0)) return 0.0;
    const cd w = -std::log(v);  // Re w = -log|v| > 0
    return v * std::exp(theta * std::log(w));
}

}  // namespace

// ---------------------------------------------------------------------------
// conformal chain

std::complex<double> ConformalChain::forward(std::complex<double> z) const {
    const cd z2 = -z;
    const cd den = 1.0 + z2;  // = 1 - z
    if (std::abs(den) < 1e-140) {
        // z hugging 1: u blows up and v = -1/(2u), so g = eps (1-z) / (2 (1+z))
        return eps * den / (2.0 * (1.0 + z));
    }
    const cd u = cd(0.0, 1.0) * (1.0 - z2) / den;
    cd v;
    if (std::abs(u) > 1e8) {
        v = -0.5 / u;
    } else {
        const cd sq = std::sqrt(u * u - 1.0);
        const cd r1 = -u + sq, r2 = -u - sq;
        const cd big = (std::abs(r1) > std::abs(r2)) ? r1 : r2;
        v = 1.0 / big;  // roots multiply to 1; take the one inside the disk
    }
    return cd(0.0, -1.0) * eps * v;
}

std::complex<double> ConformalChain::inverse(std::complex<double> g) const {
    const cd v = cd(0.0, 1.0) * g / eps;
    const cd u = -0.5 * (v + 1.0 / v);
    const cd z2 = (cd(0.0, 1.0) - u) / (cd(0.0, 1.0) + u);
    return -z2;
}

std::complex<double> ConformalChain::boundary(double t) const {
    const double half = 0.5 * std::fabs(std::remainder(t, 2.0 * kPi));
    if (half == 0.0) return 0.0;
    const double sgn = (std::remainder(t, 2.0 * kPi) >= 0.0) ? 1.0 : -1.0;
    const double x = -sgn / std::tan(half);  // +t and -t mirror across the real axis
    cd v;
    if (std::fabs(x) >= 1e150) {
        v = cd((x < 0.0 ? 0.5 : -0.5) / std::fabs(x), 0.0);
    } else if (std::fabs(x) >= 1.0) {
        const double s = std::fabs(x) + std::sqrt(x * x - 1.0);
        v = cd(x <= -1.0 ? 1.0 / s : -1.0 / s, 0.0);
    } else {
        v = cd(-x, std::sqrt(1.0 - x * x));
    }
    return cd(0.0, -1.0) * eps * v;
}

// ---------------------------------------------------------------------------
// constructors

Symbol Symbol::identity() {
    Symbol s;
    s.kind_ = Kind::identity;
    s.spec_ = "identity";
    return s;
}

Symbol Symbol::constant(std::complex<double> c) {
    if (std::abs(c) > 1.0) throw std::invalid_argument("constant symbol must map into the disk");
    Symbol s;
    s.kind_ = Kind::constant;
    s.const_ = c;
    char buf[64];
    std::snprintf(buf, sizeof buf, "const:%g%+gi", c.real(), c.imag());
    s.spec_ = buf;
    return s;
}

Symbol Symbol::lens(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("lens: need 0 < eps < 1");
    Symbol s;
    s.kind_ = Kind::lens;
    s.eps_ = eps;
    s.chain_ = ConformalChain{eps};
    s.spec_ = "lens";
    return s;
}

Symbol Symbol::phi_theta(double theta, double eps) {
    if (!(theta > 0.0)) throw std::invalid_argument("phi_theta: need theta > 0");
    const double eps_max = std::exp(-2.0 * theta);
    if (eps == 0.0) eps = eps_max;
    if (!(eps > 0.0 && eps <= eps_max))
        throw std::invalid_argument("phi_theta: need 0 < eps <= e^{-2 theta} so Re f_theta > 0");
    Symbol s;
    s.kind_ = Kind::phi_theta;
    s.theta_ = theta;
    s.eps_ = eps;
    s.chain_ = ConformalChain{eps};
    char buf[48];
    std::snprintf(buf, sizeof buf, "phi-theta:%g", theta);
    s.spec_ = buf;
    return s;
}

Symbol Symbol::general(ProfileFunction profile, std::size_t K) {
    Symbol s;
    s.kind_ = Kind::general;
    s.profile_ = std::make_shared<ProfileFunction>(std::move(profile));
    s.coeffs_ = fourier_coefficients(*s.profile_, K);
    s.spec_ = "general";
    return s;
}

Symbol Symbol::outer(std::vector<double> a_samples, const OrliczFunction& psi) {
    const std::size_t n = a_samples.size();
    if (n < 256 || (n & (n - 1)) != 0)
        throw std::invalid_argument("outer: need a power-of-two sample count >= 256");
    Symbol s;
    s.kind_ = Kind::outer;
    const double l2 = std::log(2.0);
    s.outer_log_h_.resize(n);
    double sup_lh = -1e300;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(a_samples[i] > 0.0)) throw std::invalid_argument("outer: a must be positive");
        const double li = psi.eval_log(std::log(a_samples[i]));
        if (li < l2 - 1e-12)
            throw std::invalid_argument("outer: need a >= Psi^{-1}(2) pointwise so log h is integrable");
        s.outer_log_h_[i] = std::log1p(-std::exp(-li));  // log(1 - 1/Psi(a))
        sup_lh = std::max(sup_lh, s.outer_log_h_[i]);
    }
    s.outer_sup_ = std::exp(sup_lh);
    // Morse-Transue proxy: mean of Psi(A a) should stay finite for a grid of A
    bool integrable = true;
    for (double A : {2.0, 4.0, 8.0}) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double v;
            try {
                v = std::exp(psi.eval_log(std::log(A) + std::log(a_samples[i])));
            } catch (const std::domain_error&) {
                v = std::numeric_limits<double>::infinity();
            }
            mean += v / double(n);
        }
        if (!std::isfinite(mean)) integrable = false;
    }
    if (!integrable)
        std::fputs("outer: warning: Psi(A a) mean not finite on the sample (Morse-Transue proxy)\n",
                   stderr);
    // arg phi* = conjugate function of log h, via the discrete Hilbert multiplier
    std::vector<cplx> buf(n);
    for (std::size_t i = 0; i < n; ++i) buf[i] = cplx(s.outer_log_h_[i], 0.0);
    fft(buf, -1);
    for (std::size_t k = 1; k < n; ++k) {
        if (k < n / 2)
            buf[k] *= cplx(0.0, -1.0);
        else if (k > n / 2)
            buf[k] *= cplx(0.0, 1.0);
        else
            buf[k] = 0.0;
    }
    buf[0] = 0.0;
    fft(buf, +1);
    s.outer_arg_.resize(n);
    for (std::size_t i = 0; i < n; ++i) s.outer_arg_[i] = buf[i].real() / double(n);
    s.spec_ = "outer";
    return s;
}

// ---------------------------------------------------------------------------
// evaluation

bool Symbol::ae_strict() const {
    switch (kind_) {
        case Kind::identity: return false;
        case Kind::constant: return std::abs(const_) < 1.0;
        default: return true;
    }
}

BoundaryValue Symbol::boundary_polar(double t) const {
    switch (kind_) {
        case Kind::identity: return {0.0, wrap_pi(t)};
        case Kind::constant: return {1.0 - std::abs(const_), std::arg(const_)};
        case Kind::lens: {
            const cd w = std::sqrt(chain_.boundary(t));
            return {-std::expm1(-w.real()), wrap_pi(-w.imag())};
        }
        case Kind::phi_theta: {
            const cd w = f_theta_map(chain_.boundary(t), theta_);
            return {-std::expm1(-w.real()), wrap_pi(-w.imag())};
        }
        case Kind::general: {
            const double tf = std::remainder(t, 2.0 * kPi);
            if (std::fabs(tf) < 1e-12)
                throw std::domain_error("general symbol: boundary singularity at t = 0");
            const double cot = 1.0 / std::tan(0.5 * tf);
            const double hf = conjugate_series(coeffs_.a, tf);
            return {-std::expm1(-profile_->f(tf)), wrap_pi(-cot - hf)};
        }
        case Kind::outer: {
            double w = std::remainder(t, 2.0 * kPi);
            if (w < 0.0) w += 2.0 * kPi;
            const std::size_t n = outer_log_h_.size();
            std::size_t j = std::size_t(w / (2.0 * kPi) * double(n));
            if (j >= n) j = n - 1;
            return {-std::expm1(outer_log_h_[j]), wrap_pi(outer_arg_[j])};
        }
    }
    throw std::logic_error("boundary_polar: bad kind");
}

std::complex<double> Symbol::boundary(double t) const {
    switch (kind_) {
        case Kind::identity: return std::polar(1.0, t);
        case Kind::constant: return const_;
        case Kind::lens: return std::exp(-std::sqrt(chain_.boundary(t)));
        case Kind::phi_theta: return std::exp(-f_theta_map(chain_.boundary(t), theta_));
        case Kind::general: {
            const double tf = std::remainder(t, 2.0 * kPi);
            if (std::fabs(tf) < 1e-12)
                throw std::domain_error("general symbol: boundary singularity at t = 0");
            const double cot = 1.0 / std::tan(0.5 * tf);
            const cd m = std::exp(cd(0.0, -cot));
            const cd phi = std::exp(cd(-profile_->f(tf), -conjugate_series(coeffs_.a, tf)));
            return m * phi;
        }
        case Kind::outer: {
            const BoundaryValue bv = boundary_polar(t);
            return std::polar(1.0 - bv.deficit, bv.arg);
        }
    }
    throw std::logic_error("boundary: bad kind");
}

std::complex<double> Symbol::interior(std::complex<double> z) const {
    if (std::abs(z) >= 1.0) throw std::domain_error("interior: need |z| < 1");
    switch (kind_) {
        case Kind::identity: return z;
        case Kind::constant: return const_;
        case Kind::lens: return std::exp(-std::sqrt(chain_.forward(z)));
        case Kind::phi_theta: return std::exp(-f_theta_map(chain_.forward(z), theta_));
        case Kind::general: {
            // F(z) = sum a_k z^k, Horner
            const auto& a = coeffs_.a;
            cd F = 0.0;
            for (std::size_t k = a.size(); k-- > 0;) F = F * z + a[k];
            const cd M = std::exp(-(1.0 + z) / (1.0 - z));
            return M * std::exp(-F);
        }
        case Kind::outer: {
            const std::size_t n = outer_log_h_.size();
            cd acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const cd u = std::polar(1.0, 2.0 * kPi * (double(j) + 0.5) / double(n));
                acc += (u + z) / (u - z) * outer_log_h_[j];
            }
            return std::exp(acc / double(n));
        }
    }
    throw std::logic_error("interior: bad kind");
}

}  // namespace holab
