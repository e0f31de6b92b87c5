#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace holab {

// Even 2*pi-periodic C^2 profile f built from decreasing sequences (h_n), (c_n):
// a step function phi with int_0^{c_n} phi = h_n is pushed through
// f(t) = (1/pi^3) int_0^t (t-u)^3 phi(u) du, giving f(0) = f'(0) = f''(0) = 0,
// f strictly increasing on (0, pi] and f(c_n) <= h_n.
class ProfileFunction {
  public:
    // sequences strictly decreasing, 0 < h_n < pi, 0 < c_n < pi; (pi, pi) is
    // prepended internally
    ProfileFunction(std::span<const double> h, std::span<const double> c);

    double f(double t) const;        // even-periodic evaluation
    double f_prime(double t) const;  // on [0, pi], even-periodic |.|
    double f_second(double t) const;
    double f_inverse(double y) const;  // inverse on [0, f(pi)]

    // step function value at u in (0, pi]
    double step(double u) const;

    // c_j (descending, starting at pi) and matching h_j
    const std::vector<double>& c_knots() const { return c_; }
    const std::vector<double>& h_targets() const { return h_; }

    // closed-form int_0^t step(u) du  (telescopes to h_n at t = c_n)
    double step_integral(double t) const;

  private:
    double fold(double t) const;  // into [0, pi]
    std::vector<double> c_;       // descending: pi = c_0 > c_1 > ... > c_N
    std::vector<double> h_;       // matching h values
    std::vector<double> lo_, hi_, v_;  // ascending segments (lo, hi] with step value v
};

struct FourierCoefficients {
    std::vector<double> a;     // a_0 .. a_K cosine coefficients
    double tail_bound = 0.0;   // estimated sum_{k>K} |a_k| from the C^2 decay
    double near_origin_tail = 0.0;  // two-resolution estimate of the conjugate
                                    // truncation error away from the seam
    double decay_constant = 0.0;    // fitted C with |a_k| <= C / k^2
};

// Discrete cosine analysis of f on an 8K-point grid; K a power of two >= 256.
FourierCoefficients fourier_coefficients(const ProfileFunction& f, std::size_t K);
FourierCoefficients fourier_coefficients(const std::function<double(double)>& f, std::size_t K);

// Hf(t) = sum_k a_k sin(k t), Clenshaw-evaluated (truncation error <= tail bound).
double conjugate_series(std::span<const double> a, double t);

// cos-series evaluation from the same coefficients (the K-truncated f).
double cosine_series(std::span<const double> a, double t);

// Conjugate values on the uniform midpoint grid t_i = 2 pi (i + 1/2) / n via a
// single FFT; n a power of two with n >= 2 (K+1).
std::vector<double> conjugate_on_grid(std::span<const double> a, std::size_t n);

// max |t^2 (Hf)'(t)| near 0 by finite differences; diagnostic for the
// o(1/t^2) hypothesis, reported but never enforced.
double conjugate_derivative_diagnostic(std::span<const double> a, double t_max = 0.3);

}  // namespace holab
