#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "holab/orlicz.hpp"
#include "holab/profile.hpp"

namespace holab {

// Boundary point in polar form relative to the unit circle.
struct BoundaryValue {
    double deficit;  // 1 - |phi*|
    double arg;      // arg phi* in (-pi, pi]
};

// Conformal map D -> V_eps = {Re z > 0, |z| < eps} with g(1) = 0 and
// g'(1) = -eps/4: disk automorphism z -> -z, Cayley to the upper half plane,
// inverse Joukowski to the upper half disk, rotation by -i, scale by eps.
struct ConformalChain {
    double eps;
    std::complex<double> forward(std::complex<double> z) const;
    std::complex<double> inverse(std::complex<double> v) const;  // V_eps -> D
    std::complex<double> boundary(double t) const;               // g(e^{it})
};

// Analytic self-map of the disk, exposed through its boundary values.
class Symbol {
  public:
    enum class Kind { identity, constant, lens, phi_theta, general, outer };

    static Symbol identity();
    static Symbol constant(std::complex<double> c);
    static Symbol lens(double eps = 0.25);
    static Symbol phi_theta(double theta, double eps = 0.0);  // eps 0 -> e^{-2 theta}
    // general construction phi = M * Phi driven by a profile function; K is
    // the conjugate-series truncation
    static Symbol general(ProfileFunction profile, std::size_t K = 4096);
    // outer function with |phi*| = 1 - 1/(Psi o a) on an n-point boundary grid
    static Symbol outer(std::vector<double> a_samples, const OrliczFunction& psi);

    Kind kind() const { return kind_; }
    double theta() const { return theta_; }
    double eps() const { return eps_; }

    // phi*(e^{it}); throws domain_error inside the singular guard of the
    // general construction (|t mod 2pi| < 1e-12)
    std::complex<double> boundary(double t) const;
    BoundaryValue boundary_polar(double t) const;

    // interior evaluation; drops to the boundary grid quadrature for outer
    std::complex<double> interior(std::complex<double> z) const;

    // |phi*| < 1 a.e. (false for identity / unimodular constants)
    bool ae_strict() const;

    // half-width of the excluded neighborhood around singular boundary points
    double singular_guard() const { return kind_ == Kind::general ? 1e-12 : 0.0; }

    const ProfileFunction* profile() const { return profile_.get(); }
    const FourierCoefficients& coefficients() const { return coeffs_; }
    const ConformalChain& chain() const { return chain_; }

    // sup |phi*| over the stored boundary sample (outer symbols); equals 1
    // exactly when the driving function a is unbounded on the sample
    double outer_sup_modulus() const { return outer_sup_; }

    std::string spec_string() const { return spec_; }

  private:
    Symbol() = default;
    Kind kind_ = Kind::identity;
    std::complex<double> const_ = 0.0;
    double theta_ = 0.0;
    double eps_ = 0.0;
    ConformalChain chain_{0.25};
    std::shared_ptr<const ProfileFunction> profile_;
    FourierCoefficients coeffs_;
    // outer data
    std::vector<double> outer_log_h_;   // log h on the grid
    std::vector<double> outer_arg_;     // conjugate of log h on the grid
    double outer_sup_ = 0.0;            // sup |phi*| over the sample
    std::string spec_;
};

}  // namespace holab
