#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "holab/symbols.hpp"

namespace holab {

// Boundary values of a symbol at n sample points of the circle.
struct BoundarySample {
    std::vector<double> arg;      // arg phi* in [0, 2 pi)
    std::vector<double> deficit;  // 1 - |phi*|
    std::uint64_t seed = 0;       // 0 = deterministic midpoint grid
    bool ae_strict = false;
    std::string symbol_spec;

    std::size_t size() const { return arg.size(); }
    // fraction of points with |phi*| >= 1 - 1e-12
    double near_boundary_fraction() const;
};

// Estimated Carleson function rho(h) = sup_xi m_phi[W(xi, h)] on a grid of
// window heights.
struct CarlesonProfile {
    std::vector<double> h;
    std::vector<double> rho;
    std::vector<double> stderr_;    // Poisson-CLT error of the window count
    std::vector<std::int64_t> n_centers;  // points eligible at each height
    std::uint64_t n_points = 0;
    double width_factor = 1.0;      // angular half-width = width_factor * h
    std::string symbol_spec;
};

// Synthetic profile from an exact law, for oracle tests and criteria checks.
CarlesonProfile synthetic_profile(std::span<const double> h_grid,
                                  const std::function<double(double)>& law,
                                  std::uint64_t n_points = 1u << 30);

// log rho interpolated at log_h; power-law extension below the grid, clamped
// above.
double profile_log_rho(const CarlesonProfile& p, double log_h);

// Empirical dyadic window masses m_phi(W_{n,j}), n = 1..depth, j = 0..2^n-1.
struct DyadicMeasure {
    int depth = 0;
    std::uint64_t n_points = 0;
    std::vector<std::vector<std::int64_t>> counts;  // counts[n-1][j]
    double mass(int n, int j) const { return double(counts[std::size_t(n - 1)][std::size_t(j)]) / double(n_points); }
    std::int64_t annulus_count(int n) const;  // points with deficit <= 2^-n
};

// n_points boundary evaluations; seed == 0 uses the deterministic midpoint
// grid t_i = 2 pi (i + 1/2) / n, anything else samples t uniformly.  Points
// inside a singular guard are resampled (grid mode never hits one).
BoundarySample sample_boundary(const Symbol& symbol, std::size_t n_points,
                               std::uint64_t seed = 0);

// Sliding-window supremum over data-driven centers: O(n log n) after the
// one-time sort.  h grid must stay above the resolution floor 10/n.
CarlesonProfile rho_profile(const BoundarySample& sample, std::span<const double> h_grid,
                            double width_factor = 1.0);

// Bootstrap standard errors for rho_profile (multinomial resampling of the
// sample); returns one stderr per grid height.
std::vector<double> bootstrap_stderr(const BoundarySample& sample,
                                     std::span<const double> h_grid, int n_boot,
                                     std::uint64_t seed, double width_factor = 1.0);

struct ExponentFit {
    double alpha = 0.0;
    double r2 = 0.0;
    std::size_t n_used = 0;
};

// Least-squares slope of log rho (+ theta log log 1/h) against log h over the
// usable points (rho above 10x the resolution floor).
ExponentFit fit_exponent(const CarlesonProfile& profile, double log_correction_theta = 0.0);

DyadicMeasure dyadic_measures(const BoundarySample& sample, int depth);

struct LueckingSums {
    double p = 2.0;
    std::vector<double> level_terms;   // T_n = sum_j 2^{np/2} m[n][j]^{p/2}
    std::vector<double> partial_sums;  // S_N
    std::vector<double> tail_ratios;   // T_n / T_{n-1}
    std::string verdict;               // converging / diverging / inconclusive
};

LueckingSums luecking_partial_sums(const DyadicMeasure& dm, double p);

// log-spaced grid helper
std::vector<double> log_spaced(double lo, double hi, std::size_t n);

}  // namespace holab
