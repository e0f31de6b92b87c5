#include <doctest.h>

#include <cmath>
#include <vector>

#include "holab/carleson.hpp"
#include "holab/orlicz.hpp"
#include "holab/rng.hpp"
#include "holab/symbols.hpp"

using namespace holab;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("sample_boundary: identity lands on the circle at the grid angles") {
    const auto s = sample_boundary(Symbol::identity(), 1 << 14);
    for (std::size_t i = 0; i < s.size(); i += 997) {
        CHECK(s.deficit[i] == 0.0);
        CHECK(s.arg[i] == doctest::Approx(2.0 * kPi * (double(i) + 0.5) / double(s.size())));
    }
}

TEST_CASE("sample_boundary: constant symbol collapses to one point") {
    const auto s = sample_boundary(Symbol::constant({0.3, 0.4}), 1 << 14);
    for (std::size_t i = 0; i < s.size(); i += 991) {
        CHECK(s.deficit[i] == doctest::Approx(0.5));
        CHECK(s.arg[i] == doctest::Approx(std::atan2(0.4, 0.3)));
    }
}

TEST_CASE("sample_boundary: identical seeds give identical samples") {
    const auto a = sample_boundary(Symbol::lens(), 1 << 14, 42);
    const auto b = sample_boundary(Symbol::lens(), 1 << 14, 42);
    CHECK(a.arg == b.arg);
    CHECK(a.deficit == b.deficit);
    const auto c = sample_boundary(Symbol::lens(), 1 << 14, 43);
    CHECK(a.arg != c.arg);
}

TEST_CASE("sample_boundary rejects tiny samples") {
    CHECK_THROWS(sample_boundary(Symbol::identity(), 100));
}

TEST_CASE("near-boundary fraction is tiny for strictly contracting symbols") {
    CHECK(sample_boundary(Symbol::lens(), 1 << 16).near_boundary_fraction() <= 1e-3);
    CHECK(sample_boundary(Symbol::phi_theta(2.0), 1 << 16).near_boundary_fraction() <= 1e-3);
}

TEST_CASE("rho of the identity is h/pi within 2 percent") {
    const auto s = sample_boundary(Symbol::identity(), 1 << 20);
    const auto grid = log_spaced(1e-3, 0.3, 20);
    const auto p = rho_profile(s, grid);
    for (std::size_t i = 0; i < p.h.size(); ++i)
        CHECK(p.rho[i] == doctest::Approx(p.h[i] / kPi).epsilon(0.02));
}

TEST_CASE("rho of the constant 0 vanishes for every h < 1") {
    const auto s = sample_boundary(Symbol::constant({0.0, 0.0}), 1 << 14);
    const auto grid = log_spaced(0.01, 0.9, 12);
    const auto p = rho_profile(s, grid);
    for (double r : p.rho) CHECK(r == 0.0);
}

TEST_CASE("rho is nondecreasing in h") {
    const auto s = sample_boundary(Symbol::lens(), 1 << 18);
    const auto grid = log_spaced(1e-3, 0.5, 24);
    const auto p = rho_profile(s, grid);
    for (std::size_t i = 1; i < p.rho.size(); ++i) CHECK(p.rho[i] >= p.rho[i - 1]);
}

TEST_CASE("refined grid agrees with the coarse grid at shared heights") {
    const auto s = sample_boundary(Symbol::lens(), 1 << 18);
    const auto fine = log_spaced(1e-3, 0.5, 21);
    std::vector<double> coarse;
    for (std::size_t i = 0; i < fine.size(); i += 2) coarse.push_back(fine[i]);
    const auto pf = rho_profile(s, fine);
    const auto pc = rho_profile(s, coarse);
    for (std::size_t i = 0; i < coarse.size(); ++i)
        CHECK(std::fabs(pc.rho[i] - pf.rho[2 * i]) <= 3.0 * pf.stderr_[2 * i] + 1e-15);
}

TEST_CASE("distorted windows: doubling the width scales rho by a factor in [1, 3]") {
    const auto s = sample_boundary(Symbol::identity(), 1 << 18);
    const auto grid = log_spaced(1e-3, 0.1, 10);
    const auto p1 = rho_profile(s, grid, 1.0);
    const auto p2 = rho_profile(s, grid, 2.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double ratio = p2.rho[i] / p1.rho[i];
        CHECK(ratio >= 1.0);
        CHECK(ratio <= 3.0);
    }
}

TEST_CASE("rho approaches full mass as h -> 1 for bounded-argument symbols") {
    // lens and phi_theta keep |arg phi*| well below 1, so one window of
    // half-width ~1 eventually captures everything
    for (const Symbol& sym : {Symbol::lens(), Symbol::phi_theta(2.0), Symbol::constant({0.4, 0.2})}) {
        const auto s = sample_boundary(sym, 1 << 14);
        const std::vector<double> grid{0.999};
        CHECK(rho_profile(s, grid).rho[0] == 1.0);
    }
}

TEST_CASE("rho_profile enforces the resolution floor") {
    const auto s = sample_boundary(Symbol::identity(), 1 << 14);
    std::vector<double> bad{1e-5, 0.1};
    CHECK_THROWS(rho_profile(s, bad));
}

TEST_CASE("bootstrap stderr shrinks like n^{-1/2} within a factor 2") {
    const auto s18 = sample_boundary(Symbol::identity(), 1 << 18);
    const auto s20 = sample_boundary(Symbol::identity(), 1 << 20);
    const std::vector<double> grid{0.01, 0.05, 0.2};
    const auto e18 = bootstrap_stderr(s18, grid, 12, 77);
    const auto e20 = bootstrap_stderr(s20, grid, 12, 77);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double shrink = e18[i] / e20[i];  // ideal: 2
        CHECK(shrink > 1.0);
        CHECK(shrink < 4.0);
    }
}

TEST_CASE("dyadic masses: row sums equal direct annulus counts, nesting exact") {
    const auto s = sample_boundary(Symbol::lens(), 1 << 18);
    const auto dm = dyadic_measures(s, 9);
    for (int n = 1; n <= dm.depth; ++n) {
        std::int64_t direct = 0;
        const double lvl = std::pow(2.0, -n);
        for (double d : s.deficit)
            if (d <= lvl) ++direct;
        CHECK(dm.annulus_count(n) == direct);
    }
    for (int n = 1; n < dm.depth; ++n)
        for (std::size_t j = 0; j < dm.counts[std::size_t(n - 1)].size(); ++j)
            CHECK(dm.counts[std::size_t(n - 1)][j] >=
                  dm.counts[std::size_t(n)][2 * j] + dm.counts[std::size_t(n)][2 * j + 1]);
}

TEST_CASE("dyadic masses sit below the Carleson function at matched scale") {
    const auto s = sample_boundary(Symbol::lens(), 1 << 20);
    const auto dm = dyadic_measures(s, 10);
    for (int n = 4; n <= 10; ++n) {
        double mmax = 0.0;
        for (std::int64_t c : dm.counts[std::size_t(n - 1)])
            mmax = std::max(mmax, double(c) / double(dm.n_points));
        const double h = std::min(2.0 * kPi * std::pow(2.0, -n), 0.99);
        const std::vector<double> grid{h};
        const auto p = rho_profile(s, grid);
        CHECK(mmax <= p.rho[0] + 1e-15);
        // and the matched-height window is captured within a factor 4
        const std::vector<double> g2{std::pow(2.0, -n)};
        const auto p2 = rho_profile(s, g2);
        if (p2.rho[0] * double(dm.n_points) >= 50.0) CHECK(mmax >= p2.rho[0] / 4.0);
    }
}

TEST_CASE("dyadic depth limit is enforced") {
    const auto s = sample_boundary(Symbol::lens(), 1 << 14);
    CHECK_THROWS(dyadic_measures(s, 9));  // 2^9 > 2^14/100
}

TEST_CASE("luecking sums: lens at p = 2 converges with tail ratio near 1/2") {
    const auto s = sample_boundary(Symbol::lens(), 1 << 20);
    const auto dm = dyadic_measures(s, 10);
    const auto lk = luecking_partial_sums(dm, 2.0);
    CHECK(lk.verdict == "converging");
    for (std::size_t i = lk.tail_ratios.size() - 3; i < lk.tail_ratios.size(); ++i)
        CHECK(lk.tail_ratios[i] <= 0.55);
}

TEST_CASE("luecking sums: all-zero measure gives S_N = 0") {
    const auto s = sample_boundary(Symbol::constant({0.0, 0.0}), 1 << 14);
    const auto dm = dyadic_measures(s, 5);
    const auto lk = luecking_partial_sums(dm, 2.0);
    CHECK(lk.partial_sums.back() == 0.0);
}

TEST_CASE("luecking sums: phi_theta(2) converges at p = 4, not at p = 1") {
    const auto s = sample_boundary(Symbol::phi_theta(2.0), 1 << 20);
    const auto dm = dyadic_measures(s, 12);
    CHECK(luecking_partial_sums(dm, 4.0).verdict == "converging");
    CHECK(luecking_partial_sums(dm, 1.0).verdict != "converging");
}

TEST_CASE("fit_exponent: synthetic power laws are recovered") {
    const auto grid = log_spaced(1e-4, 0.3, 24);
    const auto p15 = synthetic_profile(grid, [](double h) { return std::pow(h, 1.5); });
    CHECK(fit_exponent(p15).alpha == doctest::Approx(1.5).epsilon(1e-3));
    const auto s = sample_boundary(Symbol::identity(), 1 << 20);
    const auto pid = rho_profile(s, log_spaced(1e-3, 0.3, 24));
    const auto fit = fit_exponent(pid);
    CHECK(fit.alpha == doctest::Approx(1.0).epsilon(0.05));
    CHECK(fit.r2 > 0.999);
}

TEST_CASE("fit_exponent needs at least 8 usable points") {
    const auto grid = log_spaced(1e-3, 1e-2, 6);
    const auto p = synthetic_profile(grid, [](double h) { return h; });
    CHECK_THROWS(fit_exponent(p));
}

TEST_CASE("sliding-window sup matches a brute-force count on random samples") {
    Rng rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        BoundarySample s;
        const std::size_t m = 150 + rng.next_below(200);
        for (std::size_t i = 0; i < m; ++i) {
            s.arg.push_back(2.0 * kPi * rng.next_double());
            s.deficit.push_back(rng.next_double());
        }
        // pad to the minimum sample size with far-away points
        while (s.size() < 10000) {
            s.arg.push_back(2.0 * kPi * rng.next_double());
            s.deficit.push_back(1.0);  // excluded at every tested h
        }
        const double h = 0.05 + 0.3 * rng.next_double();
        const std::vector<double> grid{h};
        const auto p = rho_profile(s, grid);
        // brute force: every sample argument as a window left edge
        std::int64_t best = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s.deficit[i] > h) continue;
            std::int64_t cnt = 0;
            for (std::size_t j = 0; j < s.size(); ++j) {
                if (s.deficit[j] > h) continue;
                double d = s.arg[j] - s.arg[i];
                if (d < 0.0) d += 2.0 * kPi;
                if (d <= 2.0 * h) ++cnt;
            }
            best = std::max(best, cnt);
        }
        CHECK(p.rho[0] == doctest::Approx(double(best) / double(s.size())));
    }
}

TEST_CASE("luecking verdict thresholds on hand-built dyadic tables") {
    auto make = [](double ratio) {
        DyadicMeasure dm;
        dm.depth = 8;
        dm.n_points = 1 << 20;
        double mass = 1e-2;  // level-1 single-window mass
        for (int n = 1; n <= dm.depth; ++n) {
            dm.counts.push_back(std::vector<std::int64_t>(std::size_t(1) << n, 0));
            // place a single loaded window per level so the level term is
            // 2^{n p/2} mass^{p/2}; choose masses so term ratios equal `ratio`
            // at p = 2: 2 * mass_{n+1}/mass_n = ratio
            dm.counts.back()[0] = std::int64_t(mass * double(dm.n_points));
            mass *= ratio / 2.0;
        }
        return dm;
    };
    CHECK(luecking_partial_sums(make(0.5), 2.0).verdict == "converging");
    CHECK(luecking_partial_sums(make(1.2), 2.0).verdict == "diverging");
    CHECK(luecking_partial_sums(make(1.0), 2.0).verdict == "inconclusive");
}
