#include <doctest.h>

#include <cmath>
#include <vector>

#include "holab/carleson.hpp"
#include "holab/criteria.hpp"
#include "holab/orlicz.hpp"
#include "holab/symbols.hpp"

using namespace holab;

namespace {

CarlesonProfile identity_law() {
    return synthetic_profile(log_spaced(1e-5, 0.3, 40), [](double h) { return h / M_PI; });
}
CarlesonProfile lens_law() {
    return synthetic_profile(log_spaced(1e-5, 0.3, 40), [](double h) { return 10.0 * h * h; });
}
CarlesonProfile phi_theta_law(double theta) {
    return synthetic_profile(log_spaced(1e-6, 0.3, 48), [theta](double h) {
        return h / std::pow(std::log(1.0 / h), theta);
    });
}

}  // namespace

TEST_CASE("maccluer: identity fails, lens and phi_theta hold") {
    CHECK(maccluer_h2(identity_law()).holds == Tristate::fails);
    CHECK(maccluer_h2(lens_law()).holds == Tristate::holds);
    CHECK(maccluer_h2(phi_theta_law(2.0)).holds == Tristate::holds);
}

TEST_CASE("alpha_carleson on the synthetic laws") {
    CHECK(alpha_carleson(lens_law(), 2.0).holds == Tristate::holds);
    CHECK(alpha_carleson(lens_law(), 2.5).holds == Tristate::fails);
    CHECK(alpha_carleson(identity_law(), 1.0).holds == Tristate::holds);
    CHECK(alpha_carleson(identity_law(), 1.5).holds == Tristate::fails);
    CHECK_THROWS(alpha_carleson(identity_law(), 0.5));
}

TEST_CASE("alpha_carleson monotone: holds at alpha implies holds below") {
    const auto p = lens_law();
    bool seen_fail = false;
    for (double a : {2.5, 2.25, 2.0, 1.5, 1.0}) {  // decreasing alpha
        const auto v = alpha_carleson(p, a);
        if (v.holds == Tristate::fails) CHECK(!seen_fail);  // fails only above the threshold
        if (v.holds == Tristate::fails) continue;
        seen_fail = true;  // from here on everything below must hold
        CHECK(v.holds == Tristate::holds);
    }
}

TEST_CASE("schatten_decay: identity fails at every p") {
    for (double p : {0.5, 1.0, 2.0, 8.0})
        CHECK(schatten_decay(identity_law(), p).holds == Tristate::fails);
}

TEST_CASE("schatten_decay: lens holds at p = 1 (analytic route), phi_theta splits at 4/theta") {
    CHECK(schatten_decay(lens_law(), 1.0).holds == Tristate::holds);
    const auto pt = phi_theta_law(2.0);
    CHECK(schatten_decay(pt, 0.5).holds == Tristate::fails);  // delta = 4 > theta
    CHECK(schatten_decay(pt, 4.0).holds == Tristate::holds);  // delta = 1/2 < theta
}

TEST_CASE("schatten_decay monotone in p: fails at p implies fails below") {
    const auto pt = phi_theta_law(2.0);
    bool failed_at_larger = false;
    for (double p : {8.0, 4.0, 2.0, 1.0, 0.5}) {
        const auto v = schatten_decay(pt, p);
        if (failed_at_larger) CHECK(v.holds == Tristate::fails);
        if (v.holds == Tristate::fails) failed_at_larger = true;
    }
}

TEST_CASE("hpsi_compactness on phi_theta laws reproduces the theta condition split") {
    const auto pt = phi_theta_law(2.0);
    CHECK(hpsi_compactness(pt, OrliczFunction::loglog()).holds == Tristate::fails);
    CHECK(hpsi_compactness(pt, OrliczFunction::logloglog()).holds == Tristate::holds);
    CHECK(hpsi_compactness(pt, OrliczFunction::explicit_product()).holds == Tristate::holds);
}

TEST_CASE("hpsi_compactness: lens with exp_x fails through A = 2") {
    const auto v = hpsi_compactness(lens_law(), OrliczFunction::exp_x());
    CHECK(v.holds == Tristate::fails);
    double witness = 0.0;
    for (auto& [k, val] : v.params)
        if (k == "witness_A") witness = val;
    CHECK(witness == 2.0);
}

TEST_CASE("hpsi holds implies maccluer holds on the same profile") {
    for (const auto& prof : {phi_theta_law(2.0), phi_theta_law(1.0)}) {
        for (const auto& psi :
             {OrliczFunction::logloglog(), OrliczFunction::power(2.0), OrliczFunction::power(3.0)}) {
            if (hpsi_compactness(prof, psi).holds == Tristate::holds)
                CHECK(maccluer_h2(prof).holds == Tristate::holds);
        }
    }
}

TEST_CASE("hpsi_compactness requires {2,4,8} in the A grid") {
    CHECK_THROWS(hpsi_compactness(lens_law(), OrliczFunction::power(2.0), {2.0, 4.0}));
}

TEST_CASE("criteria demand two decades of profile") {
    const auto narrow = synthetic_profile(log_spaced(0.05, 0.3, 20), [](double h) { return h; });
    CHECK_THROWS(maccluer_h2(narrow));
    CHECK_THROWS(schatten_decay(narrow, 2.0));
}

TEST_CASE("verdicts are deterministic functions of their inputs") {
    const auto p = phi_theta_law(2.0);
    const auto a = hpsi_compactness(p, OrliczFunction::loglog());
    const auto b = hpsi_compactness(p, OrliczFunction::loglog());
    CHECK(a.holds == b.holds);
    CHECK(a.evidence == b.evidence);
    CHECK(a.params == b.params);
}

TEST_CASE("empirical cross-check: lens sample against the synthetic verdicts") {
    const auto s = sample_boundary(Symbol::lens(), 1 << 20);
    const auto prof = rho_profile(s, log_spaced(2e-4, 0.3, 32));
    CHECK(maccluer_h2(prof).holds == Tristate::holds);
    CHECK(alpha_carleson(prof, 2.0).holds == Tristate::holds);
    CHECK(schatten_decay(prof, 1.0).holds == Tristate::holds);
    CHECK(hpsi_compactness(prof, OrliczFunction::exp_x()).holds == Tristate::fails);
}
