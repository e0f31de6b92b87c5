#include "holab/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace holab {

namespace {

// (h, q) rows ordered from the largest h down to the smallest, so the
// envelope helpers see the asymptotic regime last.  sg carries the log-scale
// Poisson error of each point (stderr/rho), used to widen margins where the
// window counts are thin.
struct Trace {
    std::vector<double> h;
    std::vector<double> q;
    std::vector<double> sg;
    std::size_t dropped = 0;
};

void require_span(const CarlesonProfile& p) {
    double lo = 1.0, hi = 0.0;
    for (double h : p.h) {
        lo = std::min(lo, h);
        hi = std::max(hi, h);
    }
    if (!(hi / lo >= 100.0))
        throw std::invalid_argument("criterion needs a profile spanning >= 2 decades");
}

// rho below ~10 window counts carries no information
double usable_floor(const CarlesonProfile& p) { return 10.0 / double(p.n_points); }

std::vector<std::size_t> descending_h_order(const CarlesonProfile& p) {
    std::vector<std::size_t> idx(p.h.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return p.h[a] > p.h[b]; });
    return idx;
}

struct BlockStats {
    double max = -1e300;
    double min = 1e300;
    double max_sigma = 0.0;
};

BlockStats block_stats(const Trace& t, std::size_t lo, std::size_t hi) {
    BlockStats m;
    for (std::size_t i = lo; i < hi; ++i) {
        if (t.q[i] > m.max) {
            m.max = t.q[i];
            m.max_sigma = t.sg[i];
        }
        m.min = std::min(m.min, t.q[i]);
    }
    return m;
}

// Decide whether the trace dies toward the h -> 0 end or stays bounded below.
// Maxima falling by the margin per block is decay evidence; maxima holding
// level, or minima that stop dropping, certify boundedness below.  The head
// block may sit low for reasons (window saturation) that say nothing about
// the asymptotic regime, so blocks 2 and 3 carry the verdict.
Envelope trace_envelope(const Trace& t, double margin) {
    if (t.q.size() < 9) return Envelope::inconclusive;
    const std::size_t b1 = t.q.size() / 3, b2 = 2 * t.q.size() / 3;
    const BlockStats s2 = block_stats(t, b1, b2);
    const BlockStats s3 = block_stats(t, b2, t.q.size());
    const double eff = std::max(margin, 2.0 * s3.max_sigma);
    const bool max_flat = s3.max >= s2.max - 0.5 * eff;
    const bool min_flat = s3.min >= s2.min - eff;
    if (max_flat || min_flat) return Envelope::nondecaying;
    if (s2.max - s3.max >= eff) return Envelope::decaying;
    return Envelope::inconclusive;
}

}  // namespace

Verdict maccluer_h2(const CarlesonProfile& profile, double margin) {
    require_span(profile);
    Trace t;
    for (std::size_t i : descending_h_order(profile)) {
        if (profile.rho[i] < usable_floor(profile)) {
            ++t.dropped;
            continue;
        }
        t.h.push_back(profile.h[i]);
        t.q.push_back(std::log(profile.rho[i]) - std::log(profile.h[i]));
        t.sg.push_back(profile.stderr_[i] / profile.rho[i]);
    }
    Verdict v;
    v.criterion = "maccluer_h2";
    v.params = {{"margin", margin}};
    for (std::size_t i = 0; i < t.h.size(); ++i) v.evidence.emplace_back(t.h[i], t.q[i]);
    switch (trace_envelope(t, margin)) {
        case Envelope::decaying: v.holds = Tristate::holds; break;
        case Envelope::nondecaying: v.holds = Tristate::fails; break;
        default: v.holds = Tristate::inconclusive;
    }
    if (t.dropped) v.note = "dropped " + std::to_string(t.dropped) + " sub-resolution grid points";
    return v;
}

Verdict hpsi_compactness(const CarlesonProfile& profile, const OrliczFunction& psi,
                         std::vector<double> A_grid, double margin) {
    require_span(profile);
    std::sort(A_grid.begin(), A_grid.end());
    for (double a : {2.0, 4.0, 8.0})
        if (std::find(A_grid.begin(), A_grid.end(), a) == A_grid.end())
            throw std::invalid_argument("hpsi_compactness: A_grid must contain {2, 4, 8}");

    Verdict v;
    v.criterion = "hpsi_compactness";
    v.params = {{"margin", margin}};
    for (std::size_t i = 0; i < A_grid.size(); ++i)
        v.params.emplace_back("A" + std::to_string(i), A_grid[i]);

    const auto order = descending_h_order(profile);
    bool all_decaying = true;
    std::size_t total_dropped = 0;
    Trace first_trace;
    for (double A : A_grid) {
        const double la = std::log(A);
        Trace t;
        for (std::size_t i : order) {
            if (profile.rho[i] < usable_floor(profile)) {
                ++t.dropped;
                continue;
            }
            double q;
            try {
                const double s_u = psi.inverse_log(std::log(1.0 / profile.h[i]));
                q = std::log(profile.rho[i]) + psi.eval_log(s_u + la);
            } catch (const std::exception&) {
                ++t.dropped;
                continue;
            }
            t.h.push_back(profile.h[i]);
            t.q.push_back(q);
            t.sg.push_back(profile.stderr_[i] / profile.rho[i]);
        }
        total_dropped += t.dropped;
        const Envelope e = trace_envelope(t, margin);
        if (first_trace.h.empty()) first_trace = t;
        if (e == Envelope::nondecaying) {
            v.holds = Tristate::fails;
            v.params.emplace_back("witness_A", A);
            v.evidence.clear();
            for (std::size_t i = 0; i < t.h.size(); ++i) v.evidence.emplace_back(t.h[i], t.q[i]);
            v.note = "r_A bounded below on the observed range";
            return v;
        }
        if (e != Envelope::decaying) all_decaying = false;
    }
    for (std::size_t i = 0; i < first_trace.h.size(); ++i)
        v.evidence.emplace_back(first_trace.h[i], first_trace.q[i]);
    v.holds = all_decaying ? Tristate::holds : Tristate::inconclusive;
    if (total_dropped)
        v.note = "dropped " + std::to_string(total_dropped) + " grid points across the A grid";
    return v;
}

Verdict alpha_carleson(const CarlesonProfile& profile, double alpha, double margin) {
    if (alpha < 1.0) throw std::invalid_argument("alpha_carleson: need alpha >= 1");
    Trace t;
    for (std::size_t i : descending_h_order(profile)) {
        if (profile.rho[i] < usable_floor(profile)) {
            ++t.dropped;
            continue;
        }
        t.h.push_back(profile.h[i]);
        t.q.push_back(std::log(profile.rho[i]) - alpha * std::log(profile.h[i]));
        t.sg.push_back(profile.stderr_[i] / profile.rho[i]);
    }
    Verdict v;
    v.criterion = "alpha_carleson";
    v.params = {{"alpha", alpha}, {"margin", margin}};
    for (std::size_t i = 0; i < t.h.size(); ++i) v.evidence.emplace_back(t.h[i], t.q[i]);
    if (t.q.size() < 9) {
        v.holds = Tristate::inconclusive;
        return v;
    }
    // sup finite with a stable tail: the tail block must not rise above the mid
    const std::size_t b1 = t.q.size() / 3, b2 = 2 * t.q.size() / 3;
    const BlockStats s2 = block_stats(t, b1, b2);
    const BlockStats s3 = block_stats(t, b2, t.q.size());
    const double eff = std::max(margin, 2.0 * s3.max_sigma);
    const double up = s3.max - s2.max;
    v.holds = (up >= eff) ? Tristate::fails
              : (up <= 0.5 * eff) ? Tristate::holds
                                  : Tristate::inconclusive;
    return v;
}

Verdict schatten_decay(const CarlesonProfile& profile, double p, double margin) {
    if (!(p > 0.0)) throw std::invalid_argument("schatten_decay: need p > 0");
    require_span(profile);
    const double delta = 2.0 / p;
    Trace t;
    for (std::size_t i : descending_h_order(profile)) {
        if (profile.rho[i] < usable_floor(profile)) {
            ++t.dropped;
            continue;
        }
        const double y = std::log(1.0 / profile.h[i]);
        t.h.push_back(profile.h[i]);
        t.q.push_back(std::log(profile.rho[i]) + delta * std::log(y) - std::log(profile.h[i]));
        t.sg.push_back(profile.stderr_[i] / profile.rho[i]);
    }
    Verdict v;
    v.criterion = "schatten_decay";
    v.params = {{"p", p}, {"delta", delta}, {"margin", margin}, {"necessary_only", 1.0}};
    for (std::size_t i = 0; i < t.h.size(); ++i) v.evidence.emplace_back(t.h[i], t.q[i]);
    switch (trace_envelope(t, margin)) {
        case Envelope::decaying: v.holds = Tristate::holds; break;
        case Envelope::nondecaying: v.holds = Tristate::fails; break;
        default: v.holds = Tristate::inconclusive;
    }
    v.note = "necessary condition only: fails certifies C_phi outside S_p";
    return v;
}

}  // namespace holab
