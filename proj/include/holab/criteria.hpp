#pragma once

#include <string>
#include <utility>
#include <vector>

#include "holab/carleson.hpp"
#include "holab/orlicz.hpp"
#include "holab/trend.hpp"

namespace holab {

// Outcome of a compactness / Schatten criterion on an empirical profile.
// Evidence rows are (h, log ratio), ordered from large h toward the h -> 0
// asymptotic regime.
struct Verdict {
    std::string criterion;
    Tristate holds = Tristate::inconclusive;
    std::vector<std::pair<double, double>> evidence;
    std::vector<std::pair<std::string, double>> params;
    std::string note;
};

// MacCluer: C_phi compact on H^2 iff rho(h) = o(h).
Verdict maccluer_h2(const CarlesonProfile& profile, double margin = 0.05);

// H^Psi compactness: rho(h) = o(1/Psi(A Psi^{-1}(1/h))) for every A in the
// grid.  Fails records the witnessing A.
Verdict hpsi_compactness(const CarlesonProfile& profile, const OrliczFunction& psi,
                         std::vector<double> A_grid = {2.0, 4.0, 8.0, 64.0, 1024.0},
                         double margin = 0.05);

// rho(h) <~ h^alpha with a stable tail.
Verdict alpha_carleson(const CarlesonProfile& profile, double alpha, double margin = 0.05);

// Necessary decay for S_p membership: rho(h) = o(h / (log 1/h)^{2/p}).
// "fails" certifies C_phi outside S_p; "holds" is not a membership proof.
Verdict schatten_decay(const CarlesonProfile& profile, double p, double margin = 0.05);

}  // namespace holab
