#pragma once

#include "lockin/classify.hpp"
#include "lockin/hill.hpp"

#include <vector>

namespace lockin {

// Real-space samples of a Floquet form y(xi) = sum_h r^h e^{(i h Omega + s) xi}.
struct ModeShape {
    std::vector<double> xi;        // strictly increasing, uniform
    std::vector<cxd> values;       // complex samples
    std::vector<double> real_part;
    cxd exponent{};                // s used for the evaluation
    double xi_min = 0.0;
    double xi_max = 0.0;
    int samples_per_period = 0;
};

// Evaluate the Floquet form of `record` on a uniform grid with
// samples_per_period points per period 2*pi/omega, covering [xi_min, xi_max].
// Requires a record with harmonics, domain >= one period, spp >= 8.
// Guards against exp overflow for growing exponents on long domains.
ModeShape reconstruct_mode(const ExponentRecord& record, double omega,
                           double xi_min, double xi_max,
                           int samples_per_period);

// For locked classes (Periodic / PeriodDoubled) returns the exactly locked
// exponent: Re -> 0 and Im -> sign(Im) * {0, 1/2} * Omega. A bisection-
// converged critical exponent deviates from the zone edge like
// sqrt(P - P_cr); snapping realizes the P -> P_cr limit, making the
// reconstructed mode exactly T- or 2T-periodic. Quasi-periodic exponents
// pass through unchanged.
cxd snap_locked_exponent(cxd s, double omega, const PeriodicityClass& cls);

} // namespace lockin
