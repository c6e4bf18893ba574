#pragma once

#include "lockin/classify.hpp"
#include "lockin/hill.hpp"
#include "lockin/models.hpp"

#include <vector>

namespace lockin {

struct CriticalSearchOptions {
    double re_threshold = 1e-8;     // epsilon on min |Re(s)|
    double P_lo = 0.0;              // load bracket
    double P_hi = 1.2 * 8.0 * std::numbers::pi * std::numbers::pi;
    int coarse_steps = 200;
    double bisection_tol = 1e-8;    // relative tolerance on P_bar
    HillOptions hill{};
    double tol_lock = default_tol_lock;

    void validate() const; // P_lo < P_hi, coarse_steps >= 2, tolerances > 0
};

struct CriticalLoadResult {
    double P_bar_cr = 0.0;
    std::vector<ExponentRecord> critical_exponents; // |Re(s)| <= re_threshold
    PeriodicityClass classification{};
    double locked_fraction = 0.0;   // Im(s_cr) * lambda_bar / (2 pi), folded to [0, 1/2]
    int truncation = 0;             // M used
    int coarse_evaluations = 0;
    int bisection_iterations = 0;
    double bracket_width = 0.0;     // final (b - a), <= bisection_tol * P_bar_cr
    bool boundary_degenerate = false;
};

// Critical buckling load of the modulated Winkler geometry (K_bar,
// lambda_bar): f(P) = min_j |Re(s_j)| over the retained Floquet exponents is
// scanned over ascending loads; the first coarse interval where f drops to
// re_threshold is bisected down to bisection_tol. Below the critical load
// every spatial exponent is evanescent (f > 0); the first on-axis pair
// appears at P_bar_cr. If the very first coarse sample already satisfies
// f <= re_threshold the scan cannot bracket a transition; one retry with 4x
// the coarse resolution is attempted before failing. No crossing in the
// bracket raises search_error carrying the endpoint f values.
CriticalLoadResult critical_load(double K_bar, double lambda_bar,
                                 const CriticalSearchOptions& opts = {});

} // namespace lockin
