#pragma once

#include "lockin/hill.hpp"

#include <string>

namespace lockin {

inline constexpr double default_tol_lock = 1e-4;

enum class PeriodicityTag { Periodic, PeriodDoubled, QuasiPeriodic };

// Three-way periodicity decision for a Floquet exponent:
//   locked_fraction <= tol_lock            -> Periodic      (period T)
//   |locked_fraction - 1/2| <= tol_lock    -> PeriodDoubled (period 2T)
//   otherwise                              -> QuasiPeriodic
struct PeriodicityClass {
    PeriodicityTag tag = PeriodicityTag::QuasiPeriodic;
    double locked_fraction = 0.0; // Im(s)/Omega folded into [0, 1/2]
};

// Fold im/omega onto [0, 1/2]: distance of im/omega to the nearest integer.
double fold_fraction(double im, double omega);

PeriodicityClass classify_fraction(double fraction, double tol_lock = default_tol_lock);

// Classification of a spectrum: the largest folded Im(s)/Omega over the
// contained exponents decides (callers pass the criticality-relevant
// exponents, e.g. the max-Re record or the zero-Re set at buckling).
PeriodicityClass classify_spectrum(const FloquetSpectrum& spectrum,
                                   double tol_lock = default_tol_lock);

const char* to_string(PeriodicityTag tag);
int class_code(PeriodicityTag tag); // Periodic 0, PeriodDoubled 1, QuasiPeriodic 2

} // namespace lockin
