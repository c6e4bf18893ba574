#include "lockin/classify.hpp"

#include "lockin/errors.hpp"

#include <cmath>

namespace lockin {

double fold_fraction(double im, double omega) {
    if (!(omega > 0.0))
        throw argument_error("fold_fraction: omega must be > 0");
    const double y = im / omega;
    return std::abs(y - std::round(y));
}

PeriodicityClass classify_fraction(double fraction, double tol_lock) {
    if (!(fraction >= 0.0 && fraction <= 0.5))
        throw argument_error("classify_fraction: fraction must lie in [0, 1/2], got " +
                             std::to_string(fraction));
    PeriodicityClass cls;
    cls.locked_fraction = fraction;
    if (fraction <= tol_lock)
        cls.tag = PeriodicityTag::Periodic;
    else if (std::abs(fraction - 0.5) <= tol_lock)
        cls.tag = PeriodicityTag::PeriodDoubled;
    else
        cls.tag = PeriodicityTag::QuasiPeriodic;
    return cls;
}

PeriodicityClass classify_spectrum(const FloquetSpectrum& spectrum,
                                   double tol_lock) {
    if (spectrum.exponents.empty())
        throw numeric_error("classify_spectrum: empty spectrum");
    double frac = 0.0;
    for (const auto& rec : spectrum.exponents)
        frac = std::max(frac,
                        fold_fraction(rec.s.imag(), spectrum.fundamental_frequency));
    return classify_fraction(frac, tol_lock);
}

const char* to_string(PeriodicityTag tag) {
    switch (tag) {
        case PeriodicityTag::Periodic: return "periodic";
        case PeriodicityTag::PeriodDoubled: return "period-doubled";
        case PeriodicityTag::QuasiPeriodic: return "quasi-periodic";
    }
    return "unknown";
}

int class_code(PeriodicityTag tag) {
    switch (tag) {
        case PeriodicityTag::Periodic: return 0;
        case PeriodicityTag::PeriodDoubled: return 1;
        case PeriodicityTag::QuasiPeriodic: return 2;
    }
    return -1;
}

} // namespace lockin
