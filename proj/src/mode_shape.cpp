#include "lockin/mode_shape.hpp"

#include "lockin/errors.hpp"

#include <cmath>
#include <numbers>

namespace lockin {

ModeShape reconstruct_mode(const ExponentRecord& record, double omega,
                           double xi_min, double xi_max,
                           int samples_per_period) {
    if (!(omega > 0.0))
        throw argument_error("reconstruct_mode: omega must be > 0");
    if (record.harmonics.size() == 0)
        throw argument_error("reconstruct_mode: record carries no harmonics "
                             "(was the spectrum computed with want_vectors?)");
    const double T = 2.0 * std::numbers::pi / omega;
    const double span = xi_max - xi_min;
    if (!(span >= T))
        throw argument_error("reconstruct_mode: domain must cover at least one period");
    if (samples_per_period < 8)
        throw argument_error("reconstruct_mode: samples_per_period must be >= 8, got " +
                             std::to_string(samples_per_period));
    // exp overflow guard for growing exponents over long domains.
    const double growth = record.s.real() * span;
    if (growth > 690.0)
        throw numeric_error("reconstruct_mode: Re(s) * domain = " +
                            std::to_string(growth) +
                            " would overflow exp; normalize or shorten the domain");

    const int M = record.truncation;
    const int N = record.order;
    const double step = T / samples_per_period;
    const auto count = static_cast<std::size_t>(std::floor(span / step + 1e-9)) + 1;

    ModeShape shape;
    shape.exponent = record.s;
    shape.xi_min = xi_min;
    shape.xi_max = xi_max;
    shape.samples_per_period = samples_per_period;
    shape.xi.reserve(count);
    shape.values.reserve(count);
    shape.real_part.reserve(count);

    for (std::size_t i = 0; i < count; ++i) {
        const double xi = xi_min + static_cast<double>(i) * step;
        // First state component of sum_h r^h e^{(i h Omega + s) xi}.
        cxd acc(0.0, 0.0);
        for (int h = -M; h <= M; ++h) {
            const cxd rh = record.harmonics(static_cast<Eigen::Index>(h + M) * N);
            const double phase = h * omega * xi;
            acc += rh * cxd(std::cos(phase), std::sin(phase));
        }
        const cxd value = std::exp(record.s * xi) * acc;
        shape.xi.push_back(xi);
        shape.values.push_back(value);
        shape.real_part.push_back(value.real());
    }
    return shape;
}

cxd snap_locked_exponent(cxd s, double omega, const PeriodicityClass& cls) {
    switch (cls.tag) {
        case PeriodicityTag::Periodic:
            return cxd(0.0, 0.0);
        case PeriodicityTag::PeriodDoubled: {
            const double sign = s.imag() < 0.0 ? -1.0 : 1.0;
            return cxd(0.0, sign * 0.5 * omega);
        }
        case PeriodicityTag::QuasiPeriodic:
            return s;
    }
    return s;
}

} // namespace lockin
