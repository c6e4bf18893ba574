#include "lockin/models.hpp"

#include "lockin/errors.hpp"

#include <cmath>
#include <numbers>

namespace lockin {

namespace {
constexpr double pi = std::numbers::pi;
}

void PendulumParams::validate() const {
    if (!(Omega_bar > 0.0))
        throw argument_error("PendulumParams: Omega_bar must be > 0");
    if (A_bar < 0.0)
        throw argument_error("PendulumParams: A_bar must be >= 0");
    if (C_bar < 0.0)
        throw argument_error("PendulumParams: C_bar must be >= 0");
}

FourierMatrixSeries pendulum_system(const PendulumParams& p) {
    p.validate();
    FourierMatrixSeries series;
    series.order = 2;
    series.fundamental_frequency = p.Omega_bar;

    Eigen::MatrixXcd J0(2, 2);
    J0 << 0.0, 1.0,
         -1.0, -p.C_bar;
    series.harmonics[0] = J0;

    if (p.A_bar > 0.0) {
        Eigen::MatrixXcd J1 = Eigen::MatrixXcd::Zero(2, 2);
        J1(1, 0) = -0.5 * p.A_bar; // half the cosine coefficient
        series.harmonics[1] = J1;
        series.harmonics[-1] = J1;
    }
    return series;
}

PendulumParams nondim_pendulum(const PhysicalPendulum& phys) {
    const double ml2 = phys.mass * phys.length * phys.length;
    const double w0sq = phys.spring_k / ml2 - phys.gravity / phys.length;
    if (!(w0sq > 0.0))
        throw argument_error(
            "nondim_pendulum: statically unstable upright equilibrium "
            "(k/(M L^2) - g/L = " + std::to_string(w0sq) + " <= 0)");
    const double w0 = std::sqrt(w0sq);

    PendulumParams p;
    p.Omega_bar = phys.base_frequency / w0;
    p.A_bar = phys.base_amplitude * phys.base_frequency * phys.base_frequency /
              (phys.length * w0sq);
    p.C_bar = phys.damper_c / (w0 * ml2);
    p.validate();
    return p;
}

void WinklerParams::validate() const {
    if (P_bar < 0.0)
        throw argument_error("WinklerParams: P_bar must be >= 0");
    if (K_bar < 0.0 || K_bar >= 1.0)
        throw argument_error("WinklerParams: K_bar must satisfy 0 <= K_bar < 1 "
                             "(foundation stiffness stays positive), got " +
                             std::to_string(K_bar));
    if (!(lambda_bar > 0.0))
        throw argument_error("WinklerParams: lambda_bar must be > 0");
}

FourierMatrixSeries winkler_system(const WinklerParams& w) {
    w.validate();
    FourierMatrixSeries series;
    series.order = 4;
    series.fundamental_frequency = 2.0 * pi / w.lambda_bar;

    const double k0 = 16.0 * pi * pi * pi * pi; // 16 pi^4

    Eigen::MatrixXcd J0 = Eigen::MatrixXcd::Zero(4, 4);
    J0(0, 1) = 1.0;
    J0(1, 2) = 1.0;
    J0(2, 3) = 1.0;
    J0(3, 0) = -k0;
    J0(3, 2) = -w.P_bar;
    series.harmonics[0] = J0;

    if (w.K_bar > 0.0) {
        Eigen::MatrixXcd J1 = Eigen::MatrixXcd::Zero(4, 4);
        J1(3, 0) = -0.5 * k0 * w.K_bar; // half the cosine coefficient, -8 pi^4 K_bar
        series.harmonics[1] = J1;
        series.harmonics[-1] = J1;
    }
    return series;
}

NondimWinkler nondim_winkler(const PhysicalWinkler& phys) {
    if (!(phys.bending_EI > 0.0))
        throw argument_error("nondim_winkler: EI must be > 0");
    if (!(phys.base_K0 > 0.0))
        throw argument_error("nondim_winkler: K0 must be > 0");
    if (phys.modulation_K1 < 0.0 || phys.modulation_K1 >= phys.base_K0)
        throw argument_error("nondim_winkler: K1 must satisfy 0 <= K1 < K0");
    if (!(phys.wavelength > 0.0))
        throw argument_error("nondim_winkler: wavelength must be > 0");

    NondimWinkler out;
    out.lambda0 = 2.0 * pi * std::pow(phys.bending_EI / phys.base_K0, 0.25);
    out.params.P_bar = 4.0 * pi * pi * phys.axial_P /
                       std::sqrt(phys.base_K0 * phys.bending_EI);
    out.params.K_bar = phys.modulation_K1 / phys.base_K0;
    out.params.lambda_bar = phys.wavelength / out.lambda0;
    out.params.validate();
    return out;
}

} // namespace lockin
