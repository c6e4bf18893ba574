#pragma once

#include "lockin/fourier_series.hpp"

namespace lockin {

// ---- inverted pendulum on a vibrating base (time-periodic system) ----

struct PendulumParams {
    double A_bar = 0.0;     // normalized drive amplitude, >= 0
    double Omega_bar = 1.0; // normalized drive frequency, > 0; T_bar = 2*pi/Omega_bar
    double C_bar = 0.0;     // normalized damping, >= 0

    void validate() const;
};

struct PhysicalPendulum {
    double mass = 1.0;           // M [kg]
    double length = 1.0;         // L [m]
    double spring_k = 1.0;       // k [N m / rad]
    double damper_c = 0.0;       // c [N m s / rad]
    double base_amplitude = 0.0; // A [m]
    double base_frequency = 1.0; // Omega [rad/s]
    double gravity = 9.81;       // g [m/s^2]
};

// First-order form of theta'' + C th' + (1 + A cos(Om t)) th = 0:
//   J_0 = [[0, 1], [-1, -C_bar]],  J_1 = J_{-1} = [[0, 0], [-A_bar/2, 0]].
// Omega of the series equals Omega_bar. A_bar = 0 stores only J_0.
FourierMatrixSeries pendulum_system(const PendulumParams& p);

// omega0 = sqrt(k/(M L^2) - g/L); Omega_bar = Omega/omega0;
// A_bar = A Omega^2/(L omega0^2); C_bar = c/(omega0 M L^2).
// Throws argument_error if omega0^2 <= 0 (statically unstable upright
// equilibrium).
PendulumParams nondim_pendulum(const PhysicalPendulum& phys);

// ---- beam on a stiffness-modulated Winkler foundation (space-periodic) ----

struct WinklerParams {
    double P_bar = 0.0;      // normalized axial load, >= 0
    double K_bar = 0.0;      // modulation ratio K1/K0, in [0, 1)
    double lambda_bar = 1.0; // normalized modulation wavelength, > 0

    void validate() const;
};

struct PhysicalWinkler {
    double bending_EI = 1.0;    // EI [N m^2]
    double base_K0 = 1.0;       // K0 [N/m^2]
    double modulation_K1 = 0.0; // K1 [N/m^2], 0 <= K1 < K0
    double wavelength = 1.0;    // lambda [m]
    double axial_P = 0.0;       // P [N]
};

// Companion form (y = (z, z', z'', z''')) of
//   z'''' + P_bar z'' + 16 pi^4 (1 + K_bar cos(2 pi x / lambda_bar)) z = 0.
// J_0 bottom row = (-16 pi^4, 0, -P_bar, 0); the first harmonics carry half
// the cosine coefficient: J_1 = J_{-1} bottom-left = -8 pi^4 K_bar.
// Omega of the series equals 2*pi/lambda_bar. K_bar = 0 stores only J_0.
FourierMatrixSeries winkler_system(const WinklerParams& w);

struct NondimWinkler {
    WinklerParams params;
    double lambda0 = 0.0; // intrinsic buckling wavelength 2*pi*(EI/K0)^(1/4)
};

// lambda0 = 2 pi (EI/K0)^(1/4); P_bar = 4 pi^2 P / sqrt(K0 EI);
// K_bar = K1/K0; lambda_bar = lambda/lambda0.
NondimWinkler nondim_winkler(const PhysicalWinkler& phys);

} // namespace lockin
