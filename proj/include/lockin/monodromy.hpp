#pragma once

#include "lockin/hill.hpp"

namespace lockin {

// State-transition matrix over one period T = 2*pi/Omega, integrated from
// the identity with a fixed-step classical 4th-order Runge-Kutta scheme.
Eigen::MatrixXcd monodromy_matrix(const FourierMatrixSeries& series,
                                  int integrator_steps = 4096);

// Floquet exponents from the monodromy eigenvalues mu: s = ln(mu)/T with
// Im(s) folded into (-Omega/2, Omega/2]. Returns exactly N exponents;
// harmonics are absent. integrator_steps must be >= 100.
FloquetSpectrum monodromy_exponents(const FourierMatrixSeries& series,
                                    int integrator_steps = 4096);

} // namespace lockin
