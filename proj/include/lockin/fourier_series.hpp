#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <numbers>

namespace lockin {

using cxd = std::complex<double>;

// Periodic coefficient matrix J(xi) = sum_h J_h e^{i h Omega xi},
// represented by its finitely supported Fourier harmonics.
struct FourierMatrixSeries {
    int order = 0;                      // system dimension N
    double fundamental_frequency = 0.0; // Omega > 0 (rad per unit xi)
    std::map<int, Eigen::MatrixXcd> harmonics; // h -> J_h; h = 0 always present

    double period() const { return 2.0 * std::numbers::pi / fundamental_frequency; }

    // Evaluate J(xi) by summing the stored harmonics.
    Eigen::MatrixXcd evaluate(double xi) const;

    // Largest |h| with a stored harmonic.
    int max_harmonic() const;

    // True if J_{-h} == conj(J_h) for every stored h (real-coefficient system).
    bool is_real_system(double tol = 1e-12) const;

    // Throws argument_error / structural_error on invariant violations:
    // order >= 1, frequency > 0, J_0 present, all matrices N x N.
    void validate() const;
};

} // namespace lockin
