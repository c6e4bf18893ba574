#include "lockin/monodromy.hpp"

#include "lockin/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace lockin {

Eigen::MatrixXcd monodromy_matrix(const FourierMatrixSeries& series,
                                  int integrator_steps) {
    series.validate();
    if (integrator_steps < 100)
        throw argument_error("monodromy_matrix: integrator_steps must be >= 100, got " +
                             std::to_string(integrator_steps));

    const int N = series.order;
    const double T = series.period();
    const double h = T / integrator_steps;

    // Classical RK4 on Y' = J(xi) Y from Y(0) = I.
    Eigen::MatrixXcd Y = Eigen::MatrixXcd::Identity(N, N);
    for (int k = 0; k < integrator_steps; ++k) {
        const double xi = k * h;
        const Eigen::MatrixXcd J1 = series.evaluate(xi);
        const Eigen::MatrixXcd J2 = series.evaluate(xi + 0.5 * h);
        const Eigen::MatrixXcd J3 = series.evaluate(xi + h);
        const Eigen::MatrixXcd k1 = J1 * Y;
        const Eigen::MatrixXcd k2 = J2 * (Y + 0.5 * h * k1);
        const Eigen::MatrixXcd k3 = J2 * (Y + 0.5 * h * k2);
        const Eigen::MatrixXcd k4 = J3 * (Y + h * k3);
        Y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return Y;
}

FloquetSpectrum monodromy_exponents(const FourierMatrixSeries& series,
                                    int integrator_steps) {
    const Eigen::MatrixXcd Phi = monodromy_matrix(series, integrator_steps);
    const int N = series.order;
    const double Om = series.fundamental_frequency;
    const double T = series.period();

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(Phi, false);
    if (solver.info() != Eigen::Success)
        throw numeric_error("monodromy_exponents: eigensolver failed on the " +
                            std::to_string(N) + "x" + std::to_string(N) +
                            " monodromy matrix");

    FloquetSpectrum spec;
    spec.fundamental_frequency = Om;
    spec.order = N;
    spec.truncation = 0;

    for (Eigen::Index k = 0; k < N; ++k) {
        const cxd mu = solver.eigenvalues()(k);
        if (std::abs(mu) == 0.0)
            throw numeric_error("monodromy_exponents: singular monodromy matrix "
                                "(a Floquet multiplier vanished)");
        // s = ln(mu)/T; arg(mu) in (-pi, pi] lands Im(s) in (-Omega/2, Omega/2].
        ExponentRecord rec;
        rec.s = cxd(std::log(std::abs(mu)) / T, std::arg(mu) / T);
        rec.order = N;
        rec.at_zone_boundary =
            std::abs(std::abs(rec.s.imag()) - 0.5 * Om) <= 1e-9 * Om;
        if (rec.at_zone_boundary) spec.boundary_degenerate = true;
        spec.exponents.push_back(rec);
    }

    std::sort(spec.exponents.begin(), spec.exponents.end(),
              [](const ExponentRecord& l, const ExponentRecord& r) {
                  if (l.s.real() != r.s.real()) return l.s.real() > r.s.real();
                  return l.s.imag() < r.s.imag();
              });
    return spec;
}

} // namespace lockin
