#include "lockin/fourier_series.hpp"

#include "lockin/errors.hpp"

#include <cmath>
#include <cstdlib>

namespace lockin {

Eigen::MatrixXcd FourierMatrixSeries::evaluate(double xi) const {
    Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(order, order);
    for (const auto& [h, Jh] : harmonics) {
        const double phase = h * fundamental_frequency * xi;
        J += Jh * cxd(std::cos(phase), std::sin(phase));
    }
    return J;
}

int FourierMatrixSeries::max_harmonic() const {
    int hmax = 0;
    for (const auto& [h, Jh] : harmonics)
        hmax = std::max(hmax, std::abs(h));
    return hmax;
}

bool FourierMatrixSeries::is_real_system(double tol) const {
    for (const auto& [h, Jh] : harmonics) {
        auto it = harmonics.find(-h);
        if (it == harmonics.end()) {
            if (Jh.cwiseAbs().maxCoeff() > tol) return false;
            continue;
        }
        if ((it->second.conjugate() - Jh).cwiseAbs().maxCoeff() > tol) return false;
    }
    return true;
}

void FourierMatrixSeries::validate() const {
    if (order < 1)
        throw argument_error("FourierMatrixSeries: order must be >= 1, got " +
                             std::to_string(order));
    if (!(fundamental_frequency > 0.0))
        throw argument_error("FourierMatrixSeries: fundamental_frequency must be > 0");
    if (harmonics.find(0) == harmonics.end())
        throw structural_error("FourierMatrixSeries: harmonic h = 0 must be present");
    for (const auto& [h, Jh] : harmonics) {
        if (Jh.rows() != order || Jh.cols() != order)
            throw structural_error(
                "FourierMatrixSeries: harmonic h = " + std::to_string(h) + " is " +
                std::to_string(Jh.rows()) + "x" + std::to_string(Jh.cols()) +
                ", expected " + std::to_string(order) + "x" + std::to_string(order));
    }
}

} // namespace lockin
