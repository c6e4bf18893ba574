#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lockin/errors.hpp"
#include "lockin/hill.hpp"
#include "lockin/models.hpp"
#include "lockin/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace lockin;
using std::numbers::pi;

namespace {

// fold an exponent's Im into (-Omega/2, Omega/2]
double fold_im(double im, double omega) {
    double f = std::remainder(im, omega);
    if (f <= -0.5 * omega) f += omega;
    return f;
}

// one-sided Hausdorff-style match between two folded exponent sets
double spectrum_distance(const FloquetSpectrum& a, const FloquetSpectrum& b) {
    double worst = 0.0;
    for (const auto& ra : a.exponents) {
        double best = 1e300;
        for (const auto& rb : b.exponents) {
            const double d =
                std::abs(ra.s.real() - rb.s.real()) +
                std::abs(fold_im(ra.s.imag() - rb.s.imag(),
                                 a.fundamental_frequency));
            best = std::min(best, d);
        }
        worst = std::max(worst, best);
    }
    return worst;
}

} // namespace

TEST_CASE("constant diagonal system is integrated exactly") {
    FourierMatrixSeries s;
    s.order = 2;
    s.fundamental_frequency = 2.0;
    Eigen::MatrixXcd J0 = Eigen::MatrixXcd::Zero(2, 2);
    J0(0, 0) = -1.0;
    J0(1, 1) = -2.0;
    s.harmonics[0] = J0;

    const Eigen::MatrixXcd Phi = monodromy_matrix(s, 10000);
    const double T = pi; // 2 pi / 2
    CHECK(std::abs(Phi(0, 0) - std::exp(-T)) < 1e-10);
    CHECK(std::abs(Phi(1, 1) - std::exp(-2.0 * T)) < 1e-10);
    CHECK(std::abs(Phi(0, 1)) < 1e-14);
    CHECK(std::abs(Phi(1, 0)) < 1e-14);

    const FloquetSpectrum spec = monodromy_exponents(s, 10000);
    REQUIRE(spec.exponents.size() == 2);
    CHECK(spec.exponents[0].s.real() == doctest::Approx(-1.0).epsilon(1e-8));
    CHECK(spec.exponents[1].s.real() == doctest::Approx(-2.0).epsilon(1e-8));
    CHECK(std::abs(spec.exponents[0].s.imag()) < 1e-8);
    CHECK(spec.exponents[0].harmonics.size() == 0);
    CHECK(spec.exponents[0].truncation == 0);
}

TEST_CASE("principal parametric resonance is unstable") {
    PendulumParams p;
    p.A_bar = 0.2;
    p.Omega_bar = 2.0;
    p.C_bar = 0.0;
    const FloquetSpectrum spec = monodromy_exponents(pendulum_system(p));
    CHECK(spec.max_re() > 0.0);
    int positive = 0;
    for (const auto& rec : spec.exponents)
        if (rec.s.real() > 1e-6) ++positive;
    CHECK(positive == 1);
    // growth pairs with decay: sum of real parts vanishes (no damping)
    double sum = 0.0;
    for (const auto& rec : spec.exponents) sum += rec.s.real();
    CHECK(std::abs(sum) < 1e-8);
}

TEST_CASE("flat winkler beam at the static critical load") {
    WinklerParams w;
    w.P_bar = 8.0 * pi * pi;
    w.K_bar = 0.0;
    w.lambda_bar = 0.7;
    const FloquetSpectrum spec = monodromy_exponents(winkler_system(w), 8192);
    REQUIRE(spec.exponents.size() == 4);
    const double Om = spec.fundamental_frequency;
    for (const auto& rec : spec.exponents) {
        CHECK(std::abs(rec.s.real()) < 1e-6);
        const double da = std::abs(fold_im(rec.s.imag() - 2.0 * pi, Om));
        const double db = std::abs(fold_im(rec.s.imag() + 2.0 * pi, Om));
        CHECK(std::min(da, db) < 1e-6);
    }
}

TEST_CASE("monodromy exponents live in the first brillouin zone") {
    PendulumParams p;
    p.A_bar = 0.7;
    p.Omega_bar = 1.1;
    p.C_bar = 0.05;
    const FloquetSpectrum spec = monodromy_exponents(pendulum_system(p));
    for (const auto& rec : spec.exponents) {
        CHECK(rec.s.imag() > -0.55 - 1e-12);
        CHECK(rec.s.imag() <= 0.55 + 1e-12);
    }
}

TEST_CASE("hill and monodromy agree on random pendulum parameters") {
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> uA(0.0, 1.0);
    std::uniform_real_distribution<double> uOm(0.5, 4.0);
    std::uniform_real_distribution<double> uC(0.0, 0.01);
    for (int trial = 0; trial < 10; ++trial) {
        PendulumParams p;
        p.A_bar = uA(rng);
        p.Omega_bar = uOm(rng);
        p.C_bar = uC(rng);
        CAPTURE(p.A_bar);
        CAPTURE(p.Omega_bar);
        CAPTURE(p.C_bar);
        const FourierMatrixSeries s = pendulum_system(p);
        const FloquetSpectrum hill = floquet_exponents(s, HillOptions{}, false);
        const FloquetSpectrum mono = monodromy_exponents(s, 8192);
        CHECK(spectrum_distance(mono, hill) < 1e-6);
    }
}

TEST_CASE("hill and monodromy agree for the modulated winkler beam") {
    WinklerParams w;
    w.P_bar = 55.0;
    w.K_bar = 0.4;
    w.lambda_bar = 0.57;
    const FourierMatrixSeries s = winkler_system(w);
    const FloquetSpectrum hill = floquet_exponents(s, HillOptions{}, false);
    const FloquetSpectrum mono = monodromy_exponents(s, 16384);
    CHECK(spectrum_distance(mono, hill) < 1e-6);
}

TEST_CASE("integrator step floor enforced") {
    PendulumParams p;
    const FourierMatrixSeries s = pendulum_system(p);
    CHECK_THROWS_WITH_AS(monodromy_matrix(s, 99),
                         doctest::Contains("integrator_steps"), argument_error);
    CHECK_THROWS_AS(monodromy_exponents(s, 0), argument_error);
    CHECK_NOTHROW(monodromy_matrix(s, 100));
}

TEST_CASE("monodromy of a real system has unit-modulus determinant structure") {
    // trace identity: sum of exponents = average trace of J over one period
    PendulumParams p;
    p.A_bar = 0.33;
    p.Omega_bar = 1.9;
    p.C_bar = 0.12;
    const FourierMatrixSeries s = pendulum_system(p);
    const FloquetSpectrum spec = monodromy_exponents(s, 8192);
    double sum_re = 0.0;
    for (const auto& rec : spec.exponents) sum_re += rec.s.real();
    CHECK(sum_re == doctest::Approx(-0.12).epsilon(1e-8));
}
