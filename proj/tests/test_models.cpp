#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lockin/errors.hpp"
#include "lockin/models.hpp"
#include "lockin/monodromy.hpp"

#include <cmath>
#include <numbers>

using namespace lockin;
using std::numbers::pi;

TEST_CASE("pendulum system layout") {
    PendulumParams p;
    p.A_bar = 1.0;
    p.Omega_bar = 2.0;
    p.C_bar = 0.0;
    const FourierMatrixSeries s = pendulum_system(p);
    CHECK(s.order == 2);
    CHECK(s.fundamental_frequency == 2.0);
    CHECK(s.harmonics.count(0) == 1);
    CHECK(s.harmonics.count(1) == 1);
    CHECK(s.harmonics.count(-1) == 1);

    const auto& J0 = s.harmonics.at(0);
    CHECK(J0(0, 0) == cxd(0.0));
    CHECK(J0(0, 1) == cxd(1.0));
    CHECK(J0(1, 0) == cxd(-1.0));
    CHECK(J0(1, 1) == cxd(0.0));

    // A_bar = 1: first-harmonic block carries -A_bar/2 in the (2,1) slot.
    const auto& J1 = s.harmonics.at(1);
    CHECK(J1(1, 0) == cxd(-0.5));
    CHECK(J1(0, 0) == cxd(0.0));
    CHECK(J1(0, 1) == cxd(0.0));
    CHECK(J1(1, 1) == cxd(0.0));
    CHECK(s.harmonics.at(-1).isApprox(J1, 0.0));

    CHECK(s.is_real_system(1e-14));
}

TEST_CASE("pendulum A_bar = 0 stores only J0") {
    PendulumParams p;
    p.A_bar = 0.0;
    p.Omega_bar = 1.5;
    p.C_bar = 0.25;
    const FourierMatrixSeries s = pendulum_system(p);
    CHECK(s.harmonics.size() == 1);
    CHECK(s.harmonics.at(0)(1, 1) == cxd(-0.25));
}

TEST_CASE("pendulum damping validated") {
    PendulumParams p;
    p.C_bar = -0.1;
    CHECK_THROWS_AS(pendulum_system(p), argument_error);
    p.C_bar = 0.0;
    p.Omega_bar = 0.0;
    CHECK_THROWS_AS(pendulum_system(p), argument_error);
    p.Omega_bar = 1.0;
    p.A_bar = -1.0;
    CHECK_THROWS_AS(pendulum_system(p), argument_error);
}

TEST_CASE("damped unmodulated pendulum has closed-form exponents") {
    // theta'' + C theta' + theta = 0 with C = 0.2: s = -0.1 +- i sqrt(1 - 0.01).
    // Omega_bar = 4 keeps the pair inside the first Brillouin zone unfolded.
    PendulumParams p;
    p.A_bar = 0.0;
    p.Omega_bar = 4.0;
    p.C_bar = 0.2;
    const FloquetSpectrum spec = monodromy_exponents(pendulum_system(p), 4096);
    REQUIRE(spec.exponents.size() == 2);
    const double want_im = std::sqrt(1.0 - 0.01);
    for (const auto& rec : spec.exponents) {
        CHECK(rec.s.real() == doctest::Approx(-0.1).epsilon(1e-9));
        CHECK(std::abs(rec.s.imag()) == doctest::Approx(want_im).epsilon(1e-9));
    }
}

TEST_CASE("winkler system layout and the half-coefficient rule") {
    WinklerParams w;
    w.P_bar = 3.0;
    w.K_bar = 0.4;
    w.lambda_bar = 0.57;
    const FourierMatrixSeries s = winkler_system(w);
    CHECK(s.order == 4);
    CHECK(s.fundamental_frequency == doctest::Approx(2.0 * pi / 0.57));

    const double k0 = 16.0 * std::pow(pi, 4);
    const auto& J0 = s.harmonics.at(0);
    CHECK(J0(0, 1) == cxd(1.0));
    CHECK(J0(1, 2) == cxd(1.0));
    CHECK(J0(2, 3) == cxd(1.0));
    CHECK(J0(3, 0).real() == doctest::Approx(-k0));
    CHECK(J0(3, 1) == cxd(0.0));
    CHECK(J0(3, 2).real() == doctest::Approx(-3.0));
    CHECK(J0(3, 3) == cxd(0.0));

    // The cosine carries coefficient 16 pi^4 K_bar in the governing
    // equation; each of e^{+i Omega x}, e^{-i Omega x} gets half of it.
    const auto& J1 = s.harmonics.at(1);
    CHECK(J1(3, 0).real() == doctest::Approx(-0.5 * k0 * 0.4));
    CHECK(J1.cwiseAbs().sum() == doctest::Approx(0.5 * k0 * 0.4));
    CHECK(s.harmonics.at(-1).isApprox(J1, 0.0));
    CHECK(s.is_real_system(1e-14));
}

TEST_CASE("winkler K_bar = 0 stores only J0") {
    WinklerParams w;
    w.P_bar = 1.0;
    w.K_bar = 0.0;
    w.lambda_bar = 1.0;
    CHECK(winkler_system(w).harmonics.size() == 1);
}

TEST_CASE("winkler invariants enforced") {
    WinklerParams w;
    w.K_bar = 1.0;
    CHECK_THROWS_WITH_AS(winkler_system(w),
                         doctest::Contains("K_bar"), argument_error);
    w.K_bar = 0.5;
    w.lambda_bar = 0.0;
    CHECK_THROWS_AS(winkler_system(w), argument_error);
    w.lambda_bar = 1.0;
    w.P_bar = -1.0;
    CHECK_THROWS_AS(winkler_system(w), argument_error);
}

TEST_CASE("flat winkler at P_bar = 8 pi^2 has double roots +-2 pi i") {
    // s^4 + P s^2 + 16 pi^4 = 0 collapses to (s^2 + 4 pi^2)^2 = 0.
    WinklerParams w;
    w.P_bar = 8.0 * pi * pi;
    w.K_bar = 0.0;
    w.lambda_bar = 0.37; // irrelevant at K_bar = 0
    const FloquetSpectrum spec = monodromy_exponents(winkler_system(w), 8192);
    REQUIRE(spec.exponents.size() == 4);
    const double Om = 2.0 * pi / 0.37;
    for (const auto& rec : spec.exponents) {
        CHECK(std::abs(rec.s.real()) < 1e-6);
        // folded Im must be congruent to +-2 pi mod Omega
        const double d = std::remainder(rec.s.imag() - 2.0 * pi, Om);
        const double d2 = std::remainder(rec.s.imag() + 2.0 * pi, Om);
        CHECK(std::min(std::abs(d), std::abs(d2)) < 1e-6);
    }
}

TEST_CASE("pendulum nondimensionalization") {
    PhysicalPendulum ph;
    ph.mass = 1.0;
    ph.length = 1.0;
    ph.spring_k = 10.81;
    ph.gravity = 9.81;
    ph.damper_c = 0.003;
    ph.base_amplitude = 0.05;
    ph.base_frequency = 2.0;
    const PendulumParams p = nondim_pendulum(ph);
    CHECK(p.Omega_bar == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(p.A_bar == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(p.C_bar == doctest::Approx(0.003).epsilon(1e-12));

    SUBCASE("A = 0 gives A_bar = 0") {
        ph.base_amplitude = 0.0;
        CHECK(nondim_pendulum(ph).A_bar == 0.0);
    }
    SUBCASE("Omega = omega0 gives A_bar = A/L") {
        ph.base_frequency = 1.0; // omega0 = 1 here
        CHECK(nondim_pendulum(ph).A_bar == doctest::Approx(0.05).epsilon(1e-12));
    }
    SUBCASE("statically unstable upright equilibrium rejected") {
        ph.spring_k = 9.0; // k/(M L^2) < g/L
        CHECK_THROWS_WITH_AS(nondim_pendulum(ph),
                             doctest::Contains("statically unstable"),
                             argument_error);
    }
}

TEST_CASE("winkler nondimensionalization") {
    PhysicalWinkler ph;
    ph.bending_EI = 1.0;
    ph.base_K0 = 1.0;
    SUBCASE("EI = K0 = 1 gives lambda0 = 2 pi") {
        CHECK(nondim_winkler(ph).lambda0 == doctest::Approx(2.0 * pi));
    }
    SUBCASE("flat-foundation critical load maps to 8 pi^2") {
        ph.axial_P = 2.0 * std::sqrt(ph.base_K0 * ph.bending_EI);
        CHECK(nondim_winkler(ph).params.P_bar ==
              doctest::Approx(8.0 * pi * pi).epsilon(1e-12));
    }
    SUBCASE("EI = 16 and lambda = 4 pi give lambda_bar = 1") {
        ph.bending_EI = 16.0;
        ph.wavelength = 4.0 * pi;
        const NondimWinkler nd = nondim_winkler(ph);
        CHECK(nd.lambda0 == doctest::Approx(4.0 * pi));
        CHECK(nd.params.lambda_bar == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("common-factor scale invariance") {
        ph.bending_EI = 3.7;
        ph.base_K0 = 0.9;
        ph.modulation_K1 = 0.54;
        ph.wavelength = 2.2;
        ph.axial_P = 1.1;
        const NondimWinkler a = nondim_winkler(ph);
        const double c = 137.0;
        PhysicalWinkler scaled = ph;
        scaled.bending_EI *= c;
        scaled.base_K0 *= c;
        scaled.modulation_K1 *= c;
        scaled.axial_P *= c;
        // lambda0 is unchanged under a common stiffness/load factor, so
        // lambda stays put as well.
        const NondimWinkler b = nondim_winkler(scaled);
        CHECK(b.params.P_bar == doctest::Approx(a.params.P_bar).epsilon(1e-12));
        CHECK(b.params.K_bar == doctest::Approx(a.params.K_bar).epsilon(1e-12));
        CHECK(b.params.lambda_bar ==
              doctest::Approx(a.params.lambda_bar).epsilon(1e-12));
    }
}

TEST_CASE("series validation catches malformed harmonics") {
    FourierMatrixSeries s;
    s.order = 2;
    s.fundamental_frequency = 1.0;
    SUBCASE("missing J0") {
        s.harmonics[1] = Eigen::MatrixXcd::Zero(2, 2);
        CHECK_THROWS_AS(s.validate(), structural_error);
    }
    SUBCASE("dimension mismatch") {
        s.harmonics[0] = Eigen::MatrixXcd::Zero(2, 2);
        s.harmonics[1] = Eigen::MatrixXcd::Zero(3, 3);
        CHECK_THROWS_AS(s.validate(), structural_error);
    }
    SUBCASE("nonpositive frequency") {
        s.harmonics[0] = Eigen::MatrixXcd::Zero(2, 2);
        s.fundamental_frequency = 0.0;
        CHECK_THROWS_AS(s.validate(), argument_error);
    }
}
