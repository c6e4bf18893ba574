#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lockin/classify.hpp"
#include "lockin/critical_load.hpp"
#include "lockin/errors.hpp"

#include <cmath>
#include <numbers>

using namespace lockin;
using std::numbers::pi;

namespace {
const double P_flat = 8.0 * pi * pi;
}

TEST_CASE("flat foundation recovers the classical critical load") {
    const CriticalLoadResult r = critical_load(0.0, 1.0);
    CHECK(r.P_bar_cr / P_flat == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.classification.tag == PeriodicityTag::Periodic);
    CHECK(r.locked_fraction <= 1e-4);
    CHECK(r.bracket_width <= 1e-8 * r.P_bar_cr * 1.000001);
    CHECK(r.truncation == 9);
    CHECK(r.coarse_evaluations > 0);
    CHECK(r.bisection_iterations > 0);
    REQUIRE_FALSE(r.critical_exponents.empty());
    // marginal pair sits on the imaginary axis at the buckling wavenumber 2 pi
    for (const auto& rec : r.critical_exponents)
        CHECK(std::abs(rec.s.real()) < 1e-4);
}

TEST_CASE("flat critical load does not depend on the nominal wavelength") {
    // K_bar = 0 removes the modulation; lambda_bar only relabels the zone
    const CriticalLoadResult a = critical_load(0.0, 0.3);
    const CriticalLoadResult b = critical_load(0.0, 1.7);
    CHECK(a.P_bar_cr / P_flat == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(b.P_bar_cr / P_flat == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("flat locked fraction follows the folded buckling wavenumber") {
    // At K_bar = 0 the marginal pair sits at Im = +-2 pi whatever lambda_bar
    // says, so the folded fraction is the sawtooth fold(lambda_bar).
    for (const double lam : {0.31, 0.44, 0.83, 1.27}) {
        CAPTURE(lam);
        const CriticalLoadResult r = critical_load(0.0, lam);
        const double want = std::abs(lam - std::round(lam));
        CHECK(r.locked_fraction == doctest::Approx(want).epsilon(1e-4));
    }
}

TEST_CASE("quasi-periodic transition point") {
    const CriticalLoadResult r = critical_load(0.4, 0.42);
    CHECK(r.P_bar_cr / P_flat == doctest::Approx(0.98).epsilon(0.01));
    CHECK(r.classification.tag == PeriodicityTag::QuasiPeriodic);
    CHECK(r.locked_fraction == doctest::Approx(0.43).epsilon(0.01));
}

TEST_CASE("period-doubled lock-in point") {
    const CriticalLoadResult r = critical_load(0.4, 0.57);
    CHECK(r.P_bar_cr / P_flat == doctest::Approx(0.90).epsilon(0.01));
    CHECK(r.classification.tag == PeriodicityTag::PeriodDoubled);
    // the lock is exact far beyond the classification tolerance
    CHECK(std::abs(r.locked_fraction - 0.5) < 1e-9);
    CHECK(r.bracket_width <= 1e-8 * r.P_bar_cr * 1.000001);
    REQUIRE_FALSE(r.critical_exponents.empty());
    // marginal exponents carry harmonics for mode reconstruction
    for (const auto& rec : r.critical_exponents)
        CHECK(rec.harmonics.size() > 0);
}

TEST_CASE("modulation lowers the critical load") {
    const CriticalLoadResult flat = critical_load(0.0, 0.57);
    const CriticalLoadResult mod = critical_load(0.4, 0.57);
    CHECK(mod.P_bar_cr < flat.P_bar_cr);
}

TEST_CASE("search failures carry context") {
    SUBCASE("P_hi below the transition: no crossing") {
        CriticalSearchOptions opts;
        opts.P_hi = 20.0; // far below ~0.9 * 8 pi^2
        opts.coarse_steps = 10;
        CHECK_THROWS_WITH_AS(critical_load(0.4, 0.57, opts),
                             doctest::Contains("no crossing"), search_error);
    }
    SUBCASE("invalid options") {
        CriticalSearchOptions opts;
        opts.P_lo = 100.0;
        opts.P_hi = 50.0;
        CHECK_THROWS_AS(critical_load(0.4, 0.57, opts), argument_error);
        opts = CriticalSearchOptions{};
        opts.coarse_steps = 1;
        CHECK_THROWS_AS(critical_load(0.4, 0.57, opts), argument_error);
        opts = CriticalSearchOptions{};
        opts.bisection_tol = 0.0;
        CHECK_THROWS_AS(critical_load(0.4, 0.57, opts), argument_error);
    }
    SUBCASE("invalid geometry") {
        CHECK_THROWS_AS(critical_load(1.0, 0.57), argument_error);
        CHECK_THROWS_AS(critical_load(-0.1, 0.57), argument_error);
        CHECK_THROWS_AS(critical_load(0.4, 0.0), argument_error);
    }
}

TEST_CASE("repeat runs are bit-identical") {
    const CriticalLoadResult a = critical_load(0.3, 0.5);
    const CriticalLoadResult b = critical_load(0.3, 0.5);
    CHECK(a.P_bar_cr == b.P_bar_cr);
    CHECK(a.locked_fraction == b.locked_fraction);
    CHECK(a.bracket_width == b.bracket_width);
    CHECK(a.coarse_evaluations == b.coarse_evaluations);
    CHECK(a.bisection_iterations == b.bisection_iterations);
    REQUIRE(a.critical_exponents.size() == b.critical_exponents.size());
    for (size_t k = 0; k < a.critical_exponents.size(); ++k)
        CHECK(a.critical_exponents[k].s == b.critical_exponents[k].s);
}

TEST_CASE("small grid of transition points is classified and bounded") {
    // every modulated geometry buckles at or below the flat load
    for (const double K : {0.2, 0.4}) {
        for (const double lam : {0.42, 0.57, 1.0}) {
            CAPTURE(K);
            CAPTURE(lam);
            const CriticalLoadResult r = critical_load(K, lam);
            CHECK(r.P_bar_cr / P_flat <= 1.0 + 1e-6);
            CHECK(r.P_bar_cr > 0.0);
            CHECK(r.locked_fraction >= 0.0);
            CHECK(r.locked_fraction <= 0.5);
            const int code = class_code(r.classification.tag);
            CHECK(code >= 0);
            CHECK(code <= 2);
        }
    }
}

TEST_CASE("coarser truncation still close at a benign point") {
    CriticalSearchOptions small;
    small.hill.truncation = 7;
    const CriticalLoadResult a = critical_load(0.4, 0.57, small);
    const CriticalLoadResult b = critical_load(0.4, 0.57);
    CHECK(a.P_bar_cr == doctest::Approx(b.P_bar_cr).epsilon(1e-6));
    CHECK(a.truncation == 7);
    CHECK(b.truncation == 9);
}
