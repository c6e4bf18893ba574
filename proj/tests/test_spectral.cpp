#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lockin/errors.hpp"
#include "lockin/spectral.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using namespace lockin;
using std::numbers::pi;

namespace {

SampledSignal cosine(double wavelength, double dx, int n, double amp = 1.0) {
    SampledSignal s;
    s.spacing = dx;
    s.values.resize(n);
    for (int k = 0; k < n; ++k)
        s.values[k] = amp * std::cos(2.0 * pi * k * dx / wavelength);
    return s;
}

} // namespace

TEST_CASE("single cosine peaks at its wavenumber") {
    // wavelength 12.2, dx = 0.1 over length 200: nu * 12.2 = 1 within a bin
    const SampledSignal s = cosine(12.2, 0.1, 2000);
    const SpectrumPeak peak = dft_peak(s, 1 << 14);
    CHECK(peak.n_fft == 1 << 14);
    CHECK(peak.bin_width == doctest::Approx(1.0 / (16384 * 0.1)));
    CHECK(std::abs(peak.wavenumber - 1.0 / 12.2) <= peak.bin_width);
    CHECK(peak.wavenumber * 12.2 == doctest::Approx(1.0).epsilon(0.01));
    CHECK(peak.bin >= 1);
    CHECK(peak.wavenumber == doctest::Approx(peak.bin * peak.bin_width));
}

TEST_CASE("dominant component of a two-cosine mixture wins") {
    SampledSignal s = cosine(10.0, 0.25, 400);         // nu = 0.1, amp 1
    const SampledSignal weak = cosine(4.0, 0.25, 400, 0.35); // nu = 0.25
    for (size_t k = 0; k < s.values.size(); ++k) s.values[k] += weak.values[k];
    const SpectrumPeak peak = dft_peak(s);
    CHECK(std::abs(peak.wavenumber - 0.1) <= peak.bin_width);
}

TEST_CASE("mean removal hides the DC component") {
    SampledSignal s = cosine(8.0, 0.5, 64, 0.2);
    for (double& v : s.values) v += 100.0; // huge offset must not win
    const SpectrumPeak peak = dft_peak(s);
    // short signal: image-lobe interference allows a few bins of shift,
    // but the peak must sit at the cosine, not at the (removed) DC edge
    CHECK(std::abs(peak.wavenumber - 1.0 / 8.0) < 5e-3);
    CHECK(peak.bin > 100);
}

TEST_CASE("near-ties resolve decisively and deterministically") {
    // two cosines on exact FFT bins (no leakage with n_fft == n)
    const int n = 64;
    auto mix = [n](double amp_hi) {
        SampledSignal s;
        s.spacing = 1.0;
        s.values.resize(n);
        for (int k = 0; k < n; ++k)
            s.values[k] = std::cos(2.0 * pi * 8.0 * k / n) +
                          amp_hi * std::cos(2.0 * pi * 16.0 * k / n);
        return s;
    };
    // a sliver below / above parity flips the winner; no hysteresis
    CHECK(dft_peak(mix(1.0 - 1e-9), 64).bin == 8);
    CHECK(dft_peak(mix(1.0 + 1e-9), 64).bin == 16);
    const SpectrumPeak first = dft_peak(mix(1.0), 64);
    for (int rep = 0; rep < 5; ++rep)
        CHECK(dft_peak(mix(1.0), 64).bin == first.bin);
}

TEST_CASE("constant signal has no spectral content") {
    SampledSignal s;
    s.spacing = 1.0;
    s.values.assign(64, 3.25);
    CHECK_THROWS_WITH_AS(dft_peak(s), doctest::Contains("no spectral content"),
                         numeric_error);
}

TEST_CASE("dft_peak input validation") {
    SampledSignal s = cosine(8.0, 0.5, 64);
    CHECK_THROWS_AS(dft_peak(s, 100), argument_error);  // not a power of two
    CHECK_THROWS_AS(dft_peak(s, 32), argument_error);   // smaller than signal
    SampledSignal small = cosine(4.0, 0.5, 15);
    CHECK_THROWS_AS(dft_peak(small), argument_error);   // < 16 samples
    SampledSignal bad = cosine(8.0, 0.5, 64);
    bad.spacing = 0.0;
    CHECK_THROWS_AS(dft_peak(bad), argument_error);
}

TEST_CASE("extended spectrum enumerates foundation sidebands") {
    SUBCASE("locked mode nu = 0: harmonics of the modulation") {
        const auto lines = extended_spectrum(0.0, 1.0, 0, 3);
        REQUIRE(lines.size() == 4);
        CHECK(lines[0] == doctest::Approx(0.0));
        CHECK(lines[1] == doctest::Approx(1.0));
        CHECK(lines[2] == doctest::Approx(2.0));
        CHECK(lines[3] == doctest::Approx(3.0));
    }
    SUBCASE("incommensurate nu = 0.3, lambda = 1") {
        const auto lines = extended_spectrum(0.3, 1.0, 0, 2);
        const std::vector<double> want = {0.3, 0.7, 1.3, 1.7, 2.3};
        REQUIRE(lines.size() == want.size());
        for (size_t k = 0; k < want.size(); ++k)
            CHECK(lines[k] == doctest::Approx(want[k]).epsilon(1e-12));
    }
    SUBCASE("period-doubled nu = 0.5, lambda = 2 deduplicates") {
        // n/2 +- 1/2 collide pairwise: {0, 0.5, 1}
        const auto lines = extended_spectrum(0.5, 2.0, 0, 1);
        REQUIRE(lines.size() == 3);
        CHECK(lines[0] == doctest::Approx(0.0));
        CHECK(lines[1] == doctest::Approx(0.5));
        CHECK(lines[2] == doctest::Approx(1.0));
    }
    SUBCASE("sorted ascending and nonnegative") {
        const auto lines = extended_spectrum(0.37, 0.57, 0, 8);
        for (size_t k = 1; k < lines.size(); ++k) {
            CHECK(lines[k] > lines[k - 1]);
            CHECK(lines[k - 1] >= 0.0);
        }
    }
    SUBCASE("aliasing closure: nu and 1/lambda - nu generate the same set") {
        const auto a = extended_spectrum(0.3, 1.0, 0, 6);
        const auto b = extended_spectrum(0.7, 1.0, 0, 6);
        // compare on the common window [0, 5]
        std::vector<double> fa, fb;
        for (double v : a)
            if (v <= 5.0 + 1e-9) fa.push_back(v);
        for (double v : b)
            if (v <= 5.0 + 1e-9) fb.push_back(v);
        REQUIRE(fa.size() == fb.size());
        for (size_t k = 0; k < fa.size(); ++k)
            CHECK(fa[k] == doctest::Approx(fb[k]).epsilon(1e-12));
    }
    SUBCASE("invalid arguments") {
        CHECK_THROWS_AS(extended_spectrum(0.3, 0.0, 0, 3), argument_error);
        CHECK_THROWS_AS(extended_spectrum(0.3, 1.0, 3, 0), argument_error);
        CHECK_THROWS_AS(extended_spectrum(-0.1, 1.0, 0, 3), argument_error);
    }
}

TEST_CASE("origin shift does not move the peak") {
    SampledSignal a = cosine(12.2, 0.1, 200);
    SampledSignal b = a;
    b.origin = 55.5;
    CHECK(dft_peak(a).wavenumber == dft_peak(b).wavenumber);
}

TEST_CASE("signal validation") {
    SampledSignal s;
    s.values.assign(16, 0.0);
    s.spacing = 1.0;
    CHECK_NOTHROW(s.validate());
    s.values.pop_back();
    CHECK_THROWS_AS(s.validate(), argument_error);
    s.values.assign(16, 0.0);
    s.spacing = -1.0;
    CHECK_THROWS_AS(s.validate(), argument_error);
}
