#include "lockin/spectral.hpp"

#include "lockin/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <vector>

namespace lockin {

void SampledSignal::validate() const {
    if (values.size() < 16)
        throw argument_error("SampledSignal: need >= 16 samples, got " +
                             std::to_string(values.size()));
    if (!(spacing > 0.0))
        throw argument_error("SampledSignal: spacing must be > 0");
}

namespace {
// FFTW plan creation/destruction is not thread-safe; executions are.
std::mutex fftw_mutex;

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }
} // namespace

SpectrumPeak dft_peak(const SampledSignal& signal, int n_fft) {
    signal.validate();
    const int n = static_cast<int>(signal.values.size());
    if (!is_pow2(n_fft))
        throw argument_error("dft_peak: n_fft must be a power of two, got " +
                             std::to_string(n_fft));
    if (n_fft < n)
        throw argument_error("dft_peak: n_fft (" + std::to_string(n_fft) +
                             ") must be >= signal length (" + std::to_string(n) + ")");

    double mean = 0.0;
    for (double v : signal.values) mean += v;
    mean /= n;

    std::vector<double> padded(n_fft, 0.0);
    double content = 0.0;
    for (int i = 0; i < n; ++i) {
        padded[i] = signal.values[i] - mean;
        content = std::max(content, std::abs(padded[i]));
    }
    if (content == 0.0)
        throw numeric_error("dft_peak: no spectral content (constant signal)");

    const int nbins = n_fft / 2 + 1;
    std::vector<fftw_complex> out(nbins);
    {
        std::lock_guard<std::mutex> lock(fftw_mutex);
        fftw_plan plan = fftw_plan_dft_r2c_1d(n_fft, padded.data(), out.data(),
                                              FFTW_ESTIMATE);
        if (!plan) throw numeric_error("dft_peak: FFTW plan creation failed");
        fftw_execute(plan);
        fftw_destroy_plan(plan);
    }

    // Largest magnitude over bins 1..n_fft/2 (positive wavenumbers up to
    // Nyquist); strict > keeps ties at the lower wavenumber.
    int best = 1;
    double best_mag = -1.0;
    for (int k = 1; k <= n_fft / 2; ++k) {
        const double mag = std::hypot(out[k][0], out[k][1]);
        if (mag > best_mag) {
            best_mag = mag;
            best = k;
        }
    }

    SpectrumPeak peak;
    peak.bin = best;
    peak.n_fft = n_fft;
    peak.magnitude = best_mag;
    peak.bin_width = 1.0 / (n_fft * signal.spacing);
    peak.wavenumber = best * peak.bin_width;
    return peak;
}

std::vector<double> extended_spectrum(double nu, double lambda_mod,
                                      int n_min, int n_max) {
    if (nu < 0.0)
        throw argument_error("extended_spectrum: nu must be >= 0");
    if (!(lambda_mod > 0.0))
        throw argument_error("extended_spectrum: lambda_mod must be > 0");
    if (n_min > n_max)
        throw argument_error("extended_spectrum: empty harmonic range");

    std::vector<double> out;
    for (int n = n_min; n <= n_max; ++n) {
        const double base = static_cast<double>(n) / lambda_mod;
        for (const double cand : {base + nu, base - nu})
            if (cand >= 0.0) out.push_back(cand);
    }
    std::sort(out.begin(), out.end());
    std::vector<double> dedup;
    for (double v : out)
        if (dedup.empty() || v - dedup.back() > 1e-12) dedup.push_back(v);
    return dedup;
}

} // namespace lockin
