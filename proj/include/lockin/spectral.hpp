#pragma once

#include <vector>

namespace lockin {

// Uniformly sampled real signal.
struct SampledSignal {
    std::vector<double> values;
    double spacing = 1.0; // delta x > 0
    double origin = 0.0;  // x of the first sample

    void validate() const; // >= 16 samples, spacing > 0
};

struct SpectrumPeak {
    double wavenumber = 0.0; // cycles per unit length, in (0, 1/(2 dx)]
    double magnitude = 0.0;
    int bin = 0;
    int n_fft = 0;
    double bin_width = 0.0;  // 1/(n_fft * dx); peaks are only meaningful to this resolution
};

// Mean-removed, zero-padded magnitude DFT; returns the largest-magnitude bin
// in (0, Nyquist] and its wavenumber bin/(n_fft*dx). Ties break toward the
// lower wavenumber. n_fft must be a power of two >= the signal length.
// A constant signal (no content after mean removal) raises numeric_error.
SpectrumPeak dft_peak(const SampledSignal& signal, int n_fft = 1 << 14);

// All reciprocal-space wavenumbers {n/lambda_mod + nu, n/lambda_mod - nu}
// for n in [n_min, n_max], filtered to >= 0, deduplicated within 1e-12,
// sorted ascending.
std::vector<double> extended_spectrum(double nu, double lambda_mod,
                                      int n_min, int n_max);

} // namespace lockin
