#pragma once

#include "lockin/fourier_series.hpp"

#include <vector>

namespace lockin {

struct HillOptions {
    int truncation = 9;                // M: harmonics -M..M retained
    double brillouin_tolerance = 0.0;  // <=0 means "use default 10^-M"

    double resolved_tolerance() const;
    void validate() const; // 1 <= M <= 64, tolerance finite
};

// One Floquet exponent with (optionally) its eigenvector harmonics.
struct ExponentRecord {
    cxd s{};                      // Floquet exponent
    Eigen::VectorXcd harmonics;   // stacked r^h blocks, h = -M..M; empty if skipped
    int order = 0;                // N
    int truncation = 0;           // M (0 when harmonics absent, e.g. monodromy)
    bool at_zone_boundary = false; // |Im s| within tolerance of Omega/2

    // Block of the eigenvector belonging to harmonic h (size N).
    Eigen::VectorXcd harmonic(int h) const;
};

// Floquet exponents restricted to the first Brillouin zone.
struct FloquetSpectrum {
    std::vector<ExponentRecord> exponents; // sorted: Re descending, then Im ascending
    double fundamental_frequency = 0.0;
    int order = 0;
    int truncation = 0;
    bool boundary_degenerate = false;         // some exponent sits at the zone edge
    bool ignored_high_harmonics = false;      // series had |h| > 2M entries

    double max_re() const;                 // numeric_error if empty
    const ExponentRecord& leading() const; // record attaining max Re
};

// Truncated Hill matrix of dimension (2M+1)*N. Block (row a, col b) for
// a,b in -M..M (ascending) is J_{a-b}, plus -(i a Omega) I on the diagonal
// blocks, so the topmost diagonal block carries +i M Omega I.
// Harmonics with |h| > 2M cannot enter any block; they are skipped and
// *ignored_high_harmonics (if given) is set.
Eigen::MatrixXcd build_hill_matrix(const FourierMatrixSeries& series,
                                   const HillOptions& opts,
                                   bool* ignored_high_harmonics = nullptr);

// Full Hill eigenproblem: computes all (2M+1)*N eigenpairs, keeps exponents
// with |Im(s)| < Omega/2 + tolerance, reinterprets eigenvector blocks as
// harmonics r^h. Eigenvectors have unit Euclidean norm and their first
// nonzero entry made real-positive. With want_vectors = false only the
// exponents are computed (records carry empty harmonics); roughly twice as
// fast, used by load sweeps.
FloquetSpectrum floquet_exponents(const FourierMatrixSeries& series,
                                  const HillOptions& opts = {},
                                  bool want_vectors = true);

} // namespace lockin
