#include "lockin/hill.hpp"

#include "lockin/errors.hpp"

#define HAVE_LAPACK_CONFIG_H
#define LAPACK_COMPLEX_CPP
#include <lapacke.h>

#include <algorithm>
#include <cmath>

namespace lockin {

double HillOptions::resolved_tolerance() const {
    if (brillouin_tolerance > 0.0) return brillouin_tolerance;
    return std::pow(10.0, -truncation);
}

void HillOptions::validate() const {
    if (truncation < 1 || truncation > 64)
        throw argument_error("HillOptions: truncation M must be in [1, 64], got " +
                             std::to_string(truncation));
    if (!std::isfinite(brillouin_tolerance))
        throw argument_error("HillOptions: brillouin_tolerance must be finite");
}

Eigen::VectorXcd ExponentRecord::harmonic(int h) const {
    if (harmonics.size() == 0)
        throw argument_error("ExponentRecord: harmonics were not computed");
    if (h < -truncation || h > truncation)
        throw argument_error("ExponentRecord: harmonic index " + std::to_string(h) +
                             " outside [-M, M] with M = " + std::to_string(truncation));
    return harmonics.segment(static_cast<Eigen::Index>(h + truncation) * order, order);
}

double FloquetSpectrum::max_re() const {
    if (exponents.empty())
        throw numeric_error("FloquetSpectrum: empty spectrum has no max Re");
    double m = exponents.front().s.real();
    for (const auto& rec : exponents) m = std::max(m, rec.s.real());
    return m;
}

const ExponentRecord& FloquetSpectrum::leading() const {
    if (exponents.empty())
        throw numeric_error("FloquetSpectrum: empty spectrum has no leading exponent");
    const ExponentRecord* best = &exponents.front();
    for (const auto& rec : exponents)
        if (rec.s.real() > best->s.real()) best = &rec;
    return *best;
}

Eigen::MatrixXcd build_hill_matrix(const FourierMatrixSeries& series,
                                   const HillOptions& opts,
                                   bool* ignored_high_harmonics) {
    series.validate();
    opts.validate();
    const int M = opts.truncation;
    const int N = series.order;
    const double Om = series.fundamental_frequency;
    const int dim = (2 * M + 1) * N;

    if (ignored_high_harmonics) *ignored_high_harmonics = false;

    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dim, dim);
    // Block (a, b) gets J_{a-b}; a-b spans [-2M, 2M], higher harmonics can
    // never enter and are skipped (flagged for the caller).
    for (const auto& [h, Jh] : series.harmonics) {
        if (std::abs(h) > 2 * M) {
            if (ignored_high_harmonics && Jh.cwiseAbs().maxCoeff() > 0.0)
                *ignored_high_harmonics = true;
            continue;
        }
        for (int a = -M; a <= M; ++a) {
            const int b = a - h; // column block with a - b == h
            if (b < -M || b > M) continue;
            H.block((a + M) * N, (b + M) * N, N, N) += Jh;
        }
    }
    // Diagonal shift: block row a carries -(i a Omega) I, so the topmost
    // block row (a = -M) carries +i M Omega I.
    for (int a = -M; a <= M; ++a) {
        const cxd shift(0.0, -a * Om);
        for (int k = 0; k < N; ++k)
            H((a + M) * N + k, (a + M) * N + k) += shift;
    }
    return H;
}

FloquetSpectrum floquet_exponents(const FourierMatrixSeries& series,
                                  const HillOptions& opts,
                                  bool want_vectors) {
    bool ignored = false;
    Eigen::MatrixXcd H = build_hill_matrix(series, opts, &ignored);
    const int M = opts.truncation;
    const int N = series.order;
    const double Om = series.fundamental_frequency;
    const double tol = opts.resolved_tolerance();
    const double half_zone = 0.5 * Om;

    // zgeev on the (destroyed-in-place) Hill matrix; several times faster
    // than Eigen's complex Schur at the sizes coarse scans hammer on.
    const lapack_int n = static_cast<lapack_int>(H.rows());
    Eigen::VectorXcd vals(n);
    Eigen::MatrixXcd vecs(want_vectors ? n : 1, want_vectors ? n : 1);
    const lapack_int info = LAPACKE_zgeev(
        LAPACK_COL_MAJOR, 'N', want_vectors ? 'V' : 'N', n, H.data(), n,
        vals.data(), nullptr, 1, vecs.data(), want_vectors ? n : 1);
    if (info != 0)
        throw numeric_error("floquet_exponents: eigensolver failed to converge on the " +
                            std::to_string(H.rows()) + "x" + std::to_string(H.cols()) +
                            " Hill matrix (M = " + std::to_string(M) +
                            ", N = " + std::to_string(N) + ")");

    FloquetSpectrum spec;
    spec.fundamental_frequency = Om;
    spec.order = N;
    spec.truncation = M;
    spec.ignored_high_harmonics = ignored;

    for (Eigen::Index k = 0; k < vals.size(); ++k) {
        const cxd s = vals(k);
        if (!(std::abs(s.imag()) < half_zone + tol)) continue;

        ExponentRecord rec;
        rec.s = s;
        rec.order = N;
        rec.truncation = M;
        rec.at_zone_boundary = std::abs(std::abs(s.imag()) - half_zone) <= tol;
        if (rec.at_zone_boundary) spec.boundary_degenerate = true;

        if (want_vectors) {
            Eigen::VectorXcd v = vecs.col(k);
            v.normalize();
            // Deterministic phase: rotate so the first nonzero entry is
            // real-positive.
            const double thresh = 1e-12 * v.cwiseAbs().maxCoeff();
            for (Eigen::Index i = 0; i < v.size(); ++i) {
                const double a = std::abs(v(i));
                if (a > thresh) {
                    v *= std::conj(v(i)) / a;
                    break;
                }
            }
            rec.harmonics = std::move(v);
        }
        spec.exponents.push_back(std::move(rec));
    }

    if (spec.exponents.empty())
        throw numeric_error(
            "floquet_exponents: no eigenvalue fell inside the first Brillouin zone "
            "|Im(s)| < " + std::to_string(half_zone + tol) +
            "; increase the truncation M (current M = " + std::to_string(M) + ")");

    std::sort(spec.exponents.begin(), spec.exponents.end(),
              [](const ExponentRecord& l, const ExponentRecord& r) {
                  if (l.s.real() != r.s.real()) return l.s.real() > r.s.real();
                  return l.s.imag() < r.s.imag();
              });
    return spec;
}

} // namespace lockin
