#include "lockin/fd_oracle.hpp"

#include "lockin/errors.hpp"

#include <lapacke.h>

#include <cmath>
#include <numbers>
#include <sstream>

namespace lockin {

namespace {
constexpr double pi = std::numbers::pi;

// y = M v for a symmetric matrix in LAPACK lower-banded column-major
// storage (ld = k+1 rows per column).
void banded_symv(const std::vector<double>& M, int dim, int k,
                 const std::vector<double>& v, std::vector<double>& y) {
    const int ld = k + 1;
    y.assign(dim, 0.0);
    for (int j = 0; j < dim; ++j) {
        y[j] += M[j * ld] * v[j];
        const int top = std::min(dim - 1, j + k);
        for (int i = j + 1; i <= top; ++i) {
            const double m = M[j * ld + (i - j)];
            y[i] += m * v[j];
            y[j] += m * v[i];
        }
    }
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}
} // namespace

FdBc fd_bc_from(const std::string& name) {
    if (name == "pinned") return FdBc::pinned;
    if (name == "clamped") return FdBc::clamped;
    throw argument_error("unknown boundary condition '" + name +
                         "' (expected 'pinned' or 'clamped')");
}

const char* to_string(FdBc bc) {
    return bc == FdBc::pinned ? "pinned" : "clamped";
}

void FdProblem::validate() const {
    if (K_bar < 0.0 || K_bar >= 1.0)
        throw argument_error("FdProblem: K_bar must satisfy 0 <= K_bar < 1");
    if (!(lambda_bar > 0.0))
        throw argument_error("FdProblem: lambda_bar must be > 0");
    if (!(domain_length > 0.0))
        throw argument_error("FdProblem: domain_length must be > 0");
    if (nodes < 7)
        throw argument_error("FdProblem: need at least 7 nodes for the "
                             "5-point interior stencil, got " + std::to_string(nodes));
    const double periods = domain_length / lambda_bar;
    if (domain_length < 20.0 * lambda_bar)
        throw argument_error("FdProblem: domain must span >= 20 modulation periods "
                             "(got " + std::to_string(periods) + ")");
    if (nodes / periods < 50.0)
        throw argument_error("FdProblem: need >= 50 nodes per modulation period, got " +
                             std::to_string(nodes / periods));
}

double FdBandedOperators::a_entry(int i, int j) const {
    if (i < j) std::swap(i, j);
    if (i - j > ka) return 0.0;
    return A[static_cast<std::size_t>(j) * (ka + 1) + (i - j)];
}

double FdBandedOperators::b_entry(int i, int j) const {
    if (i < j) std::swap(i, j);
    if (i - j > kb) return 0.0;
    return B[static_cast<std::size_t>(j) * (kb + 1) + (i - j)];
}

FdBandedOperators assemble_fd_operators(const FdProblem& prob) {
    prob.validate();
    const int m = prob.nodes - 2; // interior unknowns
    const double dx = prob.spacing();
    const double dx2 = dx * dx;
    const double dx4 = dx2 * dx2;
    const double k0 = 16.0 * pi * pi * pi * pi;

    FdBandedOperators ops;
    ops.dim = m;
    ops.A.assign(static_cast<std::size_t>(m) * (ops.ka + 1), 0.0);
    ops.B.assign(static_cast<std::size_t>(m) * (ops.kb + 1), 0.0);
    ops.x.resize(m);

    // Ghost-node elimination folds the off-domain D4 point into the first
    // and last interior diagonal: pinned (y'' = 0) mirrors the ghost value
    // odd (6 - 1 = 5), clamped (y' = 0) mirrors it even (6 + 1 = 7).
    const double corner = prob.bc == FdBc::pinned ? 5.0 : 7.0;

    for (int k = 0; k < m; ++k) {
        const double x = (k + 1) * dx;
        ops.x[k] = x;

        double diag4 = 6.0;
        if (k == 0 || k == m - 1) diag4 = corner;
        const double stiffness = k0 * (1.0 + prob.K_bar * std::cos(2.0 * pi * x / prob.lambda_bar));

        ops.A[static_cast<std::size_t>(k) * 3 + 0] = diag4 / dx4 + stiffness;
        if (k + 1 < m) ops.A[static_cast<std::size_t>(k) * 3 + 1] = -4.0 / dx4;
        if (k + 2 < m) ops.A[static_cast<std::size_t>(k) * 3 + 2] = 1.0 / dx4;

        ops.B[static_cast<std::size_t>(k) * 2 + 0] = 2.0 / dx2;
        if (k + 1 < m) ops.B[static_cast<std::size_t>(k) * 2 + 1] = -1.0 / dx2;
    }
    return ops;
}

FdBucklingResult fd_buckling(const FdProblem& prob) {
    const FdBandedOperators ops = assemble_fd_operators(prob);
    const int m = ops.dim;

    // Smallest generalized eigenvalue of A v = P B v (eigenvalue only; the
    // eigenvector query of dsbgvx would need a dense n x n workspace).
    std::vector<double> ab = ops.A; // overwritten by LAPACK
    std::vector<double> bb = ops.B;
    double w = 0.0;
    lapack_int found = 0;
    std::vector<lapack_int> ifail(m, 0);
    lapack_int info = LAPACKE_dsbgvx(
        LAPACK_COL_MAJOR, 'N', 'I', 'L', m, ops.ka, ops.kb,
        ab.data(), ops.ka + 1, bb.data(), ops.kb + 1,
        nullptr, 1, 0.0, 0.0, 1, 1, 2.0 * LAPACKE_dlamch('S'),
        &found, &w, nullptr, 1, ifail.data());
    if (info != 0) {
        std::ostringstream msg;
        msg << "fd_buckling: dsbgvx failed with info = " << info
            << " (dim = " << m << ")";
        throw numeric_error(msg.str());
    }
    if (found < 1)
        throw numeric_error("fd_buckling: dsbgvx located no eigenvalue");
    if (!(w > 0.0))
        throw numeric_error("fd_buckling: smallest generalized eigenvalue is not "
                            "positive (" + std::to_string(w) + ")");

    // Mode via inverse iteration on (A - sigma B) x = B v with a banded LU.
    // sigma sits a hair above the eigenvalue; the finite-size eigenvalue
    // spacing is orders of magnitude larger, so a few iterations suffice.
    const double sigma = w * (1.0 + 1e-9);
    const int kl = ops.ka, ku = ops.ka;
    const int ldab = 2 * kl + ku + 1;
    std::vector<double> lu(static_cast<std::size_t>(ldab) * m, 0.0);
    for (int j = 0; j < m; ++j)
        for (int i = std::max(0, j - ku); i <= std::min(m - 1, j + kl); ++i)
            lu[static_cast<std::size_t>(j) * ldab + (kl + ku + i - j)] =
                ops.a_entry(i, j) - sigma * ops.b_entry(i, j);
    std::vector<lapack_int> ipiv(m, 0);
    info = LAPACKE_dgbtrf(LAPACK_COL_MAJOR, m, m, kl, ku, lu.data(), ldab,
                          ipiv.data());
    if (info < 0)
        throw numeric_error("fd_buckling: dgbtrf failed with info = " +
                            std::to_string(info));

    std::vector<double> v(m), rhs(m), Av, Bv;
    for (int k = 0; k < m; ++k)
        v[k] = std::sin(pi * ops.x[k] / prob.domain_length); // deterministic seed
    double residual = 1.0;
    for (int iter = 0; iter < 25; ++iter) {
        banded_symv(ops.B, m, ops.kb, v, rhs);
        info = LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', m, kl, ku, 1, lu.data(),
                              ldab, ipiv.data(), rhs.data(), m);
        if (info != 0)
            throw numeric_error("fd_buckling: dgbtrs failed with info = " +
                                std::to_string(info));
        const double scale = norm2(rhs);
        if (!(scale > 0.0))
            throw numeric_error("fd_buckling: inverse iteration collapsed to zero");
        for (int k = 0; k < m; ++k) v[k] = rhs[k] / scale;

        banded_symv(ops.A, m, ops.ka, v, Av);
        banded_symv(ops.B, m, ops.kb, v, Bv);
        double num = 0.0;
        for (int k = 0; k < m; ++k) {
            const double r = Av[k] - w * Bv[k];
            num += r * r;
        }
        residual = std::sqrt(num) / norm2(Av);
        if (residual <= 1e-10) break;
    }

    // Unit max-abs with the peak entry positive (deterministic sign).
    double peak = 0.0;
    for (double x : v)
        if (std::abs(x) > std::abs(peak)) peak = x;
    FdBucklingResult result;
    result.P_bar_cr = w;
    result.residual = residual;
    result.mode.resize(m);
    for (int k = 0; k < m; ++k) result.mode[k] = v[k] / peak;
    return result;
}

} // namespace lockin
