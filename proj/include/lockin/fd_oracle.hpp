#pragma once

#include <string>
#include <vector>

namespace lockin {

enum class FdBc { pinned, clamped };

FdBc fd_bc_from(const std::string& name); // "pinned" | "clamped"
const char* to_string(FdBc bc);

// Finite-difference buckling problem for the modulated Winkler beam on a
// long finite domain [0, L], discretized with n uniformly spaced nodes.
struct FdProblem {
    double K_bar = 0.0;
    double lambda_bar = 1.0;
    double domain_length = 40.0; // L, in the same units as lambda_bar
    int nodes = 8000;            // n, spacing delta = L/(n-1)
    FdBc bc = FdBc::pinned;

    double spacing() const { return domain_length / (nodes - 1); }
    // Requires >= 50 nodes per modulation period and L >= 20 lambda_bar.
    void validate() const;
};

// Banded operators of the generalized eigenproblem A y = P_bar B y over the
// interior nodes (boundary nodes eliminated):
//   A = D4 + 16 pi^4 diag(1 + K_bar cos(2 pi x / lambda_bar)),  B = -D2,
// with 2nd-order central stencils and ghost-node elimination for the
// boundary rows (pinned: y=0, y''=0; clamped: y=0, y'=0). Both matrices are
// symmetric and stored in LAPACK lower-banded column-major layout.
struct FdBandedOperators {
    int dim = 0;            // interior unknowns, n - 2
    int ka = 2;             // A sub-diagonals
    int kb = 1;             // B sub-diagonals
    std::vector<double> A;  // (ka+1) x dim, A[j*(ka+1) + (i-j)] = A(i,j)
    std::vector<double> B;  // (kb+1) x dim
    std::vector<double> x;  // interior node coordinates

    double a_entry(int i, int j) const; // dense view helpers (0 outside band)
    double b_entry(int i, int j) const;
};

FdBandedOperators assemble_fd_operators(const FdProblem& prob);

struct FdBucklingResult {
    double P_bar_cr = 0.0;    // smallest positive generalized eigenvalue
    std::vector<double> mode; // over interior nodes, unit max-abs, peak positive
    double residual = 0.0;    // ||(A - P B) v|| / ||A v||
};

// Solves the banded symmetric-definite eigenproblem for the smallest
// eigenvalue/eigenvector. Throws numeric_error if the solver fails or the
// smallest eigenvalue is not positive.
FdBucklingResult fd_buckling(const FdProblem& prob);

} // namespace lockin
